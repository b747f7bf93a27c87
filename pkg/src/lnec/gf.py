"""Finite fields GF(p^m) with canonical integer elements.

An element of GF(p^m) is stored as the integer whose base-``p`` digits are
the coefficients of its polynomial representative, lowest degree first.  So
in GF(2^8) the integer ``0x53`` is ``x^6 + x^4 + x + 1``.  The same integer
is used in every file format and report.

Each field picks its modulus deterministically: among monic irreducible
polynomials of degree ``m`` the one with fewest nonzero coefficients wins,
ties broken by the smallest integer encoding.  For GF(2^8) this yields
``x^8 + x^4 + x^3 + x + 1``.
"""

from __future__ import annotations

import functools
import re
from itertools import product
from typing import Iterable, Sequence

from .errors import FieldError

#: Largest field order supported.
MAX_ORDER = 1 << 16

# Fields up to this order get full add/mul lookup tables.
_TABLE_ORDER = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ----------------------------------------------------------------------------
# Polynomials over GF(p) as coefficient lists, lowest degree first.


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return a


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial-division irreducibility test for a polynomial over GF(p).

    ``coeffs`` lists coefficients from the constant term upwards.
    """
    f = _poly_trim([c % p for c in coeffs])
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if _poly_rem(f, list(low) + [1], p) == []:
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``m`` over GF(p) of least weight, then least value."""
    if m == 1:
        return (0, 1)
    candidates = []
    for value in range(p ** m):
        low = [(value // p ** i) % p for i in range(m)]
        if low[0] == 0:
            continue
        weight = sum(1 for c in low if c) + 1
        candidates.append((weight, value, low))
    candidates.sort()
    for _, _, low in candidates:
        if is_irreducible(low + [1], p):
            return tuple(low + [1])
    raise RuntimeError(f"no irreducible polynomial of degree {m} over GF({p})")


# ----------------------------------------------------------------------------


class Field:
    """The finite field GF(p^m).

    Arithmetic methods (``add``, ``mul``, ...) work on canonical integers in
    ``range(q)``; :meth:`element` wraps an integer as a :class:`FieldElement`
    for operator-style use.  Use :func:`GF` to obtain instances; fields are
    cached, so ``GF(2, 8) is GF(2, 8)``.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic must be prime, got {p!r}")
        if not isinstance(m, int) or m < 1:
            raise FieldError(f"extension degree must be >= 1, got {m!r}")
        if p ** m > MAX_ORDER:
            raise FieldError(f"field order {p}^{m} exceeds the cap {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree m")
        if m > 1 and not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus
        self._mod_int = sum(c * p ** i for i, c in enumerate(modulus))
        self._build_tables()

    # -- identity ---------------------------------------------------------

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __str__(self):
        return f"{self.p}^{self.m}"

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __len__(self):
        return self.q

    def modulus_string(self) -> str:
        """Human-readable modulus, e.g. ``x^2 + x + 1``."""
        terms = []
        for i in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if c != 1:
                mono = f"{c}" if i == 0 else f"{c}*{mono}"
            terms.append(mono)
        return " + ".join(terms)

    # -- scalar arithmetic on canonical ints ------------------------------

    def _digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p ** i) % p for i in range(self.m)]

    def _undigits(self, d: Iterable[int]) -> int:
        p = self.p
        return sum(c * p ** i for i, c in enumerate(d))

    def _slow_add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return self._undigits((x + y) % p for x, y in zip(self._digits(a), self._digits(b)))

    def _slow_neg(self, a):
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._undigits(-x % self.p for x in self._digits(a))

    def _slow_mul(self, a, b):
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        if p == 2:
            r = 0
            top = 1 << m
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= self._mod_int
            return r
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # modulus is monic: x^m = -(lower terms)
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(m):
                    prod[k - m + i] = (prod[k - m + i] - c * self.modulus[i]) % p
        return self._undigits(prod[:m])

    def _build_tables(self):
        q = self.q
        self._tabled = q <= _TABLE_ORDER
        if not self._tabled:
            return
        self._add_tab = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
        self._neg_tab = [self._slow_neg(a) for a in range(q)]
        self._sub_tab = [[row[self._neg_tab[b]] for b in range(q)] for row in self._add_tab]
        self._mul_tab = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            row = self._mul_tab[a]
            inv[a] = row.index(1)
        self._inv_tab = inv

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.p}^{self.m})")
        return a

    def add(self, a: int, b: int) -> int:
        if self._tabled:
            return self._add_tab[a][b]
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self._tabled:
            return self._neg_tab[a]
        return self._slow_neg(a)

    def sub(self, a: int, b: int) -> int:
        if self._tabled:
            return self._sub_tab[a][b]
        return self._slow_add(a, self._slow_neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._tabled:
            return self._mul_tab[a][b]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._tabled:
            return self._inv_tab[a]
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    # -- row helpers used by the linear algebra ---------------------------

    def scale(self, c: int, row: Sequence[int]) -> list[int]:
        if self._tabled:
            t = self._mul_tab[c]
            return [t[x] for x in row]
        return [self.mul(c, x) for x in row]

    def sub_scaled(self, row: Sequence[int], c: int, other: Sequence[int]) -> list[int]:
        """``row - c * other`` elementwise."""
        if self._tabled:
            t = self._mul_tab[c]
            if self.p == 2:
                return [x ^ t[y] for x, y in zip(row, other)]
            s = self._sub_tab
            return [s[x][t[y]] for x, y in zip(row, other)]
        if self.m == 1:
            p = self.p
            return [(x - c * y) % p for x, y in zip(row, other)]
        return [self.sub(x, self.mul(c, y)) for x, y in zip(row, other)]

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        acc = 0
        for x, y in zip(u, v):
            if x and y:
                acc = self.add(acc, self.mul(x, y))
        return acc

    # -- element wrappers -------------------------------------------------

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, self._check(int(value)))

    __call__ = element

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, a) for a in range(self.q)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)


class FieldElement:
    """An element of a specific :class:`Field`, supporting ``+ - * /``."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed-field operands: {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field._check(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}({self.value})"


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, m: int) -> Field:
    return Field(p, m)


def GF(p: int, m: int = 1) -> Field:
    """Return the cached field GF(p^m) with its default modulus."""
    return _cached_field(p, m)


field_new = GF

_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(text: str) -> Field:
    """Parse ``"p^m"`` (or a bare prime ``"p"``) into a field."""
    match = _FIELD_RE.match(text)
    if not match:
        raise FieldError(f"cannot parse field string {text!r}; expected 'p^m'")
    p = int(match.group(1))
    m = int(match.group(2) or 1)
    return GF(p, m)


def field_of_order(q: int) -> Field:
    """The field with exactly ``q`` elements (``q`` a prime power)."""
    for p in range(2, q + 1):
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1:
                break
            return GF(p, m)
    raise FieldError(f"{q} is not a prime power")


def smallest_field_above(bound: int) -> Field:
    """Smallest supported field with more than ``bound`` elements."""
    q = max(bound + 1, 2)
    while q <= MAX_ORDER:
        try:
            return field_of_order(q)
        except FieldError:
            q += 1
    raise FieldError(f"no supported field exceeds {bound}")
