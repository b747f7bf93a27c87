import random

import pytest

from lnec.errors import FieldError
from lnec.gf import GF, Field, default_modulus, is_irreducible, parse_field

SMALL_ORDERS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


def poly_divides(d, f, p):
    """Long division over GF(p); True when d | f.  Written independently of lnec.gf."""
    f = list(f)
    while len(f) >= len(d):
        c = f[-1] * pow(d[-1], p - 2, p) % p
        shift = len(f) - len(d)
        for i, x in enumerate(d):
            f[shift + i] = (f[shift + i] - c * x) % p
        while f and f[-1] == 0:
            f.pop()
    return not f


def test_prime_field():
    F = GF(2)
    assert F.q == 2 and str(F) == "2^1"
    assert F.add(1, 1) == 0


def test_gf256_modulus_irreducible_by_exhaustive_division():
    F = GF(2, 8)
    assert F.modulus == (1, 1, 0, 1, 1, 0, 0, 0, 1)
    from itertools import product

    for deg in range(1, 5):
        for low in product(range(2), repeat=deg):
            assert not poly_divides(list(low) + [1], F.modulus, 2)


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        Field(4, 1)
    with pytest.raises(FieldError):
        GF(2, 17)
    with pytest.raises(FieldError):
        Field(2, 2, modulus=(1, 0, 1))  # x^2 + 1 = (x + 1)^2


def test_inverse_gf5():
    assert GF(5).inv(2) == 3


def test_gf4_x_squared():
    F = GF(2, 2)
    assert F.modulus == (1, 1, 1)
    # x is 2, x + 1 is 3
    assert F.mul(2, 2) == 3


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        GF(7).inv(0)


def test_parse_field():
    assert parse_field("2^8") is GF(2, 8)
    assert parse_field("13") is GF(13)
    with pytest.raises(FieldError):
        parse_field("two")
    with pytest.raises(FieldError):
        parse_field("6^1")


@pytest.mark.parametrize("p,m", [(2, 5), (3, 3), (5, 2), (2, 6)])
def test_default_modulus_is_least(p, m):
    mod = default_modulus(p, m)
    assert is_irreducible(mod, p)
    weight = sum(1 for c in mod if c)
    value = sum(c * p ** i for i, c in enumerate(mod[:-1]))
    for v in range(p ** m):
        low = [(v // p ** i) % p for i in range(m)]
        w = sum(1 for c in low if c) + 1
        if (w, v) < (weight, value) and low[0]:
            assert not is_irreducible(low + [1], p)


def test_element_operators():
    F = GF(3, 2)
    a, b = F(4), F(7)
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * a.inv() == F.one
    assert -a + a == F.zero
    assert a ** (F.q - 1) == 1
    with pytest.raises(FieldError):
        a + GF(3)(1)
    with pytest.raises(FieldError):
        F(9)


def test_large_field_uses_polynomial_arithmetic():
    F = GF(2, 12)
    rnd = random.Random(3)
    for _ in range(200):
        a, b, c = (rnd.randrange(1, F.q) for _ in range(3))
        assert F.mul(a, F.inv(a)) == 1
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    G = GF(3, 7)
    for _ in range(100):
        a, b = rnd.randrange(1, G.q), rnd.randrange(1, G.q)
        assert G.mul(G.mul(a, b), G.inv(b)) == a


def test_tabled_and_polynomial_paths_agree():
    for p, m in [(2, 8), (3, 4), (5, 3)]:
        F = GF(p, m)
        rnd = random.Random(p * m)
        for _ in range(300):
            a, b = rnd.randrange(F.q), rnd.randrange(F.q)
            assert F.mul(a, b) == F._slow_mul(a, b)
            assert F.add(a, b) == F._slow_add(a, b)
