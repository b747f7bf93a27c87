"""Linear network error correction codes and their derived matrices.

A code is stored only as its local encoding coefficients
(:class:`LocalKernel`).  Extended global kernels are derived from them in two
independent ways: the channel-by-channel recursion
(:func:`extend_kernels`) and the closed-form transfer matrix
``B~ (I - K)^-1`` (:func:`transfer_matrices`).
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import linalg
from .errors import CodeFormatError, NetworkError
from .gf import Field, parse_field
from .linalg import Subspace
from .network import ExtendedNetwork, Network, parse_network

Vector = tuple  # tuple[int, ...]


class LocalKernel:
    """Local encoding coefficients ``k_{d,e}`` of an ``omega``-dimensional code.

    ``coefs`` maps ``(d, e)`` to a field integer, where ``e`` is a real
    channel and ``d`` an input of ``tail(e)`` in the extended network: a
    message channel ``d'i`` when ``tail(e)`` is the source, otherwise a real
    incoming channel.  Missing pairs are zero.  The coefficients ``k_{e',e} =
    1`` of the imaginary error channels are implicit and never stored.
    """

    def __init__(self, network: Network, omega: int, field: Field, coefs: Mapping[tuple[str, str], int] | None = None):
        self.ext = ExtendedNetwork(network, omega)
        self.field = field
        clean = {}
        for (d, e), value in (coefs or {}).items():
            value = int(value)
            if not 0 <= value < field.q:
                raise CodeFormatError(f"coefficient {value} for ({d}, {e}) is not in GF({field.q})")
            try:
                tail = network.tail(e)
            except NetworkError:
                raise CodeFormatError(f"coefficient target {e!r} is not a channel") from None
            if d not in self.ext.inputs(tail):
                raise CodeFormatError(f"({d}, {e}) is not an adjacent pair")
            if value:
                clean[(d, e)] = value
        self.coefs = MappingProxyType(clean)

    @property
    def network(self) -> Network:
        return self.ext.network

    @property
    def omega(self) -> int:
        return self.ext.omega

    def __repr__(self):
        return f"LocalKernel({self.network!r}, omega={self.omega}, field={self.field!r}, nonzero={len(self.coefs)})"

    def __eq__(self, other):
        if not isinstance(other, LocalKernel):
            return NotImplemented
        return (
            self.field == other.field
            and self.omega == other.omega
            and self.network.format() == other.network.format()
            and dict(self.coefs) == dict(other.coefs)
        )

    def __hash__(self):
        return hash((self.field, self.omega, frozenset(self.coefs.items())))

    def coef(self, d: str, e: str) -> int:
        return self.coefs.get((d, e), 0)

    @cached_property
    def kernels(self) -> Mapping[str, Vector]:
        return MappingProxyType(extend_kernels(self))

    def kernel(self, name: str) -> Vector:
        """Extended global kernel of a real, message, or error channel."""
        if name in self.kernels:
            return self.kernels[name]
        return self.ext.unit(name)

    @cached_property
    def kernel_matrix(self) -> list[list[int]]:
        """M~: the kernels of all real channels as columns, (omega+|E|) x |E|."""
        cols = [self.kernels[c] for c in self.network.channel_ids]
        return linalg.transpose(cols, self.ext.dim)


def adjacent_pairs(ext: ExtendedNetwork) -> list[tuple[str, str]]:
    """All ``(d, e)`` pairs that carry a local coefficient, in ancestral order of ``e``."""
    net = ext.network
    return [(d, c.id) for c in net.channels for d in ext.inputs(c.tail)]


def zero_code(network: Network, omega: int, field: Field) -> LocalKernel:
    return LocalKernel(network, omega, field, {})


def random_code(network: Network, omega: int, field: Field, rng: random.Random) -> LocalKernel:
    """Uniformly random coefficients on every adjacent pair."""
    ext = ExtendedNetwork(network, omega)
    return LocalKernel(network, omega, field, {pair: rng.randrange(field.q) for pair in adjacent_pairs(ext)})


# ----------------------------------------------------------------------------
# Global kernels


def extend_kernels(code: LocalKernel) -> dict[str, Vector]:
    """Extended global kernels of the real channels by the recursion.

    ``f~_e = sum_{d in In(tail(e))} k_{d,e} f~_d + 1_e`` with ``f~_{d'i} =
    1_{d'i}``, evaluated in ancestral order.
    """
    F, ext = code.field, code.ext
    out: dict[str, Vector] = {}
    for ch in code.network.channels:
        v = list(ext.unit(ch.id))
        for d in ext.inputs(ch.tail):
            k = code.coef(d, ch.id)
            if k:
                fd = out[d] if d in out else ext.unit(d)
                v = F.sub_scaled(v, F.neg(k), fd)
        out[ch.id] = tuple(v)
    return out


class TransferMatrices(NamedTuple):
    B_tilde: list[list[int]]
    K: list[list[int]]
    M_tilde: list[list[int]]


def transfer_matrices(code: LocalKernel) -> TransferMatrices:
    """``(B~, K, M~)`` with ``M~ = B~ (I - K)^-1``.

    ``B~`` stacks the ``omega x |E|`` source coefficient matrix over the
    ``|E| x |E|`` identity; ``K[d][e] = k_{d,e}`` when ``head(d) = tail(e)``.
    """
    F, ext, net = code.field, code.ext, code.network
    n = len(net.channels)
    ids = net.channel_ids
    B = [[code.coef(d, e) for e in ids] for d in ext.message_channels]
    B_tilde = B + linalg.identity(n)
    K = linalg.zeros(n, n)
    for j, ch in enumerate(net.channels):
        if ch.tail == net.source:
            continue
        for d in net.in_channels(ch.tail):
            K[net.index[d]][j] = code.coef(d, ch.id)
    I_minus_K = [[F.sub(1 if i == j else 0, K[i][j]) for j in range(n)] for i in range(n)]
    M_tilde = linalg.matmul(F, B_tilde, linalg.inverse(F, I_minus_K)) if n else [[] for _ in B_tilde]
    return TransferMatrices(B_tilde, K, M_tilde)


# ----------------------------------------------------------------------------
# Decoding matrices and spaces


@dataclass(frozen=True)
class DecodingMatrix:
    """F~_T: columns are the kernels of ``In(T)`` in ancestral order."""

    code: LocalKernel
    collection: tuple[str, ...]
    columns: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def row(self, d: str) -> tuple[int, ...]:
        """row_T(d) for a message channel or real channel ``d``."""
        return self.matrix[self.code.ext.coord(d)]

    def rows(self, names: Iterable[str]) -> list[tuple[int, ...]]:
        return [self.row(d) for d in names]

    @property
    def message_rows(self) -> list[tuple[int, ...]]:
        return list(self.matrix[: self.code.omega])


def decoding_matrix(code: LocalKernel, T: Iterable[str]) -> DecodingMatrix:
    net = code.network
    T = net.check_collection(T)
    cols = net.in_of(T)
    if not cols:
        raise NetworkError(f"collection {T} has no incoming channels")
    kern = code.kernels
    matrix = tuple(tuple(kern[c][i] for c in cols) for i in range(code.ext.dim))
    return DecodingMatrix(code, T, cols, matrix)


class Restriction(NamedTuple):
    compressed: Vector  # f~_e^rho, length omega + |rho|
    masked: Vector  # f_e^rho, length omega + |E|
    complement: Vector  # f_e^{rho^c} = f~_e - f_e^rho


def restrict_vector(ext: ExtendedNetwork, v: Sequence[int], rho: Iterable[str]) -> Restriction:
    keep = list(range(ext.omega)) + sorted(ext.coord(e) for e in rho)
    keep_set = set(keep)
    compressed = tuple(v[i] for i in keep)
    masked = tuple(x if i in keep_set else 0 for i, x in enumerate(v))
    complement = tuple(0 if i in keep_set else x for i, x in enumerate(v))
    return Restriction(compressed, masked, complement)


def restrict(code: LocalKernel, e: str, rho: Iterable[str]) -> Restriction:
    """The rho-restrictions of the kernel of channel ``e``."""
    rho = code.network.check_pattern(rho)
    return restrict_vector(code.ext, code.kernel(e), rho)


def message_space(code: LocalKernel, T: Iterable[str]) -> Subspace:
    Ft = decoding_matrix(code, T)
    return Subspace.span(code.field, Ft.message_rows, len(Ft.columns))


def error_space(code: LocalKernel, T: Iterable[str], rho: Iterable[str]) -> Subspace:
    rho = code.network.check_pattern(rho)
    Ft = decoding_matrix(code, T)
    return Subspace.span(code.field, Ft.rows(rho), len(Ft.columns))


# ----------------------------------------------------------------------------
# Code file format


def format_code(code: LocalKernel) -> str:
    """Serialize a code with its network inlined.

    Coefficient lines are ordered by target channel, then by input, and
    zero coefficients are omitted.
    """
    lines = [
        "# linear network error correction code",
        f"# modulus {code.field.modulus_string()}",
        f"field {code.field}",
        f"omega {code.omega}",
        "begin network",
        code.network.format().rstrip("\n"),
        "end network",
    ]
    for d, e in adjacent_pairs(code.ext):
        k = code.coef(d, e)
        if k:
            lines.append(f"coef {d} {e} {k}")
    return "\n".join(lines) + "\n"


def parse_code(text: str, base_dir: str | os.PathLike | None = None) -> LocalKernel:
    """Parse a code file; ``network <path>`` references resolve against ``base_dir``."""
    field = omega = network = None
    coefs: dict[tuple[str, str], int] = {}
    inline: list[str] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        if inline is not None:
            if raw.strip() == "end network":
                network = parse_network("\n".join(inline))
                inline = None
            else:
                inline.append(raw)
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        try:
            if kw == "field" and len(parts) == 2:
                field = parse_field(parts[1])
            elif kw == "omega" and len(parts) == 2:
                omega = int(parts[1])
            elif line == "begin network":
                inline = []
            elif kw == "network" and len(parts) == 2:
                path = parts[1]
                if base_dir is not None and not os.path.isabs(path):
                    path = os.path.join(base_dir, path)
                with open(path, encoding="utf-8") as fh:
                    network = parse_network(fh.read())
            elif kw == "coef" and len(parts) == 4:
                key = (parts[1], parts[2])
                if key in coefs:
                    raise CodeFormatError(f"line {lineno}: duplicate coefficient {key}")
                coefs[key] = int(parts[3])
            else:
                raise CodeFormatError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, CodeFormatError):
                raise
            raise CodeFormatError(f"line {lineno}: {exc}") from exc
    if inline is not None:
        raise CodeFormatError("unterminated 'begin network' block")
    missing = [name for name, v in (("field", field), ("omega", omega), ("network", network)) if v is None]
    if missing:
        raise CodeFormatError(f"code file lacks {', '.join(missing)}")
    if omega < 1:
        raise CodeFormatError("omega must be >= 1")
    return LocalKernel(network, omega, field, coefs)


def load_code(path) -> LocalKernel:
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read(), os.path.dirname(os.path.abspath(path)))


def save_code(code: LocalKernel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_code(code))
