"""Transmission through a coded network with channel errors, and decoding.

The decoder is a plain minimum-weight search: for each error pattern of size
0, 1, ..., tau it solves ``(X Z_rho) . F~_T = y`` exactly.  Ties between
different messages at the minimal weight are reported as ambiguous rather
than broken.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from . import linalg
from .errors import BudgetExceeded, DecodeError
from .kernels import LocalKernel, decoding_matrix


@dataclass(frozen=True)
class ChannelOutputs:
    """Per-channel symbols: ``U`` as computed by the tail node, ``Z`` the error, and ``out = U + Z``."""

    code: LocalKernel
    message: tuple[int, ...]
    error: tuple[int, ...]
    computed: dict[str, int]
    out: dict[str, int]

    def trace(self) -> str:
        lines = []
        for i, e in enumerate(self.code.network.channel_ids):
            lines.append(f"{e}: U={self.computed[e]} Z={self.error[i]} Ũ={self.out[e]}")
        return "\n".join(lines) + "\n"


def _check_lengths(code: LocalKernel, X, Z):
    if len(X) != code.omega:
        raise ValueError(f"message has length {len(X)}, expected {code.omega}")
    if len(Z) != len(code.network.channels):
        raise ValueError(f"error vector has length {len(Z)}, expected {len(code.network.channels)}")
    q = code.field.q
    if any(not 0 <= int(v) < q for v in list(X) + list(Z)):
        raise ValueError(f"symbols must lie in range({q})")


def encode(code: LocalKernel, X: Sequence[int], Z: Sequence[int] | None = None) -> ChannelOutputs:
    """Push message ``X`` and errors ``Z`` through the network.

    Each channel outputs ``sum_d k_{d,e} out_d + Z_e``.  The result is checked
    against the closed form ``(X Z) . M~``.
    """
    net, F = code.network, code.field
    Z = tuple(0 for _ in net.channels) if Z is None else tuple(int(z) for z in Z)
    X = tuple(int(x) for x in X)
    _check_lengths(code, X, Z)
    msg = dict(zip(code.ext.message_channels, X))
    computed: dict[str, int] = {}
    out: dict[str, int] = {}
    for i, ch in enumerate(net.channels):
        u = 0
        for d in code.ext.inputs(ch.tail):
            k = code.coef(d, ch.id)
            if k:
                u = F.add(u, F.mul(k, msg[d] if d in msg else out[d]))
        computed[ch.id] = u
        out[ch.id] = F.add(u, Z[i])
    closed = linalg.vecmat(F, X + Z, code.kernel_matrix)
    if closed != [out[c] for c in net.channel_ids]:
        raise AssertionError("channel recursion disagrees with (X Z) M~")
    return ChannelOutputs(code, X, Z, computed, out)


def observe(outputs: ChannelOutputs, T: Iterable[str]) -> tuple[int, ...]:
    """Received word at ``T``, ordered like the decoding matrix columns."""
    cols = outputs.code.network.in_of(T)
    return tuple(outputs.out[c] for c in cols)


@dataclass(frozen=True)
class DecodeResult:
    status: str  # "unique", "ambiguous" or "no-solution"
    message: tuple[int, ...] | None = None
    error: tuple[int, ...] | None = None
    weight: int | None = None

    def format(self) -> str:
        if self.status == "unique":
            return (
                f"status unique\nweight {self.weight}\n"
                f"message {' '.join(map(str, self.message))}\nerror {' '.join(map(str, self.error))}\n"
            )
        if self.status == "ambiguous":
            return f"status ambiguous\nweight {self.weight}\n"
        return "status no-solution\n"


class _PatternSolver:
    """Solves ``u . A = y`` for a fixed ``A = [message rows; rows of rho]``."""

    def __init__(self, F, A, omega):
        self.F = F
        n = len(A[0])
        At = linalg.transpose(A, n)
        width = len(A)
        aug = [row + unit for row, unit in zip(At, linalg.identity(n))]
        R, piv = linalg.rref(F, aug)
        self.width = width
        self.r = sum(1 for p in piv if p < width)
        self.pivots = piv[: self.r]
        self.solve_rows = [row[width:] for row in R[: self.r]]
        self.check_rows = [row[width:] for row in R[self.r :]]
        null = linalg.nullspace(F, At, width)
        self.x_ambiguous = any(any(v[:omega]) for v in null)

    def solve(self, y):
        F = self.F
        for row in self.check_rows:
            if F.dot(row, y):
                return None
        u = [0] * self.width
        for row, pc in zip(self.solve_rows, self.pivots):
            u[pc] = F.dot(row, y)
        return u


class Decoder:
    """Minimum-weight decoder at collection ``T`` searching weights ``0..tau``.

    Solvers for every pattern are built once, so one decoder can serve many
    received words.  Channels whose rows in the decoding matrix vanish are
    skipped: they never lower the weight of a feasible pattern.
    """

    def __init__(self, code: LocalKernel, T: Iterable[str], tau: int):
        if tau < 0:
            raise ValueError("tau must be >= 0")
        self.code = code
        F = code.field
        self.Ft = decoding_matrix(code, T)
        w = code.omega
        if linalg.rank(F, self.Ft.message_rows) < w:
            raise DecodeError(f"message space at {self.Ft.collection} has dimension below omega={w}")
        ids = code.network.channel_ids
        active = [e for e in ids if any(self.Ft.row(e))]
        self.tau = tau
        self.levels = []
        for k in range(tau + 1):
            level = []
            for rho in combinations(active, k):
                A = [list(r) for r in self.Ft.message_rows] + [list(self.Ft.row(e)) for e in rho]
                level.append((rho, _PatternSolver(F, A, w)))
            self.levels.append(level)

    def decode(self, received: Sequence[int]) -> DecodeResult:
        if len(received) != len(self.Ft.columns):
            raise ValueError(f"received word has length {len(received)}, expected {len(self.Ft.columns)}")
        y = [int(v) for v in received]
        w = self.code.omega
        index = self.code.network.index
        for weight, level in enumerate(self.levels):
            messages = set()
            first = None
            ambiguous = False
            for rho, solver in level:
                u = solver.solve(y)
                if u is None:
                    continue
                if solver.x_ambiguous:
                    ambiguous = True
                    break
                X = tuple(u[:w])
                messages.add(X)
                if first is None:
                    Z = [0] * len(index)
                    for e, z in zip(rho, u[w:]):
                        Z[index[e]] = z
                    first = (X, tuple(Z))
            if ambiguous or len(messages) > 1:
                return DecodeResult("ambiguous", weight=weight)
            if first is not None:
                return DecodeResult("unique", first[0], first[1], weight)
        return DecodeResult("no-solution")


def decode(code: LocalKernel, T: Iterable[str], received: Sequence[int], tau: int) -> DecodeResult:
    """Decode one received word; see :class:`Decoder`."""
    return Decoder(code, T, tau).decode(received)


@dataclass(frozen=True)
class SweepReport:
    cases: int
    correct: int
    counterexample: tuple | None  # (X, Z, DecodeResult) of the first failure

    @property
    def passed(self) -> bool:
        return self.correct == self.cases

    def format(self) -> str:
        line = f"{self.correct}/{self.cases} correct"
        if self.counterexample is not None:
            X, Z, res = self.counterexample
            line += f"\ncounterexample message {' '.join(map(str, X))} error {' '.join(map(str, Z))} -> {res.status}"
        return line + "\n"


def sweep_size(q: int, omega: int, n_channels: int, tau: int) -> int:
    return q ** omega * sum(comb(n_channels, w) * (q - 1) ** w for w in range(tau + 1))


def capability_sweep(code: LocalKernel, T: Iterable[str], tau: int, budget: int = 10 ** 6) -> SweepReport:
    """Decode every message with every error of weight ``<= tau``.

    A case counts as correct when decoding is unique and returns the sent
    message.
    """
    F, net = code.field, code.network
    n = len(net.channels)
    cases = sweep_size(F.q, code.omega, n, tau)
    if cases > budget:
        raise BudgetExceeded(f"{cases} cases exceed the sweep budget {budget}")
    T = net.check_collection(T)
    decoder = Decoder(code, T, tau)
    correct = 0
    counterexample = None
    errors = [tuple([0] * n)]
    for w in range(1, tau + 1):
        for support in combinations(range(n), w):
            for values in product(range(1, F.q), repeat=w):
                Z = [0] * n
                for i, v in zip(support, values):
                    Z[i] = v
                errors.append(tuple(Z))
    for X in product(range(F.q), repeat=code.omega):
        for Z in errors:
            res = decoder.decode(observe(encode(code, X, Z), T))
            if res.status == "unique" and res.message == X:
                correct += 1
            elif counterexample is None:
                counterexample = (X, Z, res)
    return SweepReport(cases, correct, counterexample)
