"""Code construction: the multicast MDS algorithm and random search.

:func:`construct_multicast_mds` walks the channels in ancestral order.  For
every node ``t`` with ``C_t >= omega`` and every pattern ``rho`` with
``|rho| = rank_t(rho) = C_t - omega`` it keeps ``C_t`` channel-disjoint paths
(``omega`` from the message channels, one from each ``e'`` in ``rho'``) and a
moving cut across them.  Each channel on some path gets a kernel chosen
outside a union of subspaces, which keeps the rho-restricted kernels of
every cut linearly independent; at the end the cuts sit in ``In(t)`` and the
code reaches distance ``C_t - omega + 1`` at every such ``t``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from . import linalg
from .analysis import capacity, enumerate_R, field_bounds, verdicts
from .errors import AvoidanceExhausted, BudgetExceeded, ConstructionError, NetworkError
from .gf import Field
from .kernels import LocalKernel, random_code, restrict_vector
from .linalg import Subspace
from .network import ExtendedNetwork, Network, _fresh_name, disjoint_paths

log = logging.getLogger(__name__)

DEFAULT_CANDIDATE_BUDGET = 1 << 20
DEFAULT_RANDOM_TRIES = 10_000


class Avoidance(NamedTuple):
    vector: tuple[int, ...]
    coefficients: tuple[int, ...]
    tried: int


def _combine(F: Field, generators, coeffs, dim) -> list[int]:
    v = [0] * dim
    for c, g in zip(coeffs, generators):
        if c:
            v = F.sub_scaled(v, F.neg(c), g)
    return v


def choose_avoiding(
    generators: Sequence[Sequence[int]],
    forbidden: Sequence[Subspace],
    field: Field,
    strategy: str = "auto",
    *,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
    rng: random.Random | None = None,
    tries: int = DEFAULT_RANDOM_TRIES,
) -> Avoidance:
    """Find a vector in ``span(generators)`` lying in no forbidden subspace.

    The ``"sweep"`` strategy walks coefficient tuples ``c`` in the order of
    the integer ``sum c_j q^j`` (so the first candidate is the first
    generator); ``"random"`` draws uniform coefficient tuples; ``"auto"``
    sweeps when ``q^k <= budget`` and samples otherwise.  Zero vectors are
    never returned.  The coefficients are reported alongside the vector.

    Raises
    ------
    AvoidanceExhausted
        If the sweep finds nothing, or ``tries`` samples all fail.
    """
    F = field
    generators = [list(g) for g in generators]
    if not generators:
        raise ValueError("candidate space needs at least one generator")
    dim = len(generators[0])
    k, q = len(generators), F.q
    if strategy == "auto":
        strategy = "sweep" if q ** k <= budget else "random"

    def admissible(v):
        return any(v) and not any(W.contains(v) for W in forbidden)

    if strategy == "sweep":
        for n in range(1, q ** k):
            coeffs = tuple((n // q ** j) % q for j in range(k))
            v = _combine(F, generators, coeffs, dim)
            if admissible(v):
                return Avoidance(tuple(v), coeffs, n)
        raise AvoidanceExhausted(f"all {q ** k - 1} nonzero combinations lie in a forbidden subspace")
    if strategy == "random":
        rng = rng or random.Random(0)
        for n in range(1, tries + 1):
            coeffs = tuple(rng.randrange(q) for _ in range(k))
            v = _combine(F, generators, coeffs, dim)
            if admissible(v):
                return Avoidance(tuple(v), coeffs, n)
        raise AvoidanceExhausted(f"{tries} random combinations all lie in a forbidden subspace")
    raise ValueError(f"unknown strategy {strategy!r}")


# ----------------------------------------------------------------------------
# Path planning


@dataclass
class PathPlan:
    """Paths, channel set and moving cut for one (node, pattern) pair.

    Paths are written in extended-network channel names: message paths start
    with ``d'i``, pattern paths with ``e'`` followed by ``e``.
    """

    node: str
    pattern: tuple[str, ...]
    paths: list[list[str]]
    channels: frozenset[str]
    predecessor: dict[str, str]
    cut: list[str]

    @property
    def redundancy(self) -> int:
        return len(self.pattern)


def plan_paths(net: Network, omega: int, t: str, rho: Sequence[str]) -> PathPlan:
    """Choose ``omega + |rho|`` disjoint paths to ``t`` from ``In(s)`` and ``rho'``.

    Flow decomposition runs on the pattern-replaced network with a fresh
    super-source feeding the source through ``omega`` message channels, so
    exactly ``omega`` paths start at message channels and one starts at each
    ``e'`` and then continues through ``e``.
    """
    ext_names = ExtendedNetwork(net, omega)
    hub = _fresh_name("s*", net.node_index)
    rho_set = set(rho)
    edges = [c for c in net.channels if c.id not in rho_set]
    edges += [(d, hub, net.source) for d in ext_names.message_channels]
    edges += [(ExtendedNetwork.error_channel(e), hub, net.head(e)) for e in rho]
    aux = Network(hub, edges, net.nodes)
    starts = list(ext_names.message_channels) + [ExtendedNetwork.error_channel(e) for e in rho]
    try:
        raw = disjoint_paths(aux, starts, t, omega + len(rho))
    except NetworkError as exc:
        raise ConstructionError(f"no path system for node {t!r} and pattern {tuple(rho)}: {exc}", node=t, pattern=tuple(rho)) from exc
    paths = []
    for p in raw:
        if ExtendedNetwork.is_error_channel(p[0]):
            paths.append([p[0], p[0][:-1]] + p[1:])
        else:
            paths.append(p)
    predecessor = {}
    for p in paths:
        for prev, cur in zip(p, p[1:]):
            predecessor[cur] = prev
    channels = frozenset(c for p in paths for c in p[1:])
    return PathPlan(t, tuple(rho), paths, channels, predecessor, [p[0] for p in paths])


# ----------------------------------------------------------------------------
# Multicast MDS construction


@dataclass
class TraceStep:
    channel: str
    tracked: int
    tried: int
    scaled: bool
    cut_updates: list[tuple[str, tuple[str, ...], str, str]] = field(default_factory=list)

    def format(self) -> str:
        if not self.tracked:
            return f"{self.channel}: off-path, kernel 1_e"
        ups = "; ".join(f"CUT[{t},{{{','.join(r)}}}] {old}->{new}" for t, r, old, new in self.cut_updates)
        mode = "scaled" if self.scaled else "shifted"
        return f"{self.channel}: tracked={self.tracked} tried={self.tried} {mode}; {ups}"


def construct_multicast_mds(
    net: Network,
    omega: int,
    field: Field,
    *,
    strategy: str = "auto",
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
    pattern_budget: int = 200_000,
    seed: int = 0,
    check_invariants: bool = False,
    trace: Callable[[TraceStep], None] | None = None,
) -> LocalKernel:
    """Build a multicast MDS code by subspace avoidance along path systems.

    Nodes with ``C_t < omega`` are not constrained.  Channels on no planned
    path get all-zero local coefficients.  With ``check_invariants`` the
    linear independence of every cut's restricted kernels is asserted after
    each channel.

    Raises
    ------
    ConstructionError
        When no admissible kernel exists for some channel; ``details`` names
        the channel, the blocking (node, pattern) pairs and the field-size
        threshold beyond which success is guaranteed.
    """
    if omega < 1:
        raise ValueError("omega must be >= 1")
    F = field
    ext = ExtendedNetwork(net, omega)
    rng = random.Random(seed)

    plans: list[PathPlan] = []
    for t in net.non_source_nodes:
        C = capacity(net, t)
        if C < omega:
            continue
        try:
            patterns = enumerate_R(net, (t,), C - omega, pattern_budget)
        except BudgetExceeded as exc:
            raise ConstructionError(str(exc), node=t) from exc
        for rho in patterns:
            plans.append(plan_paths(net, omega, t, rho))
    log.debug("tracking %d (node, pattern) pairs", len(plans))

    kern: dict[str, tuple[int, ...]] = {d: ext.unit(d) for d in ext.message_channels}
    for c in net.channel_ids:
        kern[ExtendedNetwork.error_channel(c)] = ext.unit(c)

    def masked(name, rho):
        return restrict_vector(ext, kern[name], rho)

    coefs: dict[tuple[str, str], int] = {}
    for ch in net.channels:
        e = ch.id
        tracked = [p for p in plans if e in p.channels]
        if not tracked:
            kern[e] = ext.unit(e)
            if trace:
                trace(TraceStep(e, 0, 0, False))
            continue
        inputs = list(ext.inputs(ch.tail)) + [ExtendedNetwork.error_channel(e)]
        generators = [kern[d] for d in inputs]
        forbidden = []
        for p in tracked:
            prev = p.predecessor[e]
            vecs = [masked(c, p.pattern).masked for c in p.cut if c != prev]
            vecs += [masked(d, p.pattern).complement for d in inputs]
            forbidden.append(Subspace.span(F, vecs, ext.dim))
        try:
            choice = choose_avoiding(generators, forbidden, F, strategy, budget=candidate_budget, rng=rng)
        except AvoidanceExhausted as exc:
            blocked = [(p.node, p.pattern) for p, W in zip(tracked, forbidden) if all(W.contains(g) for g in generators)]
            bounds = field_bounds(net, omega, pattern_budget)
            raise ConstructionError(
                f"no admissible kernel for channel {e!r} over GF({F.q}): {exc}",
                channel=e,
                tracked=[(p.node, p.pattern) for p in tracked],
                blocked=blocked,
                multicast_bound=bounds.multicast,
                tracked_pairs=bounds.tracked_pairs,
            ) from exc
        g = list(choice.vector)
        c_err = choice.coefficients[-1]  # equals g(e): inputs carry no e-coordinate
        if c_err == 0:
            g[ext.coord(e)] = 1
            scale = 1
        else:
            scale = F.inv(c_err)
            g = F.scale(scale, g)
        kern[e] = tuple(g)
        for d, c in zip(inputs[:-1], choice.coefficients[:-1]):
            k = F.mul(c, scale)
            if k:
                coefs[(d, e)] = k
        step = TraceStep(e, len(tracked), choice.tried, c_err != 0)
        for p in tracked:
            prev = p.predecessor[e]
            p.cut[p.cut.index(prev)] = e
            step.cut_updates.append((p.node, p.pattern, prev, e))
        if check_invariants:
            for p in plans:
                vecs = [masked(c, p.pattern).masked for c in p.cut]
                if linalg.rank(F, vecs) != len(vecs):
                    raise AssertionError(f"cut for ({p.node}, {p.pattern}) lost independence at channel {e}")
        if trace:
            trace(step)

    code = LocalKernel(net, omega, F, coefs)
    if any(code.kernels[c] != kern[c] for c in net.channel_ids):
        raise AssertionError("recovered local coefficients do not reproduce the chosen kernels")
    return code


# ----------------------------------------------------------------------------
# Random construction


TARGETS = ("multicast", "broadcast", "dispersion")


class RandomResult(NamedTuple):
    code: LocalKernel
    attempts: int


def _failures(report, omega) -> list[str]:
    out = []
    reg = report.regularity
    for name in ("regular", "strongly_regular", "strongly_sup_regular"):
        if getattr(reg, name) is False:
            out.append(name)
    for e in report.nodes + report.collections:
        if e.meets_bound is False or (e.capacity and e.d_min is None):
            out.append("{" + ",".join(e.collection) + "}")
    return out


def construct_random(
    net: Network,
    omega: int,
    field: Field,
    target: str = "multicast",
    attempts: int = 50,
    seed: int = 0,
    collections_cap: int | None = None,
) -> RandomResult:
    """Sample uniform local coefficients until the target MDS verdict holds.

    Every sample is checked by :func:`~lnec.analysis.verdicts`, so nothing
    about the returned code is taken on trust.  The same seed gives the
    same sequence of samples.

    Raises
    ------
    ConstructionError
        After ``attempts`` failures; ``details["failures"]`` tallies which
        flags and nodes/collections failed, most frequent first.
    """
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}")
    if attempts < 1:
        raise ValueError("attempts must be >= 1")
    rng = random.Random(seed)
    tally: dict[str, int] = {}
    for n in range(1, attempts + 1):
        code = random_code(net, omega, field, rng)
        report = verdicts(code, collections_cap, with_collections=target == "dispersion")
        ok = {
            "multicast": report.multicast_mds,
            "broadcast": report.broadcast_mds,
            "dispersion": report.dispersion_mds,
        }[target]
        if ok:
            return RandomResult(code, n)
        for f in _failures(report, omega):
            tally[f] = tally.get(f, 0) + 1
    ranked = sorted(tally.items(), key=lambda kv: (-kv[1], kv[0]))
    raise ConstructionError(
        f"no {target} MDS code found in {attempts} attempts over GF({field.q})",
        failures=ranked,
        attempts=attempts,
    )
