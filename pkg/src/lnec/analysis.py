"""Error-pattern ranks, minimum distances, regularity and MDS verdicts.

Minimum distances are exact: patterns are enumerated by size, then in
ancestral channel order, and the first pattern whose error space meets the
message space nontrivially fixes the distance.  The meet test is the rank
inequality ``dim D + dim M > rank([M; D])``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import __version__, linalg
from .errors import BudgetExceeded, UndefinedDistance
from .kernels import LocalKernel, decoding_matrix, error_space
from .network import Network, enumerate_collections, min_cut, pattern_rank

DEFAULT_PATTERN_BUDGET = 200_000


def capacity(net: Network, T: Iterable[str]) -> int:
    """Cached :func:`~lnec.network.min_cut`."""
    T = net.check_collection(T)
    cache = net.__dict__.setdefault("_cut_cache", {})
    key = frozenset(net.in_of(T))
    if key not in cache:
        cache[key] = min_cut(net, T) if key else 0
    return cache[key]


def singleton_bound(C: int, omega: int) -> int:
    """Right-hand side of the extended Singleton bound."""
    return C - omega + 1 if C >= omega else 1


def rank_of_pattern(net: Network, rho: Iterable[str], T: Iterable[str]) -> int:
    """rank_T(rho): min-cut from the replacement source to ``T``."""
    rho = net.check_pattern(rho)
    T = net.check_collection(T)
    cache = net.__dict__.setdefault("_rank_cache", {})
    key = (frozenset(rho), frozenset(net.in_of(T)))
    if key not in cache:
        cache[key] = pattern_rank(net, rho, T)
    return cache[key]


def dominates(code: LocalKernel, rho1: Iterable[str], rho2: Iterable[str], T: Iterable[str]) -> bool:
    """Whether ``Delta(T, rho1)`` lies inside ``Delta(T, rho2)`` for this one code.

    Domination proper quantifies over every code, so a True here is only a
    witness consistent with it; a False disproves it.
    """
    return error_space(code, T, rho1) <= error_space(code, T, rho2)


class AtLeast(int):
    """A distance lower bound returned when the search cap is hit."""

    exact = False

    def __repr__(self):
        return f"AtLeast({int(self)})"

    def __str__(self):
        return f">={int(self)}"


class _DistanceSearch:
    """Precomputed rows for pattern-versus-message-space tests at one ``T``."""

    def __init__(self, code: LocalKernel, T):
        F = code.field
        self.F = F
        self.Ft = decoding_matrix(code, T)
        basis, piv = linalg.rref(F, self.Ft.message_rows)
        self.phi_basis, self.phi_pivots = basis, piv
        self.dim_phi = len(basis)
        ids = code.network.channel_ids
        self.rows = {e: list(self.Ft.row(e)) for e in ids}
        self.reduced = {e: linalg.reduce_vector(F, basis, piv, r) for e, r in self.rows.items()}
        # zero rows never shrink a minimal pattern
        self.active = [e for e in ids if any(self.rows[e])]

    def meets(self, rho: Sequence[str]) -> bool:
        # rank([Phi; D]) = dim Phi + rank(D reduced mod Phi)
        F = self.F
        return linalg.rank(F, [self.reduced[e] for e in rho]) < linalg.rank(F, [self.rows[e] for e in rho])

    def dim_delta(self, rho: Sequence[str]) -> int:
        return linalg.rank(self.F, [self.rows[e] for e in rho])


def min_distance(code: LocalKernel, T: Iterable[str], search_cap: int | None = None) -> int:
    """d_min at the collection ``T`` by exhaustive pattern search.

    Returns the least ``|rho|`` with ``Delta(T, rho)`` meeting ``Phi(T)``
    nontrivially, or ``AtLeast(search_cap + 1)`` if none has size
    ``<= search_cap``.  The default cap is ``|In(T)|``, which always
    suffices, so the default result is exact.

    Raises
    ------
    UndefinedDistance
        If ``Phi(T)`` is the zero space.
    """
    if search_cap is not None and search_cap < 1:
        raise ValueError("search_cap must be >= 1")
    search = _DistanceSearch(code, T)
    if search.dim_phi == 0:
        raise UndefinedDistance(f"message space at {search.Ft.collection} is zero")
    cap = len(search.Ft.columns) if search_cap is None else search_cap
    for k in range(1, min(cap, len(search.active)) + 1):
        for rho in combinations(search.active, k):
            if search.meets(rho):
                return k
    return AtLeast(cap + 1)


@dataclass(frozen=True)
class DistanceMinima:
    """The three minimum-distance expressions over all patterns meeting Phi(T)."""

    by_size: int | None
    by_rank: int | None
    by_dim: int | None
    patterns_checked: int

    @property
    def agree(self) -> bool:
        return self.by_size == self.by_rank == self.by_dim


def distance_minima(code: LocalKernel, T: Iterable[str], max_channels: int = 16) -> DistanceMinima:
    """Evaluate all three distance expressions by enumerating every pattern.

    Unlike :func:`min_distance` this scans all ``2^|E|`` patterns and uses no
    shortcut, so it is an independent check; ``max_channels`` guards the
    blow-up.
    """
    net = code.network
    T = net.check_collection(T)
    ids = net.channel_ids
    if len(ids) > max_channels:
        raise BudgetExceeded(f"{len(ids)} channels exceed max_channels={max_channels}")
    F = code.field
    Ft = decoding_matrix(code, T)
    phi = linalg.Subspace.span(F, Ft.message_rows, len(Ft.columns))
    if phi.dim == 0:
        raise UndefinedDistance(f"message space at {T} is zero")
    best = [None, None, None]
    checked = 0
    for k in range(1, len(ids) + 1):
        for rho in combinations(ids, k):
            checked += 1
            delta = linalg.Subspace.span(F, Ft.rows(rho), len(Ft.columns))
            if not delta.intersects(phi):
                continue
            vals = (k, rank_of_pattern(net, rho, T), delta.dim)
            best = [v if b is None else min(b, v) for b, v in zip(best, vals)]
    return DistanceMinima(*best, patterns_checked=checked)


def enumerate_R(net: Network, T: Iterable[str], delta: int, budget: int = DEFAULT_PATTERN_BUDGET) -> list[tuple[str, ...]]:
    """All patterns ``rho`` with ``|rho| = rank_T(rho) = delta``.

    Only channels with a path into ``T`` can appear: any other channel's
    replacement reaches nothing, so its pattern would have rank below its
    size.

    Raises
    ------
    BudgetExceeded
        If more than ``budget`` candidate patterns would be examined.
    """
    if delta < 0:
        raise ValueError("delta must be >= 0")
    T = net.check_collection(T)
    reach = net.reaches
    targets = set(T)
    useful = [c.id for c in net.channels if reach[c.head] & targets]
    n_candidates = comb(len(useful), delta)
    if n_candidates > budget:
        raise BudgetExceeded(f"{n_candidates} candidate patterns of size {delta} exceed the budget {budget}")
    return [rho for rho in combinations(useful, delta) if rank_of_pattern(net, rho, T) == delta]


# ----------------------------------------------------------------------------
# Regularity and verdicts


@dataclass(frozen=True)
class Regularity:
    """The four rank conditions on message spaces.

    The two collection-level flags are None when the collection cap stopped
    the check before any violation was found.
    """

    regular: bool
    strongly_regular: bool
    sup_regular: bool | None
    strongly_sup_regular: bool | None
    collections_checked: int
    collections_total: int

    @property
    def partial(self) -> bool:
        return self.collections_checked < self.collections_total


def _dim_phi(code: LocalKernel, T) -> int:
    net = code.network
    if not net.in_of(T):
        return 0
    Ft = decoding_matrix(code, T)
    return linalg.rank(code.field, Ft.message_rows)


def _collections(code: LocalKernel, collections_cap: int | None):
    all_T = enumerate_collections(code.network)
    if collections_cap is not None and len(all_T) > collections_cap:
        return all_T[:collections_cap], len(all_T)
    return all_T, len(all_T)


def regularity(code: LocalKernel, collections_cap: int | None = None) -> Regularity:
    net, w = code.network, code.omega
    regular = strongly = True
    for t in net.non_source_nodes:
        C, dim = capacity(net, t), _dim_phi(code, (t,))
        if C >= w and dim != w:
            regular = False
        if dim != min(w, C):
            strongly = False
    sup = strongly_sup = True
    checked, total = _collections(code, collections_cap)
    for T in checked:
        C, dim = capacity(net, T), _dim_phi(code, T)
        if C >= w and dim != w:
            sup = False
        if dim != min(w, C):
            strongly_sup = False
    if len(checked) < total:
        sup = None if sup else False
        strongly_sup = None if strongly_sup else False
    return Regularity(regular, strongly, sup, strongly_sup, len(checked), total)


@dataclass
class Entry:
    """Distance row for one node or collection."""

    collection: tuple[str, ...]
    capacity: int
    delta: int | None
    dim_message: int
    d_min: int | None
    bound: int
    meets_bound: bool | None

    def to_dict(self) -> dict:
        return {
            "collection": list(self.collection),
            "capacity": self.capacity,
            "delta": self.delta,
            "dim_message": self.dim_message,
            "d_min": self.d_min,
            "bound": self.bound,
            "meets_bound": self.meets_bound,
        }


def _entry(code: LocalKernel, T) -> Entry:
    net, w = code.network, code.omega
    C = capacity(net, T)
    dim = _dim_phi(code, T)
    d = min_distance(code, T) if dim else None
    bound = singleton_bound(C, w)
    return Entry(tuple(T), C, C - w + 1 if C >= w else None, dim, d, bound, None if d is None else d == bound)


@dataclass(frozen=True)
class FieldBounds:
    """Field-size thresholds: a code of the named kind exists once ``|F| > value``.

    ``multicast`` sums ``|R_t(delta_t)|`` over nodes with ``C_t >= omega``,
    where ``R_t(delta)`` holds the patterns of size and rank ``delta``;
    ``broadcast`` adds one per node below capacity ``omega``.  The
    ``*_binomial`` variants replace ``|R_t(delta_t)|`` by ``(|E| choose
    delta_t)``.  ``dispersion`` runs the analogous sum over all raw
    collections (see the README).  ``tracked_pairs`` counts the (node,
    pattern) pairs that :func:`~lnec.construct.construct_multicast_mds`
    tracks; a field with more elements than that guarantees its
    subspace-avoidance search never runs dry.
    """

    multicast: int
    broadcast: int
    dispersion: int
    multicast_binomial: int
    broadcast_binomial: int
    tracked_pairs: int

    def to_dict(self) -> dict:
        return asdict(self)


def field_bounds(net: Network, omega: int, pattern_budget: int = DEFAULT_PATTERN_BUDGET, node_cap: int = 16) -> FieldBounds:
    """Field sizes sufficient for the existence of each kind of MDS code."""
    if omega < 1:
        raise ValueError("omega must be >= 1")
    E = len(net.channels)
    exact = binomial = tracked = 0
    below = 0
    for t in net.non_source_nodes:
        C = capacity(net, t)
        if C < omega:
            below += 1
            continue
        delta = C - omega + 1
        exact += len(enumerate_R(net, (t,), delta, pattern_budget))
        binomial += comb(E, delta)
        tracked += len(enumerate_R(net, (t,), C - omega, pattern_budget))

    raw = enumerate_collections(net, dedup=False, node_cap=node_cap)
    caps = {T: capacity(net, T) for T in raw}
    node_cap_sum = sum(capacity(net, t) for T in raw for t in T)
    disp = coll_below = 0
    for T in raw:
        C = caps[T]
        if C >= omega:
            disp += comb(E + node_cap_sum, C - omega + 1)
        else:
            coll_below += 1
    return FieldBounds(
        multicast=exact,
        broadcast=exact + below,
        dispersion=disp + coll_below,
        multicast_binomial=binomial,
        broadcast_binomial=binomial + below,
        tracked_pairs=tracked,
    )


@dataclass
class CodeReport:
    """Everything :func:`verdicts` learns about a code."""

    field: str
    modulus: str
    omega: int
    channel_order: tuple[str, ...]
    node_order: tuple[str, ...]
    nodes: list[Entry]
    collections: list[Entry]
    regularity: Regularity
    multicast_mds: bool
    broadcast_mds: bool
    dispersion_mds: bool | None
    bounds: FieldBounds | None = None
    notices: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        reg = self.regularity
        return {
            "tool": f"lnec {__version__}",
            "field": self.field,
            "modulus": self.modulus,
            "omega": self.omega,
            "node_order": list(self.node_order),
            "channel_order": list(self.channel_order),
            "regularity": {
                "regular": reg.regular,
                "strongly_regular": reg.strongly_regular,
                "sup_regular": reg.sup_regular,
                "strongly_sup_regular": reg.strongly_sup_regular,
                "collections_checked": reg.collections_checked,
                "collections_total": reg.collections_total,
            },
            "verdicts": {
                "multicast_mds": self.multicast_mds,
                "broadcast_mds": self.broadcast_mds,
                "dispersion_mds": self.dispersion_mds,
            },
            "nodes": [e.to_dict() for e in self.nodes],
            "collections": [e.to_dict() for e in self.collections],
            "field_bounds": None if self.bounds is None else self.bounds.to_dict(),
            "notices": list(self.notices),
        }

    def format(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def verdict(self, name: str) -> bool | None:
        """Look up a verdict or regularity flag by CLI name, e.g. ``multicast-mds``."""
        key = name.replace("-", "_")
        if key in ("multicast_mds", "broadcast_mds", "dispersion_mds"):
            return getattr(self, key)
        return getattr(self.regularity, key)


def verdicts(
    code: LocalKernel,
    collections_cap: int | None = None,
    *,
    with_collections: bool = True,
    with_bounds: bool = False,
    pattern_budget: int = DEFAULT_PATTERN_BUDGET,
) -> CodeReport:
    """Regularity flags, per-node and per-collection distances, MDS verdicts.

    Nodes or collections with zero min-cut have no decodable message and no
    defined distance; they satisfy every condition vacuously.  With
    ``with_collections=False`` the dispersion verdict is left as None.
    """
    net, w = code.network, code.omega
    notices: list[str] = []
    node_entries = [_entry(code, (t,)) for t in net.non_source_nodes]

    if with_collections:
        reg = regularity(code, collections_cap)
        checked, total = _collections(code, collections_cap)
        coll_entries = [_entry(code, T) for T in checked]
        if len(checked) < total:
            notices.append(f"collections cap {collections_cap} reached: checked {len(checked)} of {total}")
    else:
        reg = regularity(code, 0)
        coll_entries = []
        notices.append("collections not analyzed")

    multicast = reg.regular and all(e.meets_bound for e in node_entries if e.capacity >= w)
    broadcast = reg.strongly_regular and all(e.meets_bound is not False for e in node_entries)
    if with_collections and reg.strongly_sup_regular is not False:
        ok = all(e.meets_bound is not False for e in coll_entries)
        dispersion = ok if reg.strongly_sup_regular else (None if ok else False)
    else:
        dispersion = False if reg.strongly_sup_regular is False else None

    bounds = field_bounds(net, w, pattern_budget) if with_bounds else None
    return CodeReport(
        field=str(code.field),
        modulus=code.field.modulus_string(),
        omega=w,
        channel_order=net.channel_ids,
        node_order=net.nodes,
        nodes=node_entries,
        collections=coll_entries,
        regularity=reg,
        multicast_mds=bool(multicast),
        broadcast_mds=bool(broadcast),
        dispersion_mds=dispersion,
        bounds=bounds,
        notices=notices,
    )
