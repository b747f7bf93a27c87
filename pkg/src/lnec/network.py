"""Single-source acyclic networks with unit-capacity channels.

A :class:`Network` is an acyclic directed multigraph.  On construction it
fixes an *ancestral order*: nodes are sorted topologically (ties broken by
the smallest id under natural ordering, so ``e2 < e10``) and channels by
``(position of tail, channel id)``.  Every matrix row/column ordering in the
package follows this order.

Flows are computed with a unit-capacity augmenting-path max-flow.  Minimum
cuts to a collection ``T`` of nodes use the usual expansion: a virtual node
``t_T`` fed by ``|In(t)|`` parallel channels from every ``t`` in ``T``.
"""

from __future__ import annotations

import heapq
import re
from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import BudgetExceeded, NetworkError

Collection = tuple  # tuple[str, ...] of non-source node ids

_TOKEN_SPLIT = re.compile(r"(\d+)")


def natural_key(s: str):
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok) for tok in _TOKEN_SPLIT.split(s) if tok)


class Channel(NamedTuple):
    id: str
    tail: str
    head: str


class Network:
    """Single-source acyclic directed multigraph.

    Parameters
    ----------
    source : str
        The unique source node ``s``.
    edges : iterable of (id, tail, head)
        Channels; parallel channels are allowed and kept distinct by id.
    nodes : iterable of str, optional
        Extra nodes to declare (e.g. isolated ones).  Nodes named by edges
        are declared implicitly.
    """

    def __init__(self, source: str, edges: Iterable[Sequence[str]], nodes: Iterable[str] = ()):
        edges = [Channel(*e) for e in edges]
        node_set = {source, *nodes}
        seen: set[str] = set()
        for ch in edges:
            if ch.id in seen:
                raise NetworkError(f"duplicate channel id {ch.id!r}")
            seen.add(ch.id)
            if ch.tail == ch.head:
                raise NetworkError(f"channel {ch.id!r} is a self-loop at {ch.tail!r}")
            node_set.add(ch.tail)
            node_set.add(ch.head)
        self.source = source
        self.nodes: tuple[str, ...] = self._topological_order(node_set, edges)
        for ch in edges:
            if ch.head == source:
                raise NetworkError(f"source {source!r} has an incoming channel {ch.id!r}")
        self.node_index = {v: i for i, v in enumerate(self.nodes)}
        pos = self.node_index
        self.channels: tuple[Channel, ...] = tuple(
            sorted(edges, key=lambda c: (pos[c.tail], natural_key(c.id)))
        )
        self.index = {c.id: i for i, c in enumerate(self.channels)}
        ins: dict[str, list[str]] = {v: [] for v in self.nodes}
        outs: dict[str, list[str]] = {v: [] for v in self.nodes}
        for c in self.channels:
            outs[c.tail].append(c.id)
            ins[c.head].append(c.id)
        self._in = {v: tuple(x) for v, x in ins.items()}
        self._out = {v: tuple(x) for v, x in outs.items()}

    @staticmethod
    def _topological_order(node_set, edges) -> tuple[str, ...]:
        indeg = {v: 0 for v in node_set}
        succ: dict[str, list[str]] = {v: [] for v in node_set}
        for c in edges:
            indeg[c.head] += 1
            succ[c.tail].append(c.head)
        heap = [(natural_key(v), v) for v, d in indeg.items() if d == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, v = heapq.heappop(heap)
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, (natural_key(w), w))
        if len(order) != len(node_set):
            stuck = sorted((v for v in node_set if indeg[v] > 0), key=natural_key)
            raise NetworkError(f"network contains a cycle through {stuck}")
        return tuple(order)

    # -- structure --------------------------------------------------------

    def __repr__(self):
        return f"Network(source={self.source!r}, |V|={len(self.nodes)}, |E|={len(self.channels)})"

    def __len__(self):
        return len(self.channels)

    @property
    def channel_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.channels)

    @cached_property
    def non_source_nodes(self) -> tuple[str, ...]:
        return tuple(v for v in self.nodes if v != self.source)

    def channel(self, cid: str) -> Channel:
        try:
            return self.channels[self.index[cid]]
        except KeyError:
            raise NetworkError(f"unknown channel {cid!r}") from None

    def tail(self, cid: str) -> str:
        return self.channel(cid).tail

    def head(self, cid: str) -> str:
        return self.channel(cid).head

    def in_channels(self, node: str) -> tuple[str, ...]:
        try:
            return self._in[node]
        except KeyError:
            raise NetworkError(f"unknown node {node!r}") from None

    def out_channels(self, node: str) -> tuple[str, ...]:
        try:
            return self._out[node]
        except KeyError:
            raise NetworkError(f"unknown node {node!r}") from None

    def in_of(self, T: Iterable[str]) -> tuple[str, ...]:
        """In(T) in ancestral order."""
        T = self.check_collection(T)
        chans = {c for t in T for c in self._in[t]}
        return tuple(sorted(chans, key=self.index.__getitem__))

    def check_collection(self, T: Iterable[str]) -> tuple[str, ...]:
        if isinstance(T, str):
            T = (T,)
        T = tuple(dict.fromkeys(T))
        if not T:
            raise NetworkError("node collection must be nonempty")
        for t in T:
            if t not in self.node_index:
                raise NetworkError(f"unknown node {t!r}")
            if t == self.source:
                raise NetworkError("a node collection may not contain the source")
        return tuple(sorted(T, key=self.node_index.__getitem__))

    def check_pattern(self, rho: Iterable[str]) -> tuple[str, ...]:
        """Validate an error pattern and return it in ancestral order."""
        if isinstance(rho, str):
            rho = (rho,)
        rho = set(rho)
        unknown = [c for c in rho if c not in self.index]
        if unknown:
            raise NetworkError(f"pattern contains unknown channels {sorted(unknown)}")
        return tuple(sorted(rho, key=self.index.__getitem__))

    @cached_property
    def reaches(self) -> dict[str, frozenset[str]]:
        """For each node, the set of nodes reachable from it (itself included)."""
        out: dict[str, frozenset[str]] = {}
        for v in reversed(self.nodes):
            acc = {v}
            for cid in self._out[v]:
                acc |= out[self.channels[self.index[cid]].head]
            out[v] = frozenset(acc)
        return out

    def format(self) -> str:
        """Serialize in the network file format."""
        lines = [f"source {self.source}"]
        used = {self.source} | {c.tail for c in self.channels} | {c.head for c in self.channels}
        lines += [f"node {v}" for v in self.nodes if v not in used]
        lines += [f"edge {c.id} {c.tail} {c.head}" for c in self.channels]
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# Parsing


def parse_network(text: str) -> Network:
    """Parse the line-oriented network format.

    ::

        # comment
        source s
        node x            (optional)
        edge e1 s t

    Channel ids may not contain an apostrophe; primed names are reserved for
    imaginary channels.
    """
    source = None
    nodes: list[str] = []
    edges: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "source" and len(parts) == 2:
            if source is not None and source != parts[1]:
                raise NetworkError(f"line {lineno}: second source declaration {parts[1]!r}")
            source = parts[1]
        elif kw == "node" and len(parts) == 2:
            nodes.append(parts[1])
        elif kw == "edge" and len(parts) == 4:
            if "'" in parts[1]:
                raise NetworkError(f"line {lineno}: channel id {parts[1]!r} uses the reserved character \"'\"")
            edges.append((parts[1], parts[2], parts[3]))
        else:
            raise NetworkError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if source is None:
        raise NetworkError("missing 'source' declaration")
    return Network(source, edges, nodes)


def load_network(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())


# ----------------------------------------------------------------------------
# Unit-capacity max-flow


class _UnitFlow:
    """Augmenting-path max-flow on a small integer-indexed graph."""

    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]

    def add_node(self) -> int:
        self.adj.append([])
        self.n += 1
        return self.n - 1

    def add_arc(self, u: int, v: int, cap: int = 1) -> int:
        a = len(self.to)
        self.adj[u].append(a)
        self.to.append(v)
        self.cap.append(cap)
        self.adj[v].append(a + 1)
        self.to.append(u)
        self.cap.append(0)
        return a

    def run(self, s: int, t: int, limit: int | None = None) -> int:
        flow = 0
        to, cap, adj = self.to, self.cap, self.adj
        while limit is None or flow < limit:
            parent = [-1] * self.n
            parent[s] = -2
            queue = deque([s])
            while queue and parent[t] == -1:
                u = queue.popleft()
                for a in adj[u]:
                    v = to[a]
                    if cap[a] > 0 and parent[v] == -1:
                        parent[v] = a
                        queue.append(v)
            if parent[t] == -1:
                break
            v = t
            while v != s:
                a = parent[v]
                cap[a] -= 1
                cap[a ^ 1] += 1
                v = to[a ^ 1]
            flow += 1
        return flow


def _flow_into_collection(net: Network, T: Sequence[str], removed=frozenset(), feeds: Sequence[str] | None = None) -> int:
    """Max flow into the expansion node of ``T``.

    With ``feeds=None`` the flow starts at the network source; otherwise a
    super-source sends one unit into each listed node (repeats allowed).
    Channels whose ids are in ``removed`` are deleted.
    """
    pos = net.node_index
    g = _UnitFlow(len(net.nodes))
    for c in net.channels:
        if c.id not in removed:
            g.add_arc(pos[c.tail], pos[c.head])
    sink = g.add_node()
    for t in T:
        k = len(net.in_channels(t))
        if k:
            g.add_arc(pos[t], sink, k)
    if feeds is None:
        src = pos[net.source]
    else:
        src = g.add_node()
        for v in feeds:
            g.add_arc(src, pos[v])
    return g.run(src, sink)


def min_cut(net: Network, T: Iterable[str]) -> int:
    """Minimum cut capacity ``C_T`` between the source and the collection ``T``."""
    T = net.check_collection(T)
    return _flow_into_collection(net, T)


def disjoint_paths(net: Network, sources: Sequence[str], t: str, count: int) -> list[list[str]]:
    """``count`` pairwise channel-disjoint paths ending at node ``t``.

    Each path is a list of channel ids that begins with a distinct member of
    ``sources`` and follows head-to-tail adjacency to ``t``.  Paths come from
    decomposing a max-flow, listed in the order of their first channel in
    ``sources``.

    Raises
    ------
    NetworkError
        If fewer than ``count`` such paths exist.
    """
    sources = list(dict.fromkeys(sources))
    for c in sources:
        net.channel(c)
    if t not in net.node_index:
        raise NetworkError(f"unknown node {t!r}")
    pos = net.node_index
    g = _UnitFlow(len(net.nodes))
    src = g.add_node()
    arc_channel: dict[int, str] = {}
    first_arcs = []
    source_set = set(sources)
    for c in sources:
        a = g.add_arc(src, pos[net.head(c)])
        arc_channel[a] = c
        first_arcs.append(a)
    for ch in net.channels:
        if ch.id not in source_set:
            arc_channel[g.add_arc(pos[ch.tail], pos[ch.head])] = ch.id
    got = g.run(src, pos[t], limit=count)
    if got < count:
        raise NetworkError(f"only {got} channel-disjoint paths to {t!r} exist, {count} requested")

    used = {a for a in arc_channel if g.cap[a] == 0}
    paths = []
    target = pos[t]
    for a in first_arcs:
        if a not in used:
            continue
        used.discard(a)
        path = [arc_channel[a]]
        v = g.to[a]
        while v != target:
            nxt = min(b for b in g.adj[v] if b in used)
            used.discard(nxt)
            path.append(arc_channel[nxt])
            v = g.to[nxt]
        paths.append(path)
    return paths


class PatternRankNetwork(Network):
    """Network produced by :func:`pattern_rank_network`.

    ``replaced`` maps each replacement channel id to the original pattern
    channel it stands for; the original ids stay reserved.
    """

    def __init__(self, source, edges, nodes, replaced, pattern):
        super().__init__(source, edges, nodes)
        self.replaced = dict(replaced)
        self.pattern = tuple(pattern)


def _fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def pattern_rank_network(net: Network, rho: Iterable[str]) -> PatternRankNetwork:
    """Replace each pattern channel by one fed from a new source ``s_rho``.

    Channel ``e`` in the pattern is deleted and a channel ``e'`` from the new
    source into ``head(e)`` is added (one per pattern channel, so
    multiplicities into a shared head are kept).  The min-cut from the new
    source to ``T`` is the rank of the pattern at ``T``.
    """
    rho = net.check_pattern(rho)
    s_rho = _fresh_name("s_rho", net.node_index)
    taken = set(net.index)
    edges = [c for c in net.channels if c.id not in set(rho)]
    replaced = {}
    for e in rho:
        new_id = _fresh_name(e + "'", taken)
        taken.add(new_id)
        replaced[new_id] = e
        edges.append((new_id, s_rho, net.head(e)))
    return PatternRankNetwork(s_rho, edges, net.nodes, replaced, rho)


def pattern_rank(net: Network, rho: Iterable[str], T: Iterable[str]) -> int:
    """rank_T(rho) via the min-cut of the pattern-replaced network.

    Equivalent to ``min_cut(pattern_rank_network(net, rho), T)`` without
    materializing the new network.
    """
    rho = net.check_pattern(rho)
    T = net.check_collection(T)
    return _flow_into_collection(net, T, removed=frozenset(rho), feeds=[net.head(e) for e in rho])


def enumerate_collections(
    net: Network,
    max_nodes: int | None = None,
    *,
    dedup: bool = True,
    node_cap: int = 16,
) -> list[Collection]:
    """Nonempty collections of non-source nodes, smallest first.

    With ``dedup`` (the default) collections with empty ``In(T)`` are dropped
    and only the first collection for each distinct ``In(T)`` is kept, since
    decoding matrices and spaces depend on ``T`` only through ``In(T)``.
    """
    if max_nodes is not None and max_nodes < 1:
        raise ValueError("max_nodes must be >= 1")
    nodes = net.non_source_nodes
    size = len(nodes) if max_nodes is None else min(max_nodes, len(nodes))
    if size > node_cap:
        raise BudgetExceeded(
            f"{len(nodes)} non-source nodes exceed the collection cap of {node_cap}; pass max_nodes"
        )
    out: list[Collection] = []
    seen: set[frozenset] = set()
    for k in range(1, size + 1):
        for T in combinations(nodes, k):
            if not dedup:
                out.append(T)
                continue
            key = frozenset(c for t in T for c in net.in_channels(t))
            if not key or key in seen:
                continue
            seen.add(key)
            out.append(T)
    return out


# ----------------------------------------------------------------------------
# Extended network


class ExtendedNetwork:
    """A network together with its imaginary channels for message rate ``omega``.

    The ``omega`` message channels into the source are named ``d'1 ... d'w``;
    the error channel paired with real channel ``e`` is named ``e'``.
    Global kernels have ``omega + |E|`` coordinates: messages first, then
    real channels in ancestral order.
    """

    def __init__(self, network: Network, omega: int):
        if omega < 1:
            raise ValueError("omega must be >= 1")
        self.network = network
        self.omega = omega
        self.message_channels = tuple(f"d'{i}" for i in range(1, omega + 1))
        self.dim = omega + len(network.channels)
        self._coord = {d: i for i, d in enumerate(self.message_channels)}
        for c, i in network.index.items():
            self._coord[c] = omega + i

    def __repr__(self):
        return f"ExtendedNetwork({self.network!r}, omega={self.omega})"

    @staticmethod
    def error_channel(e: str) -> str:
        return e + "'"

    @staticmethod
    def is_error_channel(name: str) -> bool:
        return name.endswith("'")

    def coord(self, name: str) -> int:
        """Coordinate of a message channel, real channel, or error channel ``e'``."""
        if name.endswith("'"):
            name = name[:-1]
        try:
            return self._coord[name]
        except KeyError:
            raise NetworkError(f"unknown channel {name!r}") from None

    def inputs(self, node: str) -> tuple[str, ...]:
        """In(node) in the extended network: message channels at the source, real channels elsewhere."""
        if node == self.network.source:
            return self.message_channels
        return self.network.in_channels(node)

    def unit(self, name: str) -> tuple[int, ...]:
        v = [0] * self.dim
        v[self.coord(name)] = 1
        return tuple(v)
