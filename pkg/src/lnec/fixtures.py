"""Small reference networks and random DAG generators."""

from __future__ import annotations

import random

from .network import Network


def single_channel() -> Network:
    return Network("s", [("e", "s", "t")])


def line(length: int = 2) -> Network:
    """Path ``s -> a1 -> ... -> t`` with ``length`` channels."""
    names = ["s"] + [f"a{i}" for i in range(1, length)] + ["t"]
    return Network("s", [(f"e{i + 1}", names[i], names[i + 1]) for i in range(length)])


def parallel(n: int) -> Network:
    """``n`` parallel channels ``s -> t``."""
    return Network("s", [(f"e{i}", "s", "t") for i in range(1, n + 1)])


def bottleneck(n: int = 3) -> Network:
    """``n`` parallel channels ``s -> a`` followed by a single ``a -> t``."""
    edges = [(f"e{i}", "s", "a") for i in range(1, n + 1)]
    edges.append(("b", "a", "t"))
    return Network("s", edges)


def butterfly() -> Network:
    """The classic butterfly: 7 nodes, 9 channels, sinks ``t1`` and ``t2``."""
    return Network(
        "s",
        [
            ("sa", "s", "a"),
            ("sb", "s", "b"),
            ("ac", "a", "c"),
            ("bc", "b", "c"),
            ("cd", "c", "d"),
            ("at1", "a", "t1"),
            ("bt2", "b", "t2"),
            ("dt1", "d", "t1"),
            ("dt2", "d", "t2"),
        ],
    )


def diamond() -> Network:
    """Four nodes: ``s`` feeds ``a`` and ``b`` (two channels each), both feed ``t``."""
    return Network(
        "s",
        [
            ("sa1", "s", "a"),
            ("sa2", "s", "a"),
            ("sb", "s", "b"),
            ("ab", "a", "b"),
            ("at", "a", "t"),
            ("bt1", "b", "t"),
            ("bt2", "b", "t"),
        ],
    )


def combination(n: int = 3, k: int = 2) -> Network:
    """The (n, k) combination network: sinks for every k-subset of n relays."""
    from itertools import combinations

    edges = [(f"s{i}", "s", f"r{i}") for i in range(1, n + 1)]
    for j, subset in enumerate(combinations(range(1, n + 1), k), 1):
        for i in subset:
            edges.append((f"r{i}t{j}", f"r{i}", f"t{j}"))
    return Network("s", edges)


def random_dag(rng: random.Random, n_nodes: int = 5, n_edges: int = 10) -> Network:
    """A random connected single-source DAG with parallel channels allowed.

    Nodes ``v0`` (the source) ... ``v{n-1}`` are in topological order; every
    non-source node first receives one channel from an earlier node so the
    whole graph is reachable from ``v0``.
    """
    if n_nodes < 2:
        raise ValueError("need at least two nodes")
    names = [f"v{i}" for i in range(n_nodes)]
    edges = []
    for j in range(1, n_nodes):
        edges.append((names[rng.randrange(j)], names[j]))
    while len(edges) < n_edges:
        i, j = sorted(rng.sample(range(n_nodes), 2))
        edges.append((names[i], names[j]))
    return Network("v0", [(f"c{k}", u, v) for k, (u, v) in enumerate(edges, 1)])


def layered_dag(rng: random.Random, widths=(2, 2), sinks: int = 2, fan_in: int = 2, source_out: int = 3) -> Network:
    """A layered random DAG: source, relay layers, then sinks.

    Each relay and sink draws ``fan_in`` channels from the previous layer
    (uniformly, repeats allowed); the source spreads ``source_out`` channels
    over the first layer so every relay is fed.
    """
    layers = [["s"]]
    for li, w in enumerate(widths, 1):
        layers.append([f"n{li}{chr(ord('a') + k)}" for k in range(w)])
    layers.append([f"t{k + 1}" for k in range(sinks)])
    edges = []
    first = layers[1]
    targets = list(first) + [rng.choice(first) for _ in range(max(0, source_out - len(first)))]
    for v in targets:
        edges.append(("s", v))
    for prev, cur in zip(layers[1:], layers[2:]):
        for v in cur:
            for _ in range(fan_in):
                edges.append((rng.choice(prev), v))
    return Network("s", [(f"c{k}", u, v) for k, (u, v) in enumerate(edges, 1)])
