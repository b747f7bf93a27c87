"""
Networks, min-cuts and error-pattern ranks
==========================================

A network is a single-source acyclic multigraph.  This script loads the
butterfly, computes min-cuts to sinks and collections of nodes, and shows
how the rank of an error pattern can be much smaller than its size.
"""

# %%
from pathlib import Path

from lnec import fixtures
from lnec.analysis import capacity, enumerate_R, rank_of_pattern
from lnec.network import disjoint_paths, enumerate_collections, load_network

here = Path(__file__).resolve().parent.parent / "networks"
net = load_network(here / "butterfly.net")
print(net)
print("ancestral channel order:", " ".join(net.channel_ids))

# %%
# Min-cut capacities.  Both sinks see capacity 2, and so does the pair,
# because the source only has two outgoing channels.
for T in (["t1"], ["t2"], ["t1", "t2"], ["c"], ["d"]):
    print(f"C_{{{','.join(T)}}} =", capacity(net, T))

# %%
# Two channel-disjoint paths from the source channels to t1.
for path in disjoint_paths(net, ["sa", "sb"], "t1", 2):
    print(" -> ".join(path))

# %%
# Three parallel channels into a single bottleneck: the three errors can
# only ever look like one error downstream.
bn = fixtures.bottleneck(3)
print("rank of {e1,e2,e3} at t:", rank_of_pattern(bn, ["e1", "e2", "e3"], ["t"]))
print("patterns with |rho| = rank = 1 at t:", enumerate_R(bn, ["t"], 1))

# %%
# Collections of nodes are deduplicated by their incoming channel sets.
print(len(enumerate_collections(net)), "collections on the butterfly")
