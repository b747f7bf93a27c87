"""
Constructing MDS codes
======================

The multicast construction chooses each channel's kernel outside a union of
subspaces.  A field larger than the field-size bound is always enough.
Random coding is the alternative and is checked exhaustively afterwards.
"""

# %%
import random

from lnec import fixtures
from lnec.analysis import field_bounds, verdicts
from lnec.construct import construct_multicast_mds, construct_random
from lnec.errors import ConstructionError
from lnec.gf import GF, smallest_field_above

# %%
# Field-size bounds for a layered random network at rate 2.
net = fixtures.layered_dag(random.Random(4), widths=(3,), sinks=2, fan_in=3, source_out=4)
bounds = field_bounds(net, 2)
print(bounds)
F = smallest_field_above(bounds.multicast)
print("using", F)

# %%
# Build the code, watching the per-channel steps.
code = construct_multicast_mds(net, 2, F, trace=lambda step: print(" ", step.format()))
report = verdicts(code, with_collections=False)
for entry in report.nodes:
    print(f"node {entry.collection[0]}: C={entry.capacity} d_min={entry.d_min} bound={entry.bound}")
print("multicast MDS:", report.multicast_mds)

# %%
# Over a field that is too small the search can run dry; the error says
# where and why.
try:
    construct_multicast_mds(fixtures.combination(4, 2), 2, GF(2))
except ConstructionError as exc:
    print("failed at channel", exc.details["channel"], "- bound is", exc.details["multicast_bound"])

# %%
# Random coding for the stronger dispersion property.
result = construct_random(fixtures.diamond(), 2, GF(2, 4), "dispersion", attempts=50, seed=1)
print("dispersion MDS after", result.attempts, "attempt(s):", verdicts(result.code).dispersion_mds)
