"""
Sending messages through errors
===============================

Three parallel channels carrying one symbol form a repetition code with
distance 3, so any single channel error can be corrected.
"""

# %%
from lnec import fixtures
from lnec.analysis import min_distance
from lnec.gf import GF
from lnec.kernels import LocalKernel
from lnec.sim import Decoder, capability_sweep, encode, observe

net = fixtures.parallel(3)
code = LocalKernel(net, 1, GF(2), {("d'1", e): 1 for e in net.channel_ids})
print("d_min =", min_distance(code, ["t"]))

# %%
# Send the symbol 1 with an error on e2.
out = encode(code, [1], [0, 1, 0])
print(out.trace())
received = observe(out, ["t"])
print("received", received)
print(Decoder(code, ["t"], tau=1).decode(received).format())

# %%
# Exhaustively: every message with every error of weight at most 1.
print(capability_sweep(code, ["t"], 1).format())

# %%
# One more error than half the distance allows breaks the guarantee.
print(capability_sweep(code, ["t"], 2).format())
