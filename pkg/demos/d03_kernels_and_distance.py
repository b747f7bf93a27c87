"""
Global kernels, decoding matrices and minimum distance
======================================================

A code is given by local coefficients.  Its extended global kernels record
how every message symbol and every channel error reaches every channel.
"""

# %%
from lnec import fixtures
from lnec.analysis import distance_minima, min_distance, verdicts
from lnec.gf import GF
from lnec.kernels import LocalKernel, decoding_matrix, extend_kernels, transfer_matrices

# %%
# The textbook butterfly code over GF(2): the middle channel carries the
# sum of both message symbols.
net = fixtures.butterfly()
coefs = {
    ("d'1", "sa"): 1, ("d'2", "sb"): 1,
    ("sa", "ac"): 1, ("sa", "at1"): 1, ("sb", "bc"): 1, ("sb", "bt2"): 1,
    ("ac", "cd"): 1, ("bc", "cd"): 1, ("cd", "dt1"): 1, ("cd", "dt2"): 1,
}
code = LocalKernel(net, 2, GF(2), coefs)
for e, f in extend_kernels(code).items():
    print(f"{e:>4}: {f[:2]} | {f[2:]}")

# %%
# The closed form B~ (I - K)^-1 gives the same kernels as columns.
M = transfer_matrices(code).M_tilde
print("closed form agrees:", [tuple(c) for c in zip(*M)] == [code.kernels[e] for e in net.channel_ids])

# %%
# The decoding matrix at t1 has one column per incoming channel.
Ft = decoding_matrix(code, ["t1"])
print("columns:", Ft.columns)
for name, row in zip(("d'1", "d'2") + net.channel_ids, Ft.matrix):
    print(f"{name:>4}", row)

# %%
# With capacity 2 and rate 2 there is no redundancy, so the distance is 1,
# matching the bound C - omega + 1.
print("d_min at t1:", min_distance(code, ["t1"]))
print(distance_minima(code, ["t1"]))
print("multicast MDS:", verdicts(code).multicast_mds)
