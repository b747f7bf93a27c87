"""
Finite field arithmetic
=======================

Elements of GF(p^m) are plain integers whose base-p digits are polynomial
coefficients.  This walk-through builds a few fields and checks their
arithmetic by hand.
"""

# %%
# A prime field is arithmetic modulo p.
from lnec.gf import GF, parse_field

F5 = GF(5)
print("in GF(5): 2 * 3 =", F5.mul(2, 3), " inverse of 2 =", F5.inv(2))

# %%
# An extension field picks its modulus deterministically.  In GF(4) the
# integer 2 stands for x and 3 for x + 1, and x * x = x + 1.
F4 = GF(2, 2)
print("GF(4) modulus:", F4.modulus_string())
print("x * x =", F4.mul(2, 2))

# %%
# The field most codes use by default is GF(2^8).
F256 = parse_field("2^8")
print("GF(256) modulus:", F256.modulus_string())
a, b = F256(0x53), F256(0xCA)
print(f"0x53 * 0xCA = {int(a * b):#04x}")

# %%
# Element objects support the usual operators and refuse to mix fields.
x = F4(2)
print("x^3 =", x ** 3, " (the multiplicative group of GF(4) has order 3)")
try:
    x + F5(1)
except ValueError as exc:
    print("mixing fields:", exc)
