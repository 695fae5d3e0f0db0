"""Every signing value by hand, in the integers mod 101.

With generator 1 the "point" r*P is just r, so the verification identity
s*P + sum(Y) == R becomes ordinary modular arithmetic.

Run:  python demos/02_toy_group_walkthrough.py
"""
import warnings

from aris import ParamSet, SecurityWarning, ToyGroup, keygen, sign_trace, verify

warnings.simplefilter("ignore", SecurityWarning)

toy = ToyGroup(101)
params = ParamSet(t=8, k=3, l1=9, l2=256, group=toy, name="toy")
sk, pk = keygen(params, b"walkthrough-seed")

print("x_i (secret) =", [sk.x(i) for i in range(params.t)])
print("Y_i (public) =", list(pk.Y_table), " # equal to x_i because P = 1")
print("r_i (secret) =", [sk.r(i) for i in range(params.t)])
print("R_i (table)  =", list(sk.R_table))

m = b"hello"
tr = sign_trace(m, sk)
print()
print("commitment indexes i' =", tr.commit_indexes)
print("r = sum r_i' mod 101  =", tr.r, "  R =", tr.R)
print("h = H2(R)             =", tr.h.hex()[:16] + "...")
print("indexes i = H3(m, h)  =", tr.indexes)
print("s = r - sum x_i       =", tr.s)

Y = sum(pk.Y_table[i] for i in tr.indexes) % 101
print()
print(f"verifier: s + sum Y_i = {tr.s} + {Y} = {(tr.s + Y) % 101} (mod 101), R = {tr.R}")
print("verify ->", verify(m, tr.signature, pk))
