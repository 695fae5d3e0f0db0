"""Count group operations: ARIS signing needs no scalar multiplication.

Run:  python demos/03_operation_counts.py
"""
import warnings

from aris import Ristretto255, SecurityWarning, builtin_params, keygen, schnorr_keygen, schnorr_sign, schnorr_verify, sign, verify

warnings.simplefilter("ignore", SecurityWarning)

g = Ristretto255()
for name in ("commodity", "embedded"):
    params = builtin_params(name, g)
    sk, pk = keygen(params, bytes(16))
    g.reset_counters()
    sig = sign(b"m", sk)
    s_counts = g.snapshot()
    g.reset_counters()
    verify(b"m", sig, pk)
    print(f"ARIS {name:9}  sign (muls, adds) = {s_counts}   verify = {g.snapshot()}")

kp = schnorr_keygen(g, b"seed")
g.reset_counters()
sig = schnorr_sign(b"m", kp)
s_counts = g.snapshot()
g.reset_counters()
schnorr_verify(b"m", sig, kp.public)
print(f"Schnorr          sign (muls, adds) = {s_counts}   verify = {g.snapshot()}")
