"""Sign and verify with the two built-in parameter sets on ristretto255.

Run:  python demos/01_sign_and_verify.py
"""
import warnings

from aris import SecurityWarning, builtin_params, expand, keygen, sign, verify

warnings.simplefilter("ignore", SecurityWarning)

for name in ("commodity", "embedded"):
    params = builtin_params(name)
    print(f"== {name}: t={params.t} k={params.k} l1={params.l1} l2={params.l2}")

    # keygen costs 2t fixed-base multiplications; the seed makes it reproducible
    sk, pk = keygen(params, bytes(16))
    sig = sign(b"pump rate 4.2 ml/h", sk)
    print("signature   ", sig.to_bytes(params).hex())
    print("valid       ", verify(b"pump rate 4.2 ml/h", sig, pk))
    print("tampered    ", verify(b"pump rate 42 ml/h", sig, pk))

    # the expanded key stores x_i and r_i; signatures are unchanged
    print("same in expanded mode:", sign(b"pump rate 4.2 ml/h", expand(sk)) == sig)
    print()
