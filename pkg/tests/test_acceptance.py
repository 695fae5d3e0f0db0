"""Exit criteria.  Each test prints one PASS/FAIL line in the terminal summary."""

import hashlib
import json
import random
import time
from math import comb

import pytest

from aris import (
    ParamSet, Ristretto255, SecurityWarning, Signature, ToyGroup, builtin_params, expand,
    keygen, schnorr_keygen, schnorr_sign, schnorr_verify, sign, sign_trace, verify,
)
from aris import formats
from aris.bench import compare
from aris.cli import main

from conftest import ref_hash, ref_scalar

SETS = ("commodity", "embedded")


def slice_bits(digest, t, k):
    """Bit-string slicing oracle for the index chunking."""
    w = t.bit_length() - 1
    bits = "".join(format(b, "08b") for b in digest)
    return [int(bits[j * w : (j + 1) * w], 2) for j in range(k)]


@pytest.fixture(scope="module")
def ec_sets():
    out = {}
    for name in SETS:
        params = builtin_params(name, Ristretto255())
        out[name] = [keygen(params, bytes([j]) * 16) for j in range(10)]
    return out


@pytest.mark.acceptance(1, "correctness: 1e4 toy + 1e3 EC roundtrips per parameter set, 100% valid, < 2 min")
def test_c1_correctness():
    start = time.perf_counter()
    rng = random.Random(1)
    failures = 0
    for name in SETS:
        params = builtin_params(name, ToyGroup(101))
        for key_no in range(100):
            sk, pk = keygen(params, rng.randbytes(16))
            for _ in range(100):
                m = rng.randbytes(rng.randrange(65))
                failures += not verify(m, sign(m, sk), pk)
    keygen_time = 0.0
    for name in SETS:
        params = builtin_params(name, Ristretto255())
        for key_no in range(10):
            t0 = time.perf_counter()
            sk, pk = keygen(params, rng.randbytes(16))
            keygen_time += time.perf_counter() - t0
            for _ in range(100):
                m = rng.randbytes(rng.randrange(65))
                failures += not verify(m, sign(m, sk), pk)
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {failures} failures, {elapsed:.1f}s (EC keygen {keygen_time:.1f}s)")
    assert failures == 0
    assert elapsed < 120


@pytest.mark.acceptance(2, "forgery rejection: 5 mutation classes x 1e3 honest signatures, 100% invalid")
def test_c2_forgery_rejection(ec_sets):
    (sk, pk), (_, other_pk) = ec_sets["commodity"][:2]
    params = sk.params
    order = params.group.order
    rng = random.Random(2)
    msgs = [rng.randbytes(32) for _ in range(1000)]
    sigs = [sign(m, sk) for m in msgs]
    accepted = {"message bit": 0, "s bit": 0, "h bit": 0, "swap": 0, "wrong pk": 0}
    for j, (m, sig) in enumerate(zip(msgs, sigs)):
        mb = bytearray(m)
        bit = rng.randrange(256)
        mb[bit // 8] ^= 1 << (bit % 8)
        accepted["message bit"] += verify(bytes(mb), sig, pk)

        bit = rng.randrange(253)
        s2 = sig.s ^ (1 << bit)
        # flips that push s past the order arrive as a non-canonical encoding
        raw = bytearray(sig.to_bytes(params))
        raw[bit // 8] ^= 1 << (bit % 8)
        accepted["s bit"] += verify(m, bytes(raw), pk) if s2 >= order else verify(m, Signature(s2, sig.h), pk)

        hb = bytearray(sig.h)
        bit = rng.randrange(256)
        hb[bit // 8] ^= 1 << (bit % 8)
        accepted["h bit"] += verify(m, Signature(sig.s, bytes(hb)), pk)

        accepted["swap"] += verify(m, sigs[(j + 1) % len(sigs)], pk)
        accepted["wrong pk"] += verify(m, sig, other_pk)
    print(f"criterion 2: accepted forgeries {accepted}")
    assert all(v == 0 for v in accepted.values())


@pytest.mark.acceptance(3, "structural cost: sign 0 mul / k-1 add, verify 1 mul / k add; Schnorr 1 / 2 muls")
def test_c3_structural_cost(ec_sets):
    for name in SETS:
        sk, pk = ec_sets[name][0]
        g = sk.params.group
        k = sk.params.k
        for key in (sk, expand(sk)):
            g.reset_counters()
            sig = sign(b"structural", key)
            assert g.snapshot() == (0, k - 1)
        g.reset_counters()
        assert verify(b"structural", sig, pk)
        assert g.snapshot() == (1, k)
    g = Ristretto255()
    kp = schnorr_keygen(g, b"baseline")
    g.reset_counters()
    sig = schnorr_sign(b"structural", kp)
    assert g.snapshot()[0] == 1
    g.reset_counters()
    assert schnorr_verify(b"structural", sig, kp.public)
    assert g.snapshot()[0] == 2


@pytest.mark.acceptance(4, "relative performance: ARIS median sign and verify < Schnorr, 1e4 iterations")
def test_c4_relative_performance():
    params = builtin_params("commodity", Ristretto255())
    aris, base = compare(params, iterations=10_000, warmup=100, seed=4, keygen_iterations=1, expanded=True)
    print(
        f"criterion 4: sign {aris.sign_median_us:.1f} vs {base.sign_median_us:.1f} us, "
        f"verify {aris.verify_median_us:.1f} vs {base.verify_median_us:.1f} us"
    )
    assert aris.sign_median_us < base.sign_median_us
    assert aris.verify_median_us < base.verify_median_us


@pytest.mark.acceptance(5, "sizes: pk 32768/8192 B, expanded x+r 16384 B (t=256), signature 64 B")
def test_c5_sizes(ec_sets):
    sk_c, pk_c = ec_sets["commodity"][0]
    sk_e, pk_e = ec_sets["embedded"][0]
    assert len(pk_c.to_bytes()) == 32768
    assert len(pk_e.to_bytes()) == 8192
    info, payload = formats.decode_header(formats.public_key_to_bytes(pk_c))
    assert info["payload_len"] == 32768
    ske = expand(sk_e)
    g = sk_e.params.group
    xr = b"".join(g.scalar_to_bytes(v) for v in ske.x_table + ske.r_table)
    assert len(xr) == 16384
    _, payload = formats.decode_header(formats.secret_key_to_bytes(ske))
    assert payload.endswith(xr)
    for sk in (sk_c, sk_e):
        assert len(sign(b"size", sk).to_bytes(sk.params)) == 64


@pytest.mark.acceptance(6, "security bits: 127 (1024,18) and 123 (256,28) by exact binomial, gap to 128 flagged")
def test_c6_security_bits(tmp_path, capsys):
    def oracle(t, k):
        c, n = comb(t, k), 0
        while c > 1:
            c >>= 1
            n += 1
        return n

    for name, want in (("commodity", 127), ("embedded", 123)):
        with pytest.warns(SecurityWarning, match=f"{want} bits.*below kappa=128"):
            p = builtin_params(name, ToyGroup(101))
        assert p.security_bits == oracle(p.t, p.k) == want
        assert main(["keygen", "--params", name, "--group", "toy101", "--out-prefix", str(tmp_path / name)]) == 0
        assert f"security_bits {want}  (below kappa=128)" in capsys.readouterr().out


@pytest.mark.acceptance(7, "homomorphic identity on Z_101: 1e3 cases, s*P + sum Y = R by integer arithmetic")
def test_c7_homomorphic_identity():
    rng = random.Random(7)
    toy = ToyGroup(101)
    shapes = [
        builtin_params("embedded", toy),
        ParamSet(t=16, k=4, l1=16, l2=256, group=toy),
        ParamSet(t=4, k=2, l1=4, l2=256, group=toy),
    ]
    dlog = {toy.scalar_mul(j, toy.generator): j for j in range(101)}
    for case in range(1000):
        p = shapes[case % len(shapes)]
        z = rng.randbytes(16)
        m = rng.randbytes(rng.randrange(40))
        sk, pk = keygen(p, z)

        # independent recomputation of every signing value
        x = lambda i: ref_scalar(1, z, i, 101)
        r = lambda i: ref_scalar(2, z, i, 101)
        commit = slice_bits(ref_hash(3, z, m, p.l1_bytes), p.t, p.k)
        R = sum(r(i) for i in commit) % 101
        h = ref_hash(4, b"", bytes([R]), 32)
        idx = slice_bits(ref_hash(5, b"", h + m, p.l1_bytes), p.t, p.k)
        s = (R - sum(x(i) for i in idx)) % 101

        tr = sign_trace(m, sk)
        assert (tr.commit_indexes, tr.indexes, tr.h, tr.s) == (commit, idx, h, s)
        # discrete logs of the touched table entries, by exhaustive search
        Y = sum(dlog[pk.Y_table[i]] for i in idx) % 101
        assert (s + Y) % 101 == R == tr.R
        assert verify(m, tr.signature, pk)


@pytest.mark.acceptance(8, "interop: cmd_vectors byte-identical across runs, every vector verifies via cmd_verify")
def test_c8_vectors(tmp_path, capsys):
    args = ["vectors", "--params", "embedded", "--count", "3", "--seed", "acceptance"]
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert hashlib.sha256(a.read_bytes()).digest() == hashlib.sha256(b.read_bytes()).digest()
    lines = a.read_text().splitlines()
    assert len(lines) == 3
    for n, line in enumerate(lines):
        v = json.loads(line)
        prefix = tmp_path / f"v{n}"
        assert main(["keygen", "--params", v["params"], "--out-prefix", str(prefix), "--seed-hex", v["sk_seed"]]) == 0
        pk_file = prefix.with_suffix(".pk")
        assert hashlib.sha256(pk_file.read_bytes()).hexdigest() == v["pk_sha256"]
        msg, sig = tmp_path / f"m{n}", tmp_path / f"s{n}"
        msg.write_bytes(bytes.fromhex(v["message"]))
        sig.write_bytes(bytes.fromhex(v["signature"]))
        capsys.readouterr()
        assert main(["verify", "--pub", str(pk_file), "--in", str(msg), "--sig", str(sig)]) == 0
        assert capsys.readouterr().out.strip() == "VALID"
