import random

import pytest

from aris.group import DecodeError, GroupDescriptor, Ristretto255, ToyGroup, get_group, is_probable_prime

# ristretto255 encodings of B, 2B, ..., 5B (the published small-multiples vectors)
RISTRETTO_MULTIPLES = [
    "0000000000000000000000000000000000000000000000000000000000000000",
    "e2f2ae0a6abc4e71a884a961c500515f58e30b6aa582dd8db6a65945e08d2d76",
    "6a493210f7499cd17fecb510ae0cea23a110e8d5b901f8acadd3095c73a3b919",
    "94741f5d5d52755ece4f23f044ee27d5d1ea1e2bd196b462166b16152a9d0259",
    "da80862773358b466ffadfe0b3293ab3d9fd53c5ea6c955358f568322daf6a57",
    "e882b131016b52c1d3337080187cf768423efccbb517bb495ab812c4160ff44e",
]

# non-canonical or off-group encodings
BAD_ENCODINGS = [
    "0100000000000000000000000000000000000000000000000000000000000000",  # negative s
    "edffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff7f",  # s = q
    "f3ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff7f",  # s > q
    "26948d35ca62e643e26a83177332e6b6afeb9d08e4268b650f1f5bbd8d81d371",  # non-square
    "0000000000000000000000000000000000000000000000000000000000000080",  # high bit set
]

EC = Ristretto255()


# -- toy group ----------------------------------------------------------------

def test_toy_scalar_mul_examples(toy):
    assert toy.scalar_mul(0, toy.generator) == toy.identity
    assert toy.scalar_mul(1, toy.generator) == toy.generator
    assert toy.scalar_mul(7, 1) == 7


def test_toy_add_examples(toy):
    assert toy.add(40, toy.identity) == 40
    assert toy.add(40, toy.neg(40)) == toy.identity
    assert toy.add(40, 70) == 9


def test_toy_scalar_ops(toy):
    assert toy.scalar_sub(33, 33) == 0
    assert toy.scalar_add(60, 60) == 19
    assert toy.scalar_from_wide_bytes(bytes(64)) == 0


def test_toy_homomorphism_exhaustive(toy):
    for E in range(101):
        for x in range(101):
            xE = x * E % 101
            for y in range(0, 101, 7):
                lhs = toy.scalar_mul((x + y) % 101, E)
                assert lhs == toy.add(xE, toy.scalar_mul(y, E))


def test_toy_serialization_rejects_out_of_range(toy):
    assert toy.deserialize(toy.serialize(100)) == 100
    with pytest.raises(DecodeError):
        toy.deserialize(bytes([101]))
    with pytest.raises(DecodeError):
        toy.deserialize(bytes(2))


# -- descriptor ---------------------------------------------------------------

def test_descriptor_rejects_composite_order():
    with pytest.raises(ValueError):
        GroupDescriptor("bad", 91, 1, 1)
    with pytest.raises(ValueError):
        ToyGroup(100)


def test_orders_are_prime():
    assert is_probable_prime(EC.order)
    assert not is_probable_prime(EC.order + 2)
    assert is_probable_prime(101)


def test_get_group():
    assert get_group("toy101").order == 101
    assert get_group("ristretto255").element_len == 32
    g1, g2 = get_group("ristretto255"), get_group("ristretto255")
    g1.add(g1.generator, g1.generator)
    assert g2.snapshot() == (0, 0)
    with pytest.raises(ValueError):
        get_group("fourq")


# -- instrumentation ----------------------------------------------------------

def test_counters_fresh_and_exact():
    g = Ristretto255()
    assert g.snapshot() == (0, 0)
    g.scalar_mul(5, g.generator)
    assert g.snapshot() == (1, 0)
    g.reset_counters()
    rng = random.Random(3)
    n_mul, n_add = rng.randrange(1, 10), rng.randrange(1, 30)
    acc = g.identity
    for _ in range(n_mul):
        g.mul_base(rng.randrange(g.order))
    for _ in range(n_add):
        acc = g.add(acc, g.generator)
    g.neg(acc)
    assert g.snapshot() == (n_mul, n_add)


def test_sum_counts_len_minus_one(toy):
    toy.sum([1, 2, 3, 4])
    table = toy.prepare_table(range(101))
    toy.sum_indexed(table, [5, 5, 7])
    assert toy.snapshot() == (0, 3 + 2)


# -- ristretto255 -------------------------------------------------------------

@pytest.mark.parametrize("k", range(len(RISTRETTO_MULTIPLES)))
def test_ristretto_small_multiples(k):
    assert EC.serialize(EC.mul_base(k)).hex() == RISTRETTO_MULTIPLES[k]
    assert EC.serialize(EC.scalar_mul(k, EC.generator)).hex() == RISTRETTO_MULTIPLES[k]
    P = EC.deserialize(bytes.fromhex(RISTRETTO_MULTIPLES[k]))
    assert EC.eq(P, EC.mul_base(k))


@pytest.mark.parametrize("enc", BAD_ENCODINGS)
def test_ristretto_rejects_bad_encodings(enc):
    with pytest.raises(DecodeError):
        EC.deserialize(bytes.fromhex(enc))


def test_ristretto_rejects_wrong_length():
    with pytest.raises(DecodeError):
        EC.deserialize(bytes(31))


def test_ristretto_identity_cases():
    P = EC.mul_base(123456789)
    assert EC.eq(EC.add(P, EC.identity), P)
    assert EC.eq(EC.add(P, EC.neg(P)), EC.identity)
    assert EC.eq(EC.scalar_mul(0, P), EC.identity)
    assert EC.eq(EC.scalar_mul(EC.order, P), EC.identity)
    assert EC.eq(EC.scalar_mul(1, P), P)


def test_ristretto_mul_matches_libsodium():
    nacl = pytest.importorskip("nacl.bindings")
    q = 2**255 - 19

    def ed25519_bytes(P):
        X, Y, Z, _ = P
        zi = pow(Z, q - 2, q)
        x, y = X * zi % q, Y * zi % q
        return (y | (x & 1) << 255).to_bytes(32, "little")

    rng = random.Random(7)
    for _ in range(20):
        k = rng.randrange(1, EC.order)
        want = nacl.crypto_scalarmult_ed25519_base_noclamp(k.to_bytes(32, "little"))
        assert ed25519_bytes(EC.mul_base(k)) == want
        assert ed25519_bytes(EC.scalar_mul(k, EC.generator)) == want


def test_ristretto_homomorphism_randomized():
    rng = random.Random(11)
    g = Ristretto255()
    for _ in range(1000):
        x, y = rng.randrange(g.order), rng.randrange(g.order)
        E = g.mul_base(rng.randrange(1, g.order))
        lhs = g.scalar_mul(g.scalar_add(x, y), E)
        rhs = g.add(g.scalar_mul(x, E), g.scalar_mul(y, E))
        assert g.eq(lhs, rhs)


def test_ristretto_serialization_canonical():
    rng = random.Random(5)
    for _ in range(100):
        P = EC.mul_base(rng.randrange(EC.order))
        # torsion-shifted representative of the same element
        T2 = (0, 2**255 - 19 - 1, 1, 0)
        from aris.group import _ext_add

        Q = _ext_add(P, T2)
        b = EC.serialize(P)
        assert EC.serialize(Q) == b
        assert EC.eq(P, Q)
        assert EC.serialize(EC.deserialize(b)) == b


def test_ristretto_sum_indexed_matches_plain_adds():
    g = Ristretto255()
    pts = [g.mul_base(i + 1) for i in range(8)]
    table = g.prepare_table(pts)
    idx = [3, 3, 0, 7, 2]
    got = g.sum_indexed(table, idx)
    assert g.eq(got, g.mul_base(sum(i + 1 for i in idx)))


def test_ristretto_scalar_encoding():
    x = EC.order - 1
    assert EC.scalar_from_bytes(EC.scalar_to_bytes(x)) == x
    with pytest.raises(DecodeError):
        EC.scalar_from_bytes(EC.order.to_bytes(32, "little"))
    assert EC.scalar_from_wide_bytes(bytes(64)) == 0
    assert EC.scalar_from_wide_bytes(b"\xff" * 64) == (2**512 - 1) % EC.order


def test_counters_are_exact_under_threads():
    from concurrent.futures import ThreadPoolExecutor

    g = Ristretto255()
    P = g.generator

    def work(_):
        acc = g.identity
        for _ in range(500):
            acc = g.add(acc, P)
        return acc

    with ThreadPoolExecutor(8) as ex:
        results = list(ex.map(work, range(8)))
    assert g.snapshot() == (0, 8 * 500)
    assert all(g.eq(r, g.mul_base(500)) for r in results)
