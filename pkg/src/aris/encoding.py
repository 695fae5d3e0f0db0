"""Hash and PRF roles, and the digest-to-index chunking.

Every role calls ``params.hash_fn(tag, key, data, outlen)`` with its own
one-byte domain tag:

====  ======  ===========================  ==========================
tag   role    key / data                   output
====  ======  ===========================  ==========================
0x01  prf1    z / i as 4-byte big-endian   ``wide_len`` bytes -> scalar
0x02  prf2    z / i as 4-byte big-endian   ``wide_len`` bytes -> scalar
0x03  h1      z / m                        ceil(l1/8) bytes -> indexes
0x04  h2      empty / serialize(R)         l2/8 bytes
0x05  h3      empty / h || m               ceil(l1/8) bytes -> indexes
====  ======  ===========================  ==========================

Index chunks are read most-significant first from the top ``l1`` bits of
the digest.
"""

from __future__ import annotations

from .params import ParamSet

TAG_PRF1 = 0x01
TAG_PRF2 = 0x02
TAG_H1 = 0x03
TAG_H2 = 0x04
TAG_H3 = 0x05


def chunk_indexes(bits: bytes, t: int, k: int) -> list[int]:
    """Split the top ``k*log2(t)`` bits of ``bits`` into ``k`` indexes in ``[0, t)``."""
    if t < 2 or t & (t - 1):
        raise ValueError("t must be a power of two")
    w = t.bit_length() - 1
    l1 = k * w
    total = len(bits) * 8
    if total < l1:
        raise ValueError(f"need {l1} bits, got {total}")
    n = int.from_bytes(bits, "big") >> (total - l1)
    mask = t - 1
    return [(n >> (w * (k - 1 - j))) & mask for j in range(k)]


def join_indexes(indexes, t: int) -> bytes:
    """Inverse of :func:`chunk_indexes`, left-aligned and zero-padded to whole bytes."""
    w = t.bit_length() - 1
    n = 0
    for i in indexes:
        if not 0 <= i < t:
            raise ValueError(f"index {i} out of range")
        n = (n << w) | i
    l1 = w * len(indexes)
    nbytes = (l1 + 7) // 8
    return (n << (nbytes * 8 - l1)).to_bytes(nbytes, "big")


def _prf(params: ParamSet, tag: int, z: bytes, i: int) -> int:
    g = params.group
    return g.scalar_from_wide_bytes(params.hash_fn(tag, z, i.to_bytes(4, "big"), g.wide_len))


def prf1(params: ParamSet, z: bytes, i: int) -> int:
    """Secret scalar ``x_i`` whose public image is ``Y_i``."""
    return _prf(params, TAG_PRF1, z, i)


def prf2(params: ParamSet, z: bytes, i: int) -> int:
    """Secret scalar ``r_i`` whose image ``R_i`` goes in the precomputed table."""
    return _prf(params, TAG_PRF2, z, i)


def h1(params: ParamSet, m: bytes, z: bytes) -> list[int]:
    """Secret-keyed index list selecting the commitment randomness."""
    return chunk_indexes(params.hash_fn(TAG_H1, z, m, params.l1_bytes), params.t, params.k)


def h2(params: ParamSet, R) -> bytes:
    return params.hash_fn(TAG_H2, b"", params.group.serialize(R), params.digest_len)


def h3(params: ParamSet, m: bytes, h: bytes) -> list[int]:
    """Public index list selecting the key components bound to ``(m, h)``."""
    if len(h) != params.digest_len:
        raise ValueError("digest has wrong length")
    return chunk_indexes(params.hash_fn(TAG_H3, b"", h + m, params.l1_bytes), params.t, params.k)
