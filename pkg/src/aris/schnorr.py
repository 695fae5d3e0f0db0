"""Textbook Schnorr signatures over the same group backends.

Used as the comparison baseline: signing costs one fixed-base
multiplication, verification two multiplications (one fixed-base, one
variable-base) and an addition.  No multi-scalar tricks.
"""

from __future__ import annotations

import hmac
import os
from dataclasses import dataclass

from .group import DecodeError, Group
from .params import blake2_hash

TAG_KEY = 0x11
TAG_NONCE = 0x12
TAG_CHALLENGE = 0x13


@dataclass(frozen=True)
class SchnorrPublicKey:
    group: Group
    X: object
    encoded: bytes

    @classmethod
    def from_bytes(cls, group: Group, data: bytes) -> "SchnorrPublicKey":
        return cls(group, group.deserialize(data), bytes(data))


@dataclass(frozen=True)
class SchnorrKeyPair:
    group: Group
    x: int
    public: SchnorrPublicKey

    @property
    def X(self):
        return self.public.X


def schnorr_keygen(group: Group, seed: bytes | None = None) -> SchnorrKeyPair:
    seed = os.urandom(32) if seed is None else bytes(seed)
    x = group.scalar_from_wide_bytes(blake2_hash(TAG_KEY, b"", seed, group.wide_len))
    if x == 0:
        raise ValueError("seed maps to the zero scalar")
    X = group.mul_base(x)
    return SchnorrKeyPair(group, x, SchnorrPublicKey(group, X, group.serialize(X)))


def _challenge(group: Group, R_bytes: bytes, X_bytes: bytes, m: bytes) -> int:
    return group.scalar_from_wide_bytes(
        blake2_hash(TAG_CHALLENGE, b"", R_bytes + X_bytes + m, group.wide_len)
    )


def schnorr_sign(m: bytes, kp: SchnorrKeyPair) -> tuple[int, int]:
    """Return ``(s, e)`` with ``s = k + e*x`` and a nonce ``k`` derived from ``(x, m)``."""
    g = kp.group
    key = g.scalar_to_bytes(kp.x)
    k = g.scalar_from_wide_bytes(blake2_hash(TAG_NONCE, key, m, g.wide_len))
    R = g.mul_base(k)
    e = _challenge(g, g.serialize(R), kp.public.encoded, m)
    return (k + e * kp.x) % g.order, e


def schnorr_signature_bytes(group: Group, sig: tuple[int, int]) -> bytes:
    s, e = sig
    return group.scalar_to_bytes(s) + group.scalar_to_bytes(e)


def schnorr_signature_from_bytes(group: Group, data: bytes) -> tuple[int, int]:
    n = group.scalar_len
    if len(data) != 2 * n:
        raise DecodeError(f"signature must be {2 * n} bytes, got {len(data)}")
    return group.scalar_from_bytes(data[:n]), group.scalar_from_bytes(data[n:])


def schnorr_verify(m: bytes, sig, pub: SchnorrPublicKey) -> bool:
    """Check ``e == H(s*P - e*X || X || m)``.  ``sig`` may be a tuple or bytes."""
    g = pub.group
    try:
        if isinstance(sig, (bytes, bytearray)):
            s, e = schnorr_signature_from_bytes(g, sig)
        else:
            s, e = sig
    except (DecodeError, TypeError, ValueError):
        return False
    if not (isinstance(s, int) and isinstance(e, int) and 0 <= s < g.order and 0 <= e < g.order):
        return False
    R = g.add(g.mul_base(s), g.neg(g.scalar_mul(e, pub.X)))
    e2 = _challenge(g, g.serialize(R), pub.encoded, m)
    return hmac.compare_digest(g.scalar_to_bytes(e2), g.scalar_to_bytes(e))
