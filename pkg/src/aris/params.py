"""Parameter sets and the combinatorial security estimate."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .group import Group, Ristretto255


class SecurityWarning(UserWarning):
    """The k-out-of-t index space is smaller than 2**kappa."""


def security_bits(t: int, k: int) -> int:
    """``floor(log2(C(t, k)))`` using an exact binomial."""
    if not 0 <= k <= t:
        raise ValueError("need 0 <= k <= t")
    return comb(t, k).bit_length() - 1


def blake2_hash(tag: int, key: bytes, data: bytes, outlen: int) -> bytes:
    """Default hash/PRF: keyed BLAKE2b over ``tag || data``."""
    import hashlib

    return hashlib.blake2b(bytes((tag,)) + data, key=key, digest_size=outlen).digest()


@dataclass(frozen=True)
class ParamSet:
    """Tunable (t, k, l1, l2, kappa) knobs bound to a group backend.

    ``hash_fn(tag, key, data, outlen) -> bytes`` is the single primitive all
    hash and PRF roles go through; tests swap it to force index lists.
    """

    t: int
    k: int
    l1: int
    l2: int
    group: Group = field(compare=False)
    kappa: int = 128
    name: str = "custom"
    hash_fn: Callable[[int, bytes, bytes, int], bytes] = field(
        default=blake2_hash, compare=False, repr=False
    )

    def __post_init__(self):
        t, k = self.t, self.k
        if t < 2 or t & (t - 1):
            raise ValueError(f"t must be a power of two >= 2, got {t}")
        if not 1 <= k <= t:
            raise ValueError(f"k must be in [1, t], got {k}")
        if self.l1 != k * self.index_bits:
            raise ValueError(
                f"l1 must equal k*log2(t) = {k * self.index_bits}, got {self.l1}"
            )
        if self.l2 % 8 or self.l2 < self.kappa:
            raise ValueError("l2 must be a multiple of 8 and >= kappa")
        if self.kappa % 8:
            raise ValueError("kappa must be a multiple of 8")
        if self.l2 > 512 or self.l1 > 512:
            raise ValueError("l1 and l2 are limited to 512 bits")
        bits = security_bits(t, k)
        if bits < self.kappa:
            warnings.warn(
                f"C({t},{k}) gives {bits} bits of index-space security, "
                f"below kappa={self.kappa}",
                SecurityWarning,
                stacklevel=3,
            )

    @property
    def index_bits(self) -> int:
        return self.t.bit_length() - 1

    @property
    def seed_len(self) -> int:
        return self.kappa // 8

    @property
    def digest_len(self) -> int:
        return self.l2 // 8

    @property
    def l1_bytes(self) -> int:
        return (self.l1 + 7) // 8

    @property
    def signature_len(self) -> int:
        return self.group.scalar_len + self.digest_len

    @property
    def group_id(self) -> str:
        return self.group.group_id

    @property
    def security_bits(self) -> int:
        return security_bits(self.t, self.k)

    def same_as(self, other: "ParamSet") -> bool:
        """Equal knobs and equal group id (ignores backend instance and hash_fn)."""
        return self == other and self.group_id == other.group_id


BUILTIN = {
    # laptop profile: large table, few indexes
    "commodity": dict(t=1024, k=18, l1=180, l2=256),
    # microcontroller profile: small table, expanded secret tables
    "embedded": dict(t=256, k=28, l1=224, l2=256),
}


def builtin_params(name: str, group: Group | None = None) -> ParamSet:
    """Return a named parameter set, bound to ristretto255 unless ``group`` is given."""
    try:
        knobs = BUILTIN[name]
    except KeyError:
        raise ValueError(f"unknown parameter set {name!r}; choose from {sorted(BUILTIN)}") from None
    return ParamSet(group=group if group is not None else Ristretto255(), name=name, **knobs)
