"""Key generation, signing and verification.

Signing never multiplies by a scalar: the commitment ``R = r*P`` is put
together from a secret table of precomputed points ``R_i = r_i*P`` selected
by a secret-keyed hash of the message, so it costs ``k - 1`` group
additions.  Verification costs one fixed-base multiplication and ``k``
additions::

    s*P + sum(Y[i] for i in h3(m, h)) == r*P == R

because ``s = r - sum(x[i])`` and ``Y[i] = x[i]*P``.
"""

from __future__ import annotations

import hmac
import os
from dataclasses import dataclass, field
from typing import NamedTuple

from . import encoding
from .group import DecodeError
from .params import ParamSet


@dataclass(frozen=True)
class Signature:
    s: int
    h: bytes

    def to_bytes(self, params: ParamSet) -> bytes:
        return params.group.scalar_to_bytes(self.s) + self.h

    @classmethod
    def from_bytes(cls, params: ParamSet, data: bytes) -> "Signature":
        """Parse ``s || h``; raises :class:`DecodeError` on wrong length or non-canonical ``s``."""
        n = params.group.scalar_len
        if len(data) != n + params.digest_len:
            raise DecodeError(
                f"signature must be {n + params.digest_len} bytes, got {len(data)}"
            )
        return cls(params.group.scalar_from_bytes(data[:n]), bytes(data[n:]))


@dataclass(frozen=True, eq=False)
class PublicKey:
    params: ParamSet
    Y_table: tuple
    _table: list = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.Y_table) != self.params.t:
            raise ValueError(f"public key needs {self.params.t} elements")
        object.__setattr__(self, "_table", self.params.group.prepare_table(self.Y_table))

    def to_bytes(self) -> bytes:
        ser = self.params.group.serialize
        return b"".join(ser(Y) for Y in self.Y_table)

    @classmethod
    def from_bytes(cls, params: ParamSet, data: bytes) -> "PublicKey":
        g = params.group
        n = g.element_len
        if len(data) != n * params.t:
            raise DecodeError(f"public key body must be {n * params.t} bytes, got {len(data)}")
        return cls(params, tuple(g.deserialize(data[i : i + n]) for i in range(0, len(data), n)))

    def __eq__(self, other):
        if not isinstance(other, PublicKey):
            return NotImplemented
        return self.params.same_as(other.params) and self.to_bytes() == other.to_bytes()

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SecretKey:
    """Seed ``z``, the precomputed table ``R_table`` and, in expanded mode,
    the materialized ``x_table`` / ``r_table`` scalars."""

    params: ParamSet
    z: bytes
    R_table: tuple
    x_table: tuple | None = None
    r_table: tuple | None = None
    _table: list = field(init=False, repr=False)

    def __post_init__(self):
        p = self.params
        if len(self.z) != p.seed_len:
            raise ValueError(f"seed must be {p.seed_len} bytes")
        if len(self.R_table) != p.t:
            raise ValueError(f"R table needs {p.t} elements")
        if (self.x_table is None) != (self.r_table is None):
            raise ValueError("x_table and r_table are stored together or not at all")
        if self.x_table is not None and not (len(self.x_table) == len(self.r_table) == p.t):
            raise ValueError(f"scalar tables need {p.t} entries")
        object.__setattr__(self, "_table", p.group.prepare_table(self.R_table))

    @property
    def mode(self) -> str:
        return "seeded" if self.x_table is None else "expanded"

    def x(self, i: int) -> int:
        if self.x_table is not None:
            return self.x_table[i]
        return encoding.prf1(self.params, self.z, i)

    def r(self, i: int) -> int:
        if self.r_table is not None:
            return self.r_table[i]
        return encoding.prf2(self.params, self.z, i)

    def __eq__(self, other):
        if not isinstance(other, SecretKey):
            return NotImplemented
        g = self.params.group
        same_R = all(g.eq(a, b) for a, b in zip(self.R_table, other.R_table))
        return (
            self.params.same_as(other.params)
            and self.z == other.z
            and self.x_table == other.x_table
            and self.r_table == other.r_table
            and same_R
        )

    __hash__ = None


def keygen(params: ParamSet, seed: bytes | None = None, *, expanded: bool = False):
    """Derive ``(sk, pk)`` deterministically from a ``kappa``-bit seed.

    A fresh random seed is drawn when ``seed`` is None.  Costs ``2t`` fixed-base
    multiplications.
    """
    z = os.urandom(params.seed_len) if seed is None else bytes(seed)
    if len(z) != params.seed_len:
        raise ValueError(f"seed must be {params.seed_len} bytes, got {len(z)}")
    g = params.group
    xs = tuple(encoding.prf1(params, z, i) for i in range(params.t))
    rs = tuple(encoding.prf2(params, z, i) for i in range(params.t))
    Y = tuple(g.mul_base(x) for x in xs)
    R = tuple(g.mul_base(r) for r in rs)
    if expanded:
        sk = SecretKey(params, z, R, xs, rs)
    else:
        sk = SecretKey(params, z, R)
    return sk, PublicKey(params, Y)


def expand(sk: SecretKey) -> SecretKey:
    """Materialize ``x_table`` and ``r_table`` so signing skips PRF calls."""
    if sk.mode == "expanded":
        return sk
    p = sk.params
    xs = tuple(encoding.prf1(p, sk.z, i) for i in range(p.t))
    rs = tuple(encoding.prf2(p, sk.z, i) for i in range(p.t))
    return SecretKey(p, sk.z, sk.R_table, xs, rs)


def compress(sk: SecretKey) -> SecretKey:
    """Drop the scalar tables; they are re-derived from ``z`` on demand."""
    if sk.mode == "seeded":
        return sk
    return SecretKey(sk.params, sk.z, sk.R_table)


class SignTrace(NamedTuple):
    """Every intermediate value of one signing run."""

    commit_indexes: list
    r: int
    R: object
    h: bytes
    indexes: list
    s: int

    @property
    def signature(self) -> Signature:
        return Signature(self.s, self.h)


def sign_trace(m: bytes, sk: SecretKey) -> SignTrace:
    p = sk.params
    g = p.group
    order = g.order
    commit = encoding.h1(p, m, sk.z)
    r = sum(sk.r(i) for i in commit) % order
    R = g.sum_indexed(sk._table, commit)
    h = encoding.h2(p, R)
    idx = encoding.h3(p, m, h)
    s = (r - sum(sk.x(i) for i in idx)) % order
    return SignTrace(commit, r, R, h, idx, s)


def sign(m: bytes, sk: SecretKey) -> Signature:
    """Deterministic signature ``(s, h)`` on ``m``: ``k - 1`` additions, no scalar multiplication."""
    return sign_trace(m, sk).signature


def verify(m: bytes, sig, pk: PublicKey) -> bool:
    """Return True iff ``sig`` (a :class:`Signature` or its bytes) is valid for ``m``.

    Malformed signatures are rejected before any group work.
    """
    p = pk.params
    g = p.group
    if not isinstance(sig, Signature):
        try:
            sig = Signature.from_bytes(p, bytes(sig))
        except (DecodeError, TypeError):
            return False
    if len(sig.h) != p.digest_len or not (isinstance(sig.s, int) and 0 <= sig.s < g.order):
        return False
    idx = encoding.h3(p, m, sig.h)
    Y = g.sum_indexed(pk._table, idx)
    R = g.add(g.mul_base(sig.s), Y)
    return hmac.compare_digest(encoding.h2(p, R), sig.h)
