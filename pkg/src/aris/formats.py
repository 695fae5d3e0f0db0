"""Binary key-file format.

Every key file is a header followed by a payload::

    offset  size  field
    0       4     magic  b"ARIS"
    4       1     version (1)
    5       1     kind: 1 = public key, 2 = secret key
    6       1     secret-key mode: 0 = seeded, 1 = expanded (0 for public keys)
    7       4     t        (big-endian u32)
    11      2     k        (big-endian u16)
    13      2     l1
    15      2     l2
    17      2     kappa
    19      1     len(group_id), then group_id (ascii)
    ..      1     len(name), then parameter-set name (ascii)
    ..      4     payload length (big-endian u32)
    ..            payload

Public-key payload: ``t`` serialized elements ``Y_0 .. Y_{t-1}``.
Secret-key payload: seed ``z`` (kappa/8 bytes), ``t`` serialized elements
``R_0 .. R_{t-1}``, then in expanded mode ``t`` scalars ``x_i`` followed by
``t`` scalars ``r_i``.

Signatures have no header: ``s`` (scalar_len bytes, little-endian) then
``h`` (l2/8 bytes).  Any of these may be stored hex-encoded instead; readers
accept both.
"""

from __future__ import annotations

import string
import struct
import warnings

from .group import DecodeError, get_group
from .params import BUILTIN, ParamSet, SecurityWarning
from .scheme import PublicKey, SecretKey

MAGIC = b"ARIS"
VERSION = 1
KIND_PUBLIC = 1
KIND_SECRET = 2

_FIXED = struct.Struct(">4sBBBIHHHH")
_HEXCHARS = set(string.hexdigits.encode() + b" \r\n\t")


class FormatError(ValueError):
    pass


def maybe_unhex(data: bytes) -> bytes:
    """Return ``data`` decoded from hex if it is hex text, else unchanged."""
    if data.startswith(MAGIC):
        return data
    stripped = bytes(data).strip()
    if stripped and set(stripped) <= _HEXCHARS:
        try:
            return bytes.fromhex(stripped.decode("ascii"))
        except ValueError:
            pass
    return data


def encode_header(params: ParamSet, kind: int, mode: int, payload_len: int) -> bytes:
    gid = params.group_id.encode("ascii")
    name = params.name.encode("ascii")
    return (
        _FIXED.pack(MAGIC, VERSION, kind, mode, params.t, params.k, params.l1, params.l2, params.kappa)
        + bytes((len(gid),))
        + gid
        + bytes((len(name),))
        + name
        + struct.pack(">I", payload_len)
    )


def decode_header(data: bytes):
    """Parse a header; returns ``(info dict, payload bytes)``."""
    if len(data) < _FIXED.size:
        raise FormatError("file too short for header")
    magic, version, kind, mode, t, k, l1, l2, kappa = _FIXED.unpack_from(data)
    if magic != MAGIC:
        raise FormatError("bad magic")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    if kind not in (KIND_PUBLIC, KIND_SECRET):
        raise FormatError(f"unknown key kind {kind}")
    if mode not in (0, 1) or (kind == KIND_PUBLIC and mode):
        raise FormatError(f"bad mode byte {mode}")
    pos = _FIXED.size
    try:
        n = data[pos]
        gid = data[pos + 1 : pos + 1 + n].decode("ascii")
        pos += 1 + n
        n = data[pos]
        name = data[pos + 1 : pos + 1 + n].decode("ascii")
        pos += 1 + n
        (plen,) = struct.unpack_from(">I", data, pos)
    except (IndexError, struct.error, UnicodeDecodeError):
        raise FormatError("truncated header") from None
    pos += 4
    payload = data[pos:]
    if len(payload) != plen:
        raise FormatError(f"payload is {len(payload)} bytes, header says {plen}")
    info = dict(kind=kind, mode=mode, t=t, k=k, l1=l1, l2=l2, kappa=kappa, group_id=gid, name=name, payload_len=plen)
    return info, payload


def params_from_info(info, group=None) -> ParamSet:
    if group is None:
        try:
            group = get_group(info["group_id"])
        except ValueError as e:
            raise FormatError(str(e)) from None
    elif group.group_id != info["group_id"]:
        raise FormatError(f"group mismatch: file uses {info['group_id']}, expected {group.group_id}")
    knobs = BUILTIN.get(info["name"])
    if knobs is not None and any(info[f] != v for f, v in knobs.items()):
        raise FormatError(f"header disagrees with built-in parameter set {info['name']!r}")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SecurityWarning)
            return ParamSet(
                t=info["t"], k=info["k"], l1=info["l1"], l2=info["l2"],
                kappa=info["kappa"], group=group, name=info["name"],
            )
    except ValueError as e:
        raise FormatError(str(e)) from None


def public_key_to_bytes(pk: PublicKey) -> bytes:
    body = pk.to_bytes()
    return encode_header(pk.params, KIND_PUBLIC, 0, len(body)) + body


def secret_key_to_bytes(sk: SecretKey) -> bytes:
    g = sk.params.group
    parts = [sk.z]
    parts += [g.serialize(R) for R in sk.R_table]
    if sk.mode == "expanded":
        parts += [g.scalar_to_bytes(x) for x in sk.x_table]
        parts += [g.scalar_to_bytes(r) for r in sk.r_table]
    body = b"".join(parts)
    return encode_header(sk.params, KIND_SECRET, int(sk.mode == "expanded"), len(body)) + body


def _split(body: bytes, size: int, count: int, at: int):
    return [body[at + i * size : at + (i + 1) * size] for i in range(count)], at + size * count


def load_key(data: bytes, group=None):
    """Parse a public or secret key file (binary or hex)."""
    info, body = decode_header(maybe_unhex(data))
    params = params_from_info(info, group)
    g = params.group
    t = params.t
    try:
        if info["kind"] == KIND_PUBLIC:
            return PublicKey.from_bytes(params, body)
        expect = params.seed_len + t * g.element_len
        if info["mode"]:
            expect += 2 * t * g.scalar_len
        if len(body) != expect:
            raise FormatError(f"secret key payload must be {expect} bytes, got {len(body)}")
        z = body[: params.seed_len]
        elems, at = _split(body, g.element_len, t, params.seed_len)
        R = tuple(g.deserialize(e) for e in elems)
        if not info["mode"]:
            return SecretKey(params, z, R)
        xs, at = _split(body, g.scalar_len, t, at)
        rs, at = _split(body, g.scalar_len, t, at)
        return SecretKey(
            params, z, R,
            tuple(g.scalar_from_bytes(x) for x in xs),
            tuple(g.scalar_from_bytes(r) for r in rs),
        )
    except DecodeError as e:
        raise FormatError(str(e)) from None
