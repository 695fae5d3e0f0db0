"""Command-line front end.

Exit codes: 0 success / valid signature, 1 invalid signature, 2 any error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings

from . import formats
from .group import get_group
from .params import BUILTIN, SecurityWarning, builtin_params
from .scheme import keygen, sign, verify

EXIT_VALID = 0
EXIT_INVALID = 1
EXIT_ERROR = 2


class CliError(Exception):
    pass


def _params(name: str, group_id: str | None):
    group = get_group(group_id) if group_id else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SecurityWarning)
        return builtin_params(name, group)


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _write(path: str, data: bytes, as_hex: bool = False) -> None:
    if as_hex:
        data = data.hex().encode("ascii") + b"\n"
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    with open(path, "wb") as f:
        f.write(data)


def cmd_keygen(args) -> int:
    params = _params(args.params, args.group)
    seed = None
    if args.seed_hex is not None:
        try:
            seed = bytes.fromhex(args.seed_hex)
        except ValueError:
            raise CliError("--seed-hex is not valid hex") from None
        if len(seed) != params.seed_len:
            raise CliError(f"--seed-hex must be {params.seed_len} bytes")
    sk, pk = keygen(params, seed, expanded=args.expanded)
    sk_bytes = formats.secret_key_to_bytes(sk)
    pk_bytes = formats.public_key_to_bytes(pk)
    _write(args.out_prefix + ".sk", sk_bytes, args.hex)
    _write(args.out_prefix + ".pk", pk_bytes, args.hex)
    bits = params.security_bits
    flag = "" if bits >= params.kappa else f"  (below kappa={params.kappa})"
    print(f"params        {params.name} t={params.t} k={params.k} l1={params.l1} l2={params.l2} group={params.group_id}")
    print(f"security_bits {bits}{flag}")
    print(f"public key    {len(pk.to_bytes())} B payload, {len(pk_bytes)} B file")
    print(f"secret key    {len(sk_bytes) - len(formats.encode_header(params, 2, 0, 0))} B payload ({sk.mode}), {len(sk_bytes)} B file")
    print(f"signature     {params.signature_len} B")
    return EXIT_VALID


def _load(path, kind):
    try:
        key = formats.load_key(_read(path))
    except formats.FormatError as e:
        raise CliError(f"{path}: {e}") from None
    if kind == formats.KIND_SECRET and not hasattr(key, "z"):
        raise CliError(f"{path}: expected a secret key")
    if kind == formats.KIND_PUBLIC and hasattr(key, "z"):
        raise CliError(f"{path}: expected a public key")
    return key


def cmd_sign(args) -> int:
    sk = _load(args.key, formats.KIND_SECRET)
    sig = sign(_read(args.inp), sk)
    _write(args.out, sig.to_bytes(sk.params), args.hex)
    return EXIT_VALID


def cmd_verify(args) -> int:
    pk = _load(args.pub, formats.KIND_PUBLIC)
    m = _read(args.inp)
    raw = formats.maybe_unhex(_read(args.sig))
    if len(raw) != pk.params.signature_len:
        raise CliError(f"signature must be {pk.params.signature_len} bytes, got {len(raw)}")
    ok = verify(m, raw, pk)
    print("VALID" if ok else "INVALID")
    return EXIT_VALID if ok else EXIT_INVALID


def vector_material(seed: bytes, index: int, seed_len: int):
    """Derive ``(sk_seed, message)`` for vector ``index``."""
    mat = hashlib.blake2b(seed + index.to_bytes(4, "big"), person=b"aris-vectors").digest()
    msg = hashlib.blake2b(mat, person=b"aris-vec-msg").digest()
    return mat[:seed_len], msg[: mat[seed_len] % 65]


def generate_vectors(params, seed: bytes, count: int):
    """Yield one dict per test vector; fully determined by ``(params, seed, count)``."""
    for j in range(count):
        sk_seed, m = vector_material(seed, j, params.seed_len)
        sk, pk = keygen(params, sk_seed)
        sig = sign(m, sk)
        yield {
            "index": j,
            "params": params.name,
            "group": params.group_id,
            "t": params.t,
            "k": params.k,
            "l1": params.l1,
            "l2": params.l2,
            "sk_seed": sk_seed.hex(),
            "message": m.hex(),
            "signature": sig.to_bytes(params).hex(),
            "pk_sha256": hashlib.sha256(formats.public_key_to_bytes(pk)).hexdigest(),
        }


def cmd_vectors(args) -> int:
    if args.count < 0:
        raise CliError("--count must be >= 0")
    params = _params(args.params, args.group)
    lines = [json.dumps(v, sort_keys=True) + "\n" for v in generate_vectors(params, args.seed.encode(), args.count)]
    _write(args.out, "".join(lines).encode("ascii"))
    return EXIT_VALID


def cmd_inspect(args) -> int:
    try:
        info, _ = formats.decode_header(formats.maybe_unhex(_read(args.file)))
    except formats.FormatError as e:
        raise CliError(f"{args.file}: {e}") from None
    info["kind"] = {formats.KIND_PUBLIC: "public", formats.KIND_SECRET: "secret"}[info["kind"]]
    info["mode"] = "expanded" if info["mode"] else "seeded"
    for key, value in info.items():
        print(f"{key:12} {value}")
    return EXIT_VALID


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aris", description="ARIS signatures")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--params", choices=sorted(BUILTIN), required=True)
    p.add_argument("--out-prefix", required=True, help="writes PREFIX.sk and PREFIX.pk")
    p.add_argument("--seed-hex", help="kappa-bit seed in hex (random if omitted)")
    p.add_argument("--expanded", action="store_true", help="store x/r scalar tables in the secret key")
    p.add_argument("--group", help="group backend id (default ristretto255)")
    p.add_argument("--hex", action="store_true", help="write hex text instead of binary")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("sign", help="sign a file")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="inp", required=True, help="message file or -")
    p.add_argument("--out", required=True)
    p.add_argument("--hex", action="store_true")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="inp", required=True, help="message file or -")
    p.add_argument("--sig", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("vectors", help="emit deterministic JSON-lines test vectors")
    p.add_argument("--params", choices=sorted(BUILTIN), required=True)
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--seed", default="0")
    p.add_argument("--group", help="group backend id (default ristretto255)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_vectors)

    p = sub.add_parser("inspect", help="print a key file header")
    p.add_argument("file")
    p.set_defaults(func=cmd_inspect)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_VALID if e.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except Exception as e:  # exit codes are limited to 0/1/2
        print(f"aris: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
