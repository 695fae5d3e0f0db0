"""ARIS: fast multiple-time signatures from precomputed elliptic-curve tables."""

from .group import DecodeError, Group, GroupDescriptor, Ristretto255, ToyGroup, get_group
from .params import BUILTIN, ParamSet, SecurityWarning, builtin_params, security_bits
from .scheme import (
    PublicKey,
    SecretKey,
    Signature,
    SignTrace,
    compress,
    expand,
    keygen,
    sign,
    sign_trace,
    verify,
)
from .schnorr import SchnorrKeyPair, SchnorrPublicKey, schnorr_keygen, schnorr_sign, schnorr_verify

__all__ = [
    "BUILTIN", "DecodeError", "Group", "GroupDescriptor", "ParamSet", "PublicKey",
    "Ristretto255", "SchnorrKeyPair", "SchnorrPublicKey", "SecretKey", "SecurityWarning",
    "SignTrace", "Signature", "ToyGroup", "builtin_params", "compress", "expand", "get_group",
    "keygen", "schnorr_keygen", "schnorr_sign", "schnorr_verify", "security_bits", "sign",
    "sign_trace", "verify",
]
