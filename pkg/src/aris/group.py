"""Prime-order group backends.

Two backends share one interface:

* :class:`ToyGroup` -- the additive group of integers modulo a small prime,
  generator 1.  Every equation can be checked by hand and discrete logs can
  be brute forced, which makes it the oracle backend for tests.
* :class:`Ristretto255` -- the ristretto255 prime-order group built on
  edwards25519, used for real keys.

Scalars are plain Python ints reduced modulo ``order``.  Elements are opaque
to callers; compare them with :meth:`Group.eq` and move them across trust
boundaries with :meth:`Group.serialize` / :meth:`Group.deserialize`.

Every backend instance counts scalar multiplications and additions.  The
counters are what the structural cost checks in the test-suite and the
benchmark harness read.  Arithmetic is not constant-time.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass

try:
    from gmpy2 import powmod as _gmp_powmod

    def _powmod(b, e, m):
        return int(_gmp_powmod(b, e, m))

except ImportError:  # pragma: no cover
    _powmod = pow


class DecodeError(ValueError):
    """Raised when bytes do not encode a canonical group element or scalar."""


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin with random bases."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class GroupDescriptor:
    group_id: str
    order: int
    element_len: int
    scalar_len: int

    def __post_init__(self):
        if not is_probable_prime(self.order):
            raise ValueError(f"group order of {self.group_id!r} is not prime")


class Group:
    """Common interface and instrumentation for prime-order groups.

    Subclasses provide ``_add``, ``_neg``, ``_mul``, ``eq``, ``serialize``,
    ``deserialize``, ``identity`` and ``generator``.
    """

    descriptor: GroupDescriptor
    #: byte length accepted by :meth:`scalar_from_wide_bytes` from hash/PRF output
    wide_len = 64

    def __init__(self):
        self._lock = threading.Lock()
        self._muls = 0
        self._adds = 0

    # -- instrumentation -------------------------------------------------
    def snapshot(self) -> tuple[int, int]:
        """Return ``(scalar_mul_count, add_count)`` since the last reset."""
        with self._lock:
            return self._muls, self._adds

    def reset_counters(self) -> None:
        with self._lock:
            self._muls = 0
            self._adds = 0

    # -- descriptor shortcuts --------------------------------------------
    @property
    def group_id(self) -> str:
        return self.descriptor.group_id

    @property
    def order(self) -> int:
        return self.descriptor.order

    @property
    def element_len(self) -> int:
        return self.descriptor.element_len

    @property
    def scalar_len(self) -> int:
        return self.descriptor.scalar_len

    # -- counted group operations ----------------------------------------
    def scalar_mul(self, x: int, E):
        """Return ``x*E``; counts one scalar multiplication."""
        with self._lock:
            self._muls += 1
        return self._mul(x % self.order, E)

    def mul_base(self, x: int):
        """Return ``x*P`` for the fixed generator; counts one scalar multiplication.

        Backends may use precomputed tables here.
        """
        with self._lock:
            self._muls += 1
        return self._mul_base(x % self.order)

    def add(self, A, B):
        """Return ``A+B``; counts one addition."""
        with self._lock:
            self._adds += 1
        return self._add(A, B)

    def neg(self, A):
        return self._neg(A)

    def sum(self, elements):
        """Add a non-empty sequence of elements; ``len - 1`` counted additions."""
        it = iter(elements)
        acc = next(it)
        n = 0
        for e in it:
            acc = self._add(acc, e)
            n += 1
        with self._lock:
            self._adds += n
        return acc

    def prepare_table(self, elements) -> list:
        """Convert a fixed table of elements to the backend's fastest summing form."""
        return list(elements)

    def sum_indexed(self, table, indexes):
        """Sum ``table[i]`` over ``indexes`` (a multiset); ``len - 1`` counted additions.

        ``table`` must come from :meth:`prepare_table`.
        """
        return self.sum([table[i] for i in indexes])

    def _mul_base(self, x: int):
        return self._mul(x, self.generator)

    # -- scalars ---------------------------------------------------------
    def scalar_add(self, a: int, b: int) -> int:
        return (a + b) % self.order

    def scalar_sub(self, a: int, b: int) -> int:
        return (a - b) % self.order

    def scalar_from_wide_bytes(self, b: bytes) -> int:
        """Reduce a little-endian byte string modulo the group order.

        Fed with :attr:`wide_len` uniform bytes the result is within
        statistical distance ``order / 2**(8*wide_len)`` of uniform.
        """
        return int.from_bytes(b, "little") % self.order

    def scalar_to_bytes(self, x: int) -> bytes:
        return (x % self.order).to_bytes(self.scalar_len, "little")

    def scalar_from_bytes(self, b: bytes) -> int:
        """Parse a canonical scalar; rejects wrong lengths and values >= order."""
        if len(b) != self.scalar_len:
            raise DecodeError(f"scalar must be {self.scalar_len} bytes, got {len(b)}")
        x = int.from_bytes(b, "little")
        if x >= self.order:
            raise DecodeError("non-canonical scalar")
        return x

    def __repr__(self):
        return f"{type(self).__name__}()"


class ToyGroup(Group):
    """Integers modulo a small prime under addition, generator ``1``.

    ``scalar_mul(x, E)`` is ``x*E mod p`` so the discrete log of ``E`` is ``E``
    itself.  Insecure by design.
    """

    def __init__(self, p: int = 101):
        super().__init__()
        n = (p.bit_length() + 7) // 8
        self.descriptor = GroupDescriptor(f"toy{p}", p, n, n)
        self.identity = 0
        self.generator = 1

    def _mul(self, x, E):
        return x * E % self.order

    def _add(self, A, B):
        return (A + B) % self.order

    def _neg(self, A):
        return -A % self.order

    def eq(self, A, B) -> bool:
        return A == B

    def serialize(self, E) -> bytes:
        return E.to_bytes(self.element_len, "little")

    def deserialize(self, b: bytes) -> int:
        if len(b) != self.element_len:
            raise DecodeError(f"element must be {self.element_len} bytes, got {len(b)}")
        v = int.from_bytes(b, "little")
        if v >= self.order:
            raise DecodeError("non-canonical element")
        return v

    def __repr__(self):
        return f"ToyGroup(p={self.order})"


# ---------------------------------------------------------------------------
# ristretto255

_Q = 2**255 - 19
_L = 2**252 + 27742317777372353535851937790883648493
_D = -121665 * pow(121666, -1, _Q) % _Q
_D2 = 2 * _D % _Q
_SQRT_M1 = pow(2, (_Q - 1) // 4, _Q)
_INV2 = (_Q + 1) // 2
_INVSQRT_A_MINUS_D = 54469307008909316920995813868745141605393597292927456921205312896311721017578

_BASE_Y = 4 * pow(5, -1, _Q) % _Q
_BASE_X = 15112221349535400772501151409588531511454012693041857206046113283949847762202


def _is_neg(x: int) -> int:
    return x & 1


def _abs(x: int) -> int:
    return _Q - x if x & 1 else x


def _sqrt_ratio_m1(u: int, v: int) -> tuple[bool, int]:
    q = _Q
    v3 = v * v % q * v % q
    v7 = v3 * v3 % q * v % q
    r = u * v3 % q * _powmod(u * v7 % q, (q - 5) // 8, q) % q
    check = v * r % q * r % q
    correct = check == u % q
    flipped = check == -u % q
    flipped_i = check == -u * _SQRT_M1 % q
    if flipped or flipped_i:
        r = r * _SQRT_M1 % q
    return correct or flipped, _abs(r)


def _ext_add(P1, P2):
    q = _Q
    X1, Y1, Z1, T1 = P1
    X2, Y2, Z2, T2 = P2
    a = (Y1 - X1) * (Y2 - X2) % q
    b = (Y1 + X1) * (Y2 + X2) % q
    c = T1 * _D2 % q * T2 % q
    d = 2 * Z1 * Z2 % q
    e, f, g, h = b - a, d - c, d + c, b + a
    return (e * f % q, g * h % q, f * g % q, e * h % q)


def _ext_madd(P1, N):
    """Add an extended point and a precomputed ``(y+x, y-x, 2dxy)`` affine point."""
    q = _Q
    X1, Y1, Z1, T1 = P1
    ypx, ymx, xy2d = N
    a = (Y1 - X1) * ymx % q
    b = (Y1 + X1) * ypx % q
    c = T1 * xy2d % q
    d = 2 * Z1
    e, f, g, h = b - a, d - c, d + c, b + a
    return (e * f % q, g * h % q, f * g % q, e * h % q)


def _ext_double(P):
    q = _Q
    X1, Y1, Z1, _ = P
    a = X1 * X1 % q
    b = Y1 * Y1 % q
    c = 2 * Z1 * Z1 % q
    h = a + b
    e = h - (X1 + Y1) * (X1 + Y1) % q
    g = a - b
    f = c + g
    return (e * f % q, g * h % q, f * g % q, e * h % q)


def _ext_neg(P):
    X, Y, Z, T = P
    return (-X % _Q, Y, Z, -T % _Q)


_IDENTITY = (0, 1, 1, 0)
_BASE = (_BASE_X, _BASE_Y, 1, _BASE_X * _BASE_Y % _Q)


def _batch_to_niels(points):
    """Normalize extended points to ``(y+x, y-x, 2dxy)`` with one inversion."""
    q = _Q
    prefix = []
    acc = 1
    for P in points:
        prefix.append(acc)
        acc = acc * P[2] % q
    inv = _powmod(acc, q - 2, q)
    out = [None] * len(points)
    for i in range(len(points) - 1, -1, -1):
        X, Y, Z, _ = points[i]
        zi = inv * prefix[i] % q
        inv = inv * Z % q
        x, y = X * zi % q, Y * zi % q
        out[i] = ((y + x) % q, (y - x) % q, x * y % q * _D2 % q)
    return out


class Ristretto255(Group):
    """The ristretto255 group: prime order ``2**252 + 2774...8493``, 32-byte encodings.

    Elements are edwards25519 points in extended coordinates ``(X, Y, Z, T)``;
    two representatives of the same ristretto element compare equal under
    :meth:`eq` and serialize identically.

    Fixed-base multiplication uses a comb of ``256 / window`` precomputed
    tables, built lazily on first use and shared by all instances.
    """

    window = 4
    _comb = None
    _comb_lock = threading.Lock()

    def __init__(self):
        super().__init__()
        self.descriptor = GroupDescriptor("ristretto255", _L, 32, 32)
        self.identity = _IDENTITY
        self.generator = _BASE

    # -- arithmetic ------------------------------------------------------
    def _add(self, A, B):
        return _ext_add(A, B)

    def _neg(self, A):
        return _ext_neg(A)

    def _mul(self, x, E):
        # width-4 fixed window, table of 0..15 multiples
        if x == 0:
            return _IDENTITY
        table = [_IDENTITY, E]
        for _ in range(14):
            table.append(_ext_add(table[-1], E))
        acc = _IDENTITY
        nbits = x.bit_length()
        top = (nbits + 3) // 4 * 4
        for shift in range(top - 4, -1, -4):
            acc = _ext_double(_ext_double(_ext_double(_ext_double(acc))))
            digit = (x >> shift) & 15
            if digit:
                acc = _ext_add(acc, table[digit])
        return acc

    @classmethod
    def _comb_tables(cls):
        if cls._comb is None:
            with cls._comb_lock:
                if cls._comb is None:
                    w = cls.window
                    size = 1 << w
                    points = []
                    base = _BASE
                    for _ in range((256 + w - 1) // w):
                        row = [base]
                        for _ in range(size - 2):
                            row.append(_ext_add(row[-1], base))
                        points.extend(row)
                        nxt = _ext_add(row[-1], base)
                        base = nxt
                    flat = _batch_to_niels(points)
                    step = size - 1
                    cls._comb = [[None] + flat[i : i + step] for i in range(0, len(flat), step)]
        return cls._comb

    def _mul_base(self, x):
        tables = self._comb_tables()
        w = self.window
        mask = (1 << w) - 1
        acc = _IDENTITY
        i = 0
        while x:
            digit = x & mask
            if digit:
                acc = _ext_madd(acc, tables[i][digit])
            x >>= w
            i += 1
        return acc

    def prepare_table(self, elements) -> list:
        return _batch_to_niels(list(elements))

    def sum_indexed(self, table, indexes):
        it = iter(indexes)
        ypx, ymx, xy2d = table[next(it)]
        q = _Q
        x = (ypx - ymx) * _INV2 % q
        y = (ypx + ymx) * _INV2 % q
        acc = (x, y, 1, x * y % q)
        n = 0
        for i in it:
            acc = _ext_madd(acc, table[i])
            n += 1
        with self._lock:
            self._adds += n
        return acc

    # -- equality and encoding -------------------------------------------
    def eq(self, A, B) -> bool:
        X1, Y1, _, _ = A
        X2, Y2, _, _ = B
        q = _Q
        return (X1 * Y2 - Y1 * X2) % q == 0 or (Y1 * Y2 - X1 * X2) % q == 0

    def serialize(self, E) -> bytes:
        q = _Q
        X0, Y0, Z0, T0 = E
        u1 = (Z0 + Y0) * (Z0 - Y0) % q
        u2 = X0 * Y0 % q
        _, invsqrt = _sqrt_ratio_m1(1, u1 * u2 % q * u2 % q)
        den1 = invsqrt * u1 % q
        den2 = invsqrt * u2 % q
        z_inv = den1 * den2 % q * T0 % q
        if _is_neg(T0 * z_inv % q):
            x, y = Y0 * _SQRT_M1 % q, X0 * _SQRT_M1 % q
            den_inv = den1 * _INVSQRT_A_MINUS_D % q
        else:
            x, y = X0, Y0
            den_inv = den2
        if _is_neg(x * z_inv % q):
            y = -y % q
        s = _abs(den_inv * (Z0 - y) % q)
        return s.to_bytes(32, "little")

    def deserialize(self, b: bytes):
        if len(b) != 32:
            raise DecodeError(f"element must be 32 bytes, got {len(b)}")
        q = _Q
        s = int.from_bytes(b, "little")
        if s >= q or _is_neg(s):
            raise DecodeError("non-canonical element encoding")
        ss = s * s % q
        u1 = (1 - ss) % q
        u2 = (1 + ss) % q
        u2_sqr = u2 * u2 % q
        v = (-(_D * u1 % q * u1) - u2_sqr) % q
        was_square, invsqrt = _sqrt_ratio_m1(1, v * u2_sqr % q)
        den_x = invsqrt * u2 % q
        den_y = invsqrt * den_x % q * v % q
        x = _abs(2 * s * den_x % q)
        y = u1 * den_y % q
        t = x * y % q
        if not was_square or _is_neg(t) or y == 0:
            raise DecodeError("bytes do not encode a ristretto255 element")
        return (x, y, 1, t)

    def __repr__(self):
        return "Ristretto255()"


_BACKENDS = {
    "ristretto255": Ristretto255,
}


def get_group(group_id: str) -> Group:
    """Return a fresh backend instance (own counters) for ``group_id``."""
    if group_id.startswith("toy"):
        try:
            return ToyGroup(int(group_id[3:]))
        except ValueError:
            pass
    try:
        return _BACKENDS[group_id]()
    except KeyError:
        raise ValueError(f"unknown group {group_id!r}") from None
