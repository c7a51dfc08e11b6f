"""Schnorr signatures on the Gaudry-Schost Jacobian over GF(2^127 - 1).

Scalar multiplications run Project, pseudomultiply on the fast Kummer and
Recover through :mod:`kummerlift.chain`.  Every scalar m is replaced by
m' = (m mod N) + 3N, which always has 252 bits.  A cofactor multiple 16z
is the 256-bit scalar z with four zero bits appended, so its ladder runs
four more steps than that of z.

Hash outputs and secret strings are read as little-endian integers.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .chain import PointError, _noop, ladder_mul, two_dim_mul
from .codec import (
    EncodingError,
    decode_point_256,
    decode_sig_512,
    encode_point_256,
    encode_scalar_256,
    jac_compress,
    jac_decompress,
)
from .fastkummer import GS_COFACTOR, GS_N, FastKummerBackend, FastKummerParams, gaudry_schost
from .field import FieldContext, OpCounter
from .genus2 import IDENTITY, MumfordPoint, cantor_add, jac_mul, point_from_x

GENERATOR_DOMAIN = b"kummerlift generator"
SCALAR_BITS = 252


def sha512(data: bytes) -> bytes:
    return hashlib.sha512(data).digest()


@dataclass(frozen=True)
class SchemeParams:
    kummer: FastKummerParams
    P: MumfordPoint
    N: int = GS_N
    cofactor: int = GS_COFACTOR
    hash: Callable[[bytes], bytes] = field(default=sha512, compare=False)
    hash_name: str = "sha512"

    @property
    def curve(self):
        return self.kummer.curve

    @property
    def q(self) -> int:
        return self.kummer.q

    def backend(self) -> FastKummerBackend:
        return FastKummerBackend(self.kummer)


@dataclass(frozen=True)
class KeyPair:
    d: bytes
    d1: int
    d2: bytes
    Q: MumfordPoint
    public: bytes


def derive_generator(K: FastKummerParams, N: int = GS_N, cofactor: int = GS_COFACTOR) -> MumfordPoint:
    """Hash a counter to an x-coordinate, lift, clear the cofactor, check order N.

    Two lifted special points are added so the result is generic.
    """
    curve, q = K.curve, K.q
    pts = []
    ctr = 0
    while True:
        x = int.from_bytes(sha512(GENERATOR_DOMAIN + ctr.to_bytes(4, "little")), "little") % q
        ctr += 1
        S = point_from_x(curve, x)
        if S is None or not S.b:
            continue
        pts.append(S)
        if len(pts) < 2:
            continue
        G = jac_mul(curve, cofactor, cantor_add(curve, *pts))
        pts = []
        if G.tag != "generic" or not G.b:
            continue
        if jac_mul(curve, N, G) == IDENTITY:
            return G


@lru_cache(maxsize=None)
def default_params() -> SchemeParams:
    K = gaudry_schost()
    return SchemeParams(K, derive_generator(K))


def clamp_scalar(m: int, N: int = GS_N) -> int:
    """(m mod N) + 3N: congruent to m and exactly 252 bits."""
    if m < 0:
        raise ValueError("scalar must be non-negative")
    return m % N + 3 * N


def _le(b: bytes) -> int:
    return int.from_bytes(b, "little")


def mul_by_16z(z: int, P: MumfordPoint, params: SchemeParams, ctx=None, setup=None, trace=_noop) -> MumfordPoint:
    """[16 z]P for clamped z: the 256-bit ladder on z followed by four zero bits."""
    if z.bit_length() != SCALAR_BITS:
        raise ValueError("z must be clamped")
    return ladder_mul(params.cofactor * z, P, params.backend(), ctx, setup, SCALAR_BITS + 4, trace)


def keygen(d: bytes, params: SchemeParams | None = None, ctx=None, setup=None) -> KeyPair:
    params = params or default_params()
    if len(d) != 32:
        raise ValueError("secret key must be 32 bytes")
    hd = params.hash(d)
    d1, d2 = _le(hd[:32]), hd[32:]
    Q = mul_by_16z(clamp_scalar(d1, params.N), params.P, params, ctx, setup)
    return KeyPair(d, d1, d2, Q, encode_point_256(jac_compress(FieldContext(params.q), params.curve, Q)))


def sign(message: bytes, key: KeyPair, params: SchemeParams | None = None, ctx=None, setup=None, trace=_noop) -> bytes:
    params = params or default_params()
    N = params.N
    r = _le(params.hash(key.d2 + message))
    R = ladder_mul(clamp_scalar(r, N), params.P, params.backend(), ctx, setup, SCALAR_BITS, trace)
    Renc = encode_point_256(jac_compress(FieldContext(params.q), params.curve, R))
    h = _le(params.hash(Renc + key.public + message))
    s = (r - params.cofactor * h * key.d1) % N
    return Renc + encode_scalar_256(s, N)


def decode_public(data: bytes, params: SchemeParams) -> MumfordPoint:
    return jac_decompress(FieldContext(params.q), params.curve, decode_point_256(data))


def verify(
    message: bytes,
    sig: bytes,
    public: bytes,
    params: SchemeParams | None = None,
    ctx=None,
    setup=None,
    rhs_ctx=None,
) -> bool:
    """[16 s']P + [16 h']Q == [16]R with primed scalars clamped.

    The left side is one two-dimensional chain over 256-bit scalars, the
    right side the ladder on 16, tallied in ``rhs_ctx`` when given.
    Malformed input rejects.
    """
    params = params or default_params()
    N = params.N
    try:
        Rc, s = decode_sig_512(sig, N)
        R = jac_decompress(FieldContext(params.q), params.curve, Rc)
        Q = decode_public(public, params)
    except (EncodingError, ValueError):
        return False
    h = _le(params.hash(sig[:32] + public + message))
    c = params.cofactor
    backend = params.backend()
    try:
        lhs = two_dim_mul(c * clamp_scalar(s, N), c * clamp_scalar(h, N), params.P, Q, backend, ctx, setup, SCALAR_BITS + 4)
        rhs = ladder_mul(c, R, backend, rhs_ctx or ctx, setup)
    except (PointError, ArithmeticError):
        return False
    return lhs == rhs


def operation_counts(params: SchemeParams | None = None, seed: bytes = b"\x07" * 32, message: bytes = b"count"):
    """Counters of keygen, sign and verify on fixed inputs.

    Difference preparation goes to a separate setup counter, returned too.
    The "verify" entry is the multiscalar side; "verify-16R" the ladder on R.
    """
    params = params or default_params()
    q = params.q
    out = {}
    ctx, setup = FieldContext(q), FieldContext(q)
    key = keygen(seed, params, ctx, setup)
    out["keygen"] = (ctx.counter, setup.counter)
    ctx, setup = FieldContext(q), FieldContext(q)
    sig = sign(message, key, params, ctx, setup)
    out["sign"] = (ctx.counter, setup.counter)
    ctx, setup, rhs = FieldContext(q), FieldContext(q), FieldContext(q)
    if not verify(message, sig, key.public, params, ctx, setup, rhs):
        raise AssertionError("honest signature rejected")
    out["verify"] = (ctx.counter, setup.counter)
    out["verify-16R"] = (rhs.counter, OpCounter())
    return out
