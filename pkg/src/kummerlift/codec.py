"""Point compression in genus 2 and the byte layouts of the signature scheme.

Kummer points compress to (k2, k3, bit) where (1 : k2 : k3 : k4) is the
normalized point and ``bit`` picks the root k4 of the surface equation.
Fast Kummer points go through ``tau^-1`` first.  Jacobian points compress to
(a1, a0, bit1, bit0) following Stahlke.

The Kummer routines need a curve of Rosenhain shape (f0 = f6 = 0, f5 = 1)
and q = 3 mod 4.  Curve constants count as full multiplications here.

With K1 = -2 k1' the root is k4 = (k1' +- r) / K2 where
r^2 = k1'^2 - K0 K2, so the sign bit of 2 K2 k4 + K1 is that of 2r.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import NONSQUARE, FieldContext, FieldError, NonSquareError, ZeroDivision
from .genus2 import Genus2Curve, MumfordPoint, jac_validate

MERSENNE127 = (1 << 127) - 1


class EncodingError(ValueError):
    """Malformed or invalid encoding."""


@dataclass(frozen=True)
class CompressedKummer:
    k2: int
    k3: int
    bit: int


@dataclass(frozen=True)
class CompressedMumford:
    a1: int
    a0: int
    bit1: int
    bit0: int


def _require_rosenhain(curve: Genus2Curve) -> None:
    if not curve.is_rosenhain_shape:
        raise FieldError("Kummer compression is implemented for Rosenhain-shaped curves")


def _k1_half(F: FieldContext, f: tuple, k2: int, k3: int):
    """k1' = -K1/2 with K1 = K1(1, k2, k3), plus k2 k3 and k3^2: 6M + 1S + 5a."""
    _, f1, f2, f3, f4 = f[:5]
    k2k3 = F.mul(k2, k3)
    k3k3 = F.sqr(k3)
    t = F.add(F.mul(f2, k3), F.mul(f4, k3k3))
    t = F.add(t, t)
    t = F.add(t, F.mul(f1, k2))
    t = F.add(t, F.mul(f3, k2k3))
    t = F.add(t, F.mul(k2k3, k3))
    return t, k2k3, k3k3


def _k2(F: FieldContext, k2k2: int, k3: int) -> int:
    """K2(1, k2, k3) = k2^2 - 4 k3: 3a."""
    t = F.add(k3, k3)
    return F.sub(k2k2, F.add(t, t))


def gk_compress(F: FieldContext, curve: Genus2Curve, xi: tuple) -> CompressedKummer:
    """(k2, k3, bit): 3M + 1I to normalize, then 7M + 2S + 10a for the bit."""
    _require_rosenhain(curve)
    try:
        inv = F.inv(xi[0])
    except ZeroDivision as exc:
        raise EncodingError("xi1 = 0: point is not in the compressible chart") from exc
    k2, k3, k4 = F.mul(xi[1], inv), F.mul(xi[2], inv), F.mul(xi[3], inv)
    K2 = _k2(F, F.sqr(k2), k3)
    if K2 == 0:
        raise EncodingError("K2 vanishes: k4 is not determined by a square root")
    h, _, _ = _k1_half(F, curve.f, k2, k3)
    w = F.sub(F.mul(K2, k4), h)
    return CompressedKummer(k2, k3, F.sign_bit(F.add(w, w)))


def _k0(F: FieldContext, f: tuple, k2: int, k3: int, k2k2: int, k3k3: int) -> int:
    """K0(1, k2, k3) on a Rosenhain-shaped curve: 6M + 7a."""
    q = F.q
    _, f1, f2, f3, f4 = f[:5]
    c0 = f1 * f1 % q
    c1 = -2 * f1 * f3 % q
    c2 = -4 * f1 * f4 % q
    c3 = (f3 * f3 + 2 * f1 - 4 * f2 * f4) % q
    c4 = -4 * f1 % q
    c5 = -4 * f2 % q
    c6 = -2 * f3 % q
    lo = F.add(F.add(c1, F.mul(c2, k2)), F.mul(c4, k2k2))
    hi = F.add(F.add(F.add(c3, F.mul(c5, k2)), F.mul(c6, k3)), k3k3)
    return F.add(F.add(c0, F.mul(k3, lo)), F.mul(k3k3, hi))


def gk_decompress(F: FieldContext, curve: Genus2Curve, c: CompressedKummer) -> tuple:
    """(1 : k2 : k3 : k4): 18M + 4S + 19a + 1E."""
    _require_rosenhain(curve)
    k2, k3 = c.k2, c.k3
    k2k2 = F.sqr(k2)
    K2 = _k2(F, k2k2, k3)
    if K2 == 0:
        raise EncodingError("K2 vanishes")
    h, _, k3k3 = _k1_half(F, curve.f, k2, k3)
    K0 = _k0(F, curve.f, k2, k3, k2k2, k3k3)
    disc = F.sub(F.sqr(h), F.mul(K0, K2))
    if disc == 0:
        raise EncodingError("double root: point is a two-torsion image")
    try:
        r, inv = F.simultaneous_inv_sqrt(disc, K2)
    except NonSquareError as exc:
        raise EncodingError("no point with these coordinates") from exc
    flip = F.sign_bit(F.add(r, r)) ^ c.bit
    r = F.cselect(flip, r, F.neg(r))
    return (1, k2, k3, F.mul(F.add(h, r), inv))


def fk_compress(F: FieldContext, K, x: tuple) -> CompressedKummer:
    """Through the general Kummer: 25M + 2S + 22a + 1I."""
    from .fastkummer import tau_inverse

    return gk_compress(F, K.curve, tau_inverse(F, K, x, True))


def fk_decompress(F: FieldContext, K, c: CompressedKummer) -> tuple:
    """Through the general Kummer: 33M + 4S + 31a + 1E."""
    from .fastkummer import tau

    return tau(F, K, gk_decompress(F, K.curve, c))


# ---------------------------------------------------------------------------
# Jacobian points


def jac_compress(F: FieldContext, curve: Genus2Curve, P: MumfordPoint) -> CompressedMumford:
    """(a1, a0, bit1, bit0): 3M + 1S + 4a.

    bit1 is the parity of 4(a1 b1 b0 - a0 b1^2 - b0^2), bit0 that of b1.
    """
    if P.tag != "generic":
        raise EncodingError("only generic points compress")
    a1, a0, b1, b0 = P.coords
    z = F.mul(F.sub(F.mul(a1, b0), F.mul(a0, b1)), b1)
    z = F.sub(z, F.sqr(b0))
    z = F.add(z, z)
    z = F.add(z, z)
    return CompressedMumford(a1, a0, F.sign_bit(z), F.sign_bit(b1))


def jac_decompress(F: FieldContext, curve: Genus2Curve, c: CompressedMumford) -> MumfordPoint:
    """Inverse of :func:`jac_compress`.

    Rosenhain-shaped curves: 18M + 4S + 24a + 2E.  Other curves take the
    general route in :func:`jac_decompress_general`.
    """
    if not curve.is_rosenhain_shape:
        return jac_decompress_general(F, curve, c)
    q = F.q
    a1, a0 = c.a1, c.a0
    if not (0 <= a1 < q and 0 <= a0 < q):
        raise EncodingError("coordinates out of range")
    _, f1, f2, f3, f4 = curve.f[:5]
    two_f2 = 2 * f2 % q

    s = F.sqr(a1)
    two_a0 = F.add(a0, a0)
    u = F.sub(s, two_a0)  # a1^2 - 2 a0
    A = F.sub(u, two_a0)  # a1^2 - 4 a0
    s_a0 = F.sub(s, a0)  # a1^2 - a0
    if A == 0:
        raise EncodingError("a-polynomial has a double root")

    # C = cin^2, and b0 (2 b1) = cin + a1 z1 later
    cin = F.add(F.mul(a0, F.sub(F.sub(F.mul(f4, a1), f3), s_a0)), f1)
    C = F.sqr(cin)
    # Bh = B/2 = a0 (f3 a1 - 2 f2 + a1 (a1^2 - 3 a0) - f4 (a1^2 - 2 a0)) + a1 f1
    t = F.add(F.sub(F.mul(f3, a1), two_f2), F.mul(a1, F.sub(u, a0)))
    Bh = F.add(F.mul(a0, F.sub(t, F.mul(f4, u))), F.mul(a1, f1))

    # z0 = 2 r with r^2 = Bh^2 - A C; z1 = (z0 - B) / (2A) = (r - Bh) / A
    disc = F.sub(F.sqr(Bh), F.mul(A, C))
    try:
        r, invA = F.simultaneous_inv_sqrt(disc, A)
    except (NonSquareError, ZeroDivision) as exc:
        raise EncodingError("no point with these coordinates") from exc
    flip = F.sign_bit((2 * r) % q) ^ c.bit1
    r = F.cselect(flip, r, F.neg(r))
    z1 = F.mul(F.sub(r, Bh), invA)

    # b1^2 = f4 (a1^2 - a0) - a1 (f3 + a1^2 - 2 a0) + f2 + z1
    t = F.sub(F.mul(f4, s_a0), F.mul(a1, F.add(f3, u)))
    t = F.add(F.add(t, f2), z1)
    num = F.add(cin, F.mul(a1, z1))

    # rr = 1/sqrt(4t) = 1/(2 b1) gives b1 = 2t rr and b0 = num rr
    t2 = F.add(t, t)
    rr = F.inv_sqrt(F.add(t2, t2))
    if rr is NONSQUARE:
        raise EncodingError("no point with these coordinates")
    b1 = F.mul(t2, rr)
    flip = F.sign_bit(b1) ^ c.bit0
    rr = F.cselect(flip, rr, F.neg(rr))
    b1 = F.cselect(flip, b1, F.neg(b1))
    P = MumfordPoint.generic(a1, a0, b1, F.mul(num, rr))
    if jac_validate(curve, P) != "generic":
        raise EncodingError("decoded point is not on the Jacobian")
    return P


def _poly_mod_quadratic(F: FieldContext, f: tuple, a1: int, a0: int) -> tuple[int, int]:
    """(r1, r0) with f = r1 x + r0 mod x^2 + a1 x + a0."""
    r1, r0 = 0, 0
    for coeff in reversed(f):
        # (r1 x + r0) x + coeff = (r0 - a1 r1) x + (coeff - a0 r1)
        r1, r0 = F.sub(r0, F.mul(a1, r1)), F.sub(coeff, F.mul(a0, r1))
    return r1, r0


def jac_decompress_general(F: FieldContext, curve: Genus2Curve, c: CompressedMumford) -> MumfordPoint:
    """Inverse of :func:`jac_compress` on any quintic or sextic.

    With f = r1 x + r0 mod a, X = b1^2 solves A X^2 + B X + r1^2 = 0 for
    A = a1^2 - 4 a0 and B = 2 a1 r1 - 4 r0, and 2 A X + B is the compressed
    quantity 4(a1 b1 b0 - a0 b1^2 - b0^2).
    """
    q = F.q
    a1, a0 = c.a1, c.a0
    if not (0 <= a1 < q and 0 <= a0 < q):
        raise EncodingError("coordinates out of range")
    f = curve.f
    r1, r0 = _poly_mod_quadratic(F, f, a1, a0)
    A = F.sub(F.sqr(a1), F.add(F.add(a0, a0), F.add(a0, a0)))
    if A == 0:
        raise EncodingError("a-polynomial has a double root")
    t = F.add(F.mul(a1, r1), F.neg(F.add(r0, r0)))
    B = F.add(t, t)
    disc = F.sub(F.sqr(B), F.mul(F.add(A, A), F.add(F.sqr(r1), F.sqr(r1))))
    A2 = F.add(A, A)
    try:
        z0, inv2A = F.simultaneous_inv_sqrt(disc, A2)
    except (NonSquareError, ZeroDivision) as exc:
        raise EncodingError("no point with these coordinates") from exc
    z0 = F.cselect(F.sign_bit(z0) ^ c.bit1, z0, F.neg(z0))
    X = F.mul(F.sub(z0, B), inv2A)
    rt = F.inv_sqrt(F.add(F.add(X, X), F.add(X, X)))
    if rt is NONSQUARE:
        raise EncodingError("no point with these coordinates")
    b1 = F.mul(F.add(X, X), rt)
    flip = F.sign_bit(b1) ^ c.bit0
    rt = F.cselect(flip, rt, F.neg(rt))
    b1 = F.cselect(flip, b1, F.neg(b1))
    b0 = F.mul(F.add(r1, F.mul(a1, X)), rt)
    P = MumfordPoint.generic(a1, a0, b1, b0)
    if jac_validate(curve, P) != "generic":
        raise EncodingError("decoded point is not on the Jacobian")
    return P


# ---------------------------------------------------------------------------
# byte layouts over GF(2^127 - 1), all little-endian


def encode_point_256(c: CompressedMumford) -> bytes:
    """bit0 | a0 (127 bits) | bit1 | a1 (127 bits)."""
    if not (0 <= c.a0 < MERSENNE127 and 0 <= c.a1 < MERSENNE127):
        raise EncodingError("coordinate out of range")
    v = c.bit0 | (c.a0 << 1) | (c.bit1 << 128) | (c.a1 << 129)
    return v.to_bytes(32, "little")


def decode_point_256(data: bytes) -> CompressedMumford:
    if len(data) != 32:
        raise EncodingError("point encoding must be 32 bytes")
    v = int.from_bytes(data, "little")
    a0 = (v >> 1) & MERSENNE127
    a1 = v >> 129
    if a0 >= MERSENNE127 or a1 >= MERSENNE127:
        raise EncodingError("non-canonical coordinate")
    return CompressedMumford(a1, a0, (v >> 128) & 1, v & 1)


def encode_scalar_256(s: int, order: int) -> bytes:
    if not 0 <= s < order:
        raise EncodingError("scalar out of range")
    return s.to_bytes(32, "little")


def decode_scalar_256(data: bytes, order: int) -> int:
    if len(data) != 32:
        raise EncodingError("scalar encoding must be 32 bytes")
    s = int.from_bytes(data, "little")
    if s >= order:
        raise EncodingError("non-canonical scalar")
    return s


def encode_sig_512(R: CompressedMumford, s: int, order: int) -> bytes:
    return encode_point_256(R) + encode_scalar_256(s, order)


def decode_sig_512(data: bytes, order: int) -> tuple[CompressedMumford, int]:
    if len(data) != 64:
        raise EncodingError("signature must be 64 bytes")
    return decode_point_256(data[:32]), decode_scalar_256(data[32:], order)
