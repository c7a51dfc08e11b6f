"""Genus-2 curves, Mumford points and the general Kummer surface.

Curves are y^2 = f(x) with deg f in {5, 6} over GF(q).  Jacobian elements
are reduced Mumford pairs <a(x), b(x)> with a monic, deg b < deg a <= 2 and
b^2 = f mod a.  Polynomials are coefficient tuples, constant term first.

Cantor's algorithm here is the case-complete oracle.  The counted routines
(``jac_project``, ``jac_recover_general``, ``jac_add_explicit``) handle
generic inputs only and take a :class:`~kummerlift.field.FieldContext`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chain import PointError, RecoveryError
from .field import NONSQUARE, FieldContext, ZeroDivision

# ---------------------------------------------------------------------------
# polynomials over GF(q): tuples, constant term first, no trailing zeros


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(f, g, q):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % q for i in range(n)])


def psub(f, g, q):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % q for i in range(n)])


def pmul(f, g, q):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return _trim([c % q for c in out])


def pscale(f, c, q):
    return _trim([x * c % q for x in f])


def pdivmod(f, g, q):
    if not g:
        raise ZeroDivision("polynomial division by zero")
    r = list(f)
    inv = pow(g[-1], -1, q)
    dq = len(f) - len(g)
    if dq < 0:
        return (), tuple(f)
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = r[k + len(g) - 1] * inv % q
        quo[k] = c
        if c:
            for j, y in enumerate(g):
                r[k + j] = (r[k + j] - c * y) % q
    return _trim(quo), _trim(r[: len(g) - 1])


def pmod(f, g, q):
    return pdivmod(f, g, q)[1]


def pmonic(f, q):
    return pscale(f, pow(f[-1], -1, q), q) if f else ()


def pxgcd(f, g, q):
    """(d, s, t) with d = s f + t g monic (or () if both are zero)."""
    r0, r1 = tuple(f), tuple(g)
    s0, s1, t0, t1 = (1,), (), (), (1,)
    while r1:
        quo, rem = pdivmod(r0, r1, q)
        r0, r1 = r1, rem
        s0, s1 = s1, psub(s0, pmul(quo, s1, q), q)
        t0, t1 = t1, psub(t0, pmul(quo, t1, q), q)
    if not r0:
        return (), (), ()
    c = pow(r0[-1], -1, q)
    return pscale(r0, c, q), pscale(s0, c, q), pscale(t0, c, q)


def peval(f, x, q):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % q
    return acc


def pderiv(f, q):
    return _trim([i * f[i] % q for i in range(1, len(f))])


# ---------------------------------------------------------------------------
# curves and points


@dataclass(frozen=True)
class Genus2Curve:
    """y^2 = f6 x^6 + ... + f0; ``f`` lists f0..f6."""

    q: int
    f: tuple

    def __post_init__(self) -> None:
        q = self.q
        f = tuple(c % q for c in self.f) + (0,) * (7 - len(self.f))
        if len(f) != 7:
            raise ValueError("expected at most seven coefficients")
        object.__setattr__(self, "f", f)
        poly = _trim(list(f))
        if len(poly) - 1 not in (5, 6):
            raise ValueError("f must have degree 5 or 6")
        d, _, _ = pxgcd(poly, pderiv(poly, q), q)
        if len(d) != 1:
            raise ValueError("f is not squarefree")

    @classmethod
    def rosenhain(cls, q: int, lam: int, mu: int, nu: int) -> "Genus2Curve":
        """y^2 = x (x-1) (x-lam) (x-mu) (x-nu)."""
        poly = (0, 1)
        for r in (1, lam, mu, nu):
            poly = pmul(poly, (-r % q, 1), q)
        return cls(q, poly)

    @property
    def poly(self) -> tuple:
        return _trim(list(self.f))

    @property
    def is_rosenhain_shape(self) -> bool:
        """f0 = f6 = 0 and f5 = 1, the shape Recover specializes on."""
        return self.f[0] == 0 and self.f[6] == 0 and self.f[5] == 1

    def rhs(self, x: int) -> int:
        return peval(self.f, x, self.q)


@dataclass(frozen=True)
class MumfordPoint:
    """<a, b> with a monic of degree <= 2; a = (1,) is the identity."""

    a: tuple
    b: tuple

    @classmethod
    def generic(cls, a1: int, a0: int, b1: int, b0: int) -> "MumfordPoint":
        return cls((a0, a1, 1), _trim([b0, b1]))

    @property
    def tag(self) -> str:
        return ("identity", "special", "generic")[len(self.a) - 1]

    @property
    def coords(self) -> tuple:
        """(a1, a0, b1, b0) for a generic point."""
        if len(self.a) != 3:
            raise PointError("point is not generic")
        b = self.b + (0,) * (2 - len(self.b))
        return self.a[1], self.a[0], b[1], b[0]


IDENTITY = MumfordPoint((1,), ())


def jac_validate(curve: Genus2Curve, P: MumfordPoint) -> str:
    """'identity', 'special', 'generic' or 'invalid'."""
    q = curve.q
    a, b = P.a, P.b
    if not a or a[-1] != 1 or len(a) > 3 or len(b) >= len(a) or any(not 0 <= c < q for c in a + b):
        return "invalid"
    if len(a) == 1:
        return "identity" if not b else "invalid"
    if pmod(psub(pmul(b, b, q), curve.poly, q), a, q):
        return "invalid"
    return P.tag


def jac_neg(curve: Genus2Curve, P: MumfordPoint) -> MumfordPoint:
    return MumfordPoint(P.a, pscale(P.b, curve.q - 1, curve.q))


def _reduce(curve: Genus2Curve, a, b) -> MumfordPoint:
    q, f = curve.q, curve.poly
    b = pmod(b, a, q)
    while len(a) > 3:
        a = pmonic(pdivmod(psub(f, pmul(b, b, q), q), a, q)[0], q)
        b = pmod(pscale(b, q - 1, q), a, q)
    return MumfordPoint(pmonic(a, q), b)


def _inv_linear_mod(r1: int, r0: int, w1: int, w0: int, q: int):
    """(s1, s0) with (r1 x + r0)(s1 x + s0) = 1 mod x^2 + w1 x + w0, or None."""
    det = (r1 * r1 * w0 + r0 * r0 - r0 * r1 * w1) % q
    if det == 0:
        return None
    c = pow(det, -1, q)
    return -r1 * c % q, (r0 - r1 * w1) * c % q


def _mul_linear_mod(e1, e0, s1, s0, w1, w0, q):
    t = e1 * s1
    return (e1 * s0 + e0 * s1 - t * w1) % q, (e0 * s0 - t * w0) % q


def _compose_generic(curve: Genus2Curve, P: MumfordPoint, Q: MumfordPoint):
    """Composition for two degree-2 supports by CRT (sum) or Hensel (double).

    Returns the unreduced (a, b), or None when the shortcut does not apply
    (shared support, or a doubling with b not invertible mod a).
    """
    q = curve.q
    (u0, u1, _), (w0, w1, _) = P.a, Q.a
    pb = P.b + (0,) * (2 - len(P.b))
    qb = Q.b + (0,) * (2 - len(Q.b))
    if P.a != Q.a:
        inv = _inv_linear_mod(u1 - w1, u0 - w0, w1, w0, q)
        if inv is None:
            return None
        k1, k0 = _mul_linear_mod(qb[1] - pb[1], qb[0] - pb[0], *inv, w1, w0, q)
    else:
        if pb != qb:
            return None
        inv = _inv_linear_mod(2 * pb[1], 2 * pb[0], u1, u0, q)
        if inv is None:
            return None
        num = pdivmod(psub(curve.poly, pmul(pb, pb, q), q), P.a, q)[0]
        num = pmod(num, P.a, q) + (0, 0)
        k1, k0 = _mul_linear_mod(num[1], num[0], *inv, u1, u0, q)
    a = pmul(P.a, Q.a, q)
    b = padd(P.b, pmul(P.a, _trim([k0, k1]), q), q)
    return a, b


def cantor_add(curve: Genus2Curve, P: MumfordPoint, Q: MumfordPoint) -> MumfordPoint:
    """Group law by Cantor composition and reduction (all cases)."""
    q = curve.q
    if len(P.a) == 1:
        return Q
    if len(Q.a) == 1:
        return P
    if len(P.a) == 3 and len(Q.a) == 3 and len(curve.poly) == 6:
        ab = _compose_generic(curve, P, Q)
        if ab is not None:
            return _reduce(curve, *ab)
    d1, e1, e2 = pxgcd(P.a, Q.a, q)
    d, c1, c2 = pxgcd(d1, padd(P.b, Q.b, q), q)
    s1, s2, s3 = pmul(c1, e1, q), pmul(c1, e2, q), c2
    a = pdivmod(pmul(P.a, Q.a, q), pmul(d, d, q), q)[0]
    num = padd(
        padd(pmul(pmul(s1, P.a, q), Q.b, q), pmul(pmul(s2, Q.a, q), P.b, q), q),
        pmul(s3, padd(pmul(P.b, Q.b, q), curve.poly, q), q),
        q,
    )
    b = pdivmod(num, d, q)[0]
    return _reduce(curve, a, b)


def jac_mul(curve: Genus2Curve, m: int, P: MumfordPoint) -> MumfordPoint:
    from .oracle import naive_scalar_mul

    if m < 0:
        return naive_scalar_mul(-m, jac_neg(curve, P), lambda x, y: cantor_add(curve, x, y), IDENTITY)
    return naive_scalar_mul(m, P, lambda x, y: cantor_add(curve, x, y), IDENTITY)


def point_from_x(curve: Genus2Curve, x: int):
    """Special point <x - x0, y0> with y0 the even root, or None."""
    q = curve.q
    y = FieldContext(q).sqrt(curve.rhs(x))
    if y is NONSQUARE:
        return None
    return MumfordPoint(((-x) % q, 1), _trim([y]))


def random_point(curve: Genus2Curve, rng: random.Random) -> MumfordPoint:
    """A random generic point: the sum of two random special points."""
    q = curve.q
    while True:
        pts = []
        while len(pts) < 2:
            P = point_from_x(curve, rng.randrange(q))
            if P is not None and P.b:
                pts.append(P if rng.getrandbits(1) else jac_neg(curve, P))
        R = cantor_add(curve, *pts)
        if R.tag == "generic":
            return R


# ---------------------------------------------------------------------------
# general Kummer surface


def kummer_coeffs(curve: Genus2Curve, x1: int, x2: int, x3: int) -> tuple[int, int, int]:
    """(K2, K1, K0) with K2 xi4^2 + K1 xi4 + K0 = 0 on the surface."""
    q = curve.q
    f0, f1, f2, f3, f4, f5, f6 = curve.f
    K2 = (x2 * x2 - 4 * x1 * x3) % q
    K1 = -2 * (
        2 * f0 * x1**3
        + f1 * x1 * x1 * x2
        + 2 * f2 * x1 * x1 * x3
        + f3 * x1 * x2 * x3
        + 2 * f4 * x1 * x3 * x3
        + f5 * x2 * x3 * x3
        + 2 * f6 * x3**3
    )
    K0 = (
        (f1 * f1 - 4 * f0 * f2) * x1**4
        - 4 * f0 * f3 * x1**3 * x2
        - 2 * f1 * f3 * x1**3 * x3
        - 4 * f0 * f4 * x1 * x1 * x2 * x2
        + 4 * (f0 * f5 - f1 * f4) * x1 * x1 * x2 * x3
        + (f3 * f3 + 2 * f1 * f5 - 4 * f2 * f4 - 4 * f0 * f6) * x1 * x1 * x3 * x3
        - 4 * f0 * f5 * x1 * x2**3
        + 4 * (2 * f0 * f6 - f1 * f5) * x1 * x2 * x2 * x3
        + 4 * (f1 * f6 - f2 * f5) * x1 * x2 * x3 * x3
        - 2 * f3 * f5 * x1 * x3**3
        - 4 * f0 * f6 * x2**4
        - 4 * f1 * f6 * x2**3 * x3
        - 4 * f2 * f6 * x2 * x2 * x3 * x3
        - 4 * f3 * f6 * x2 * x3**3
        + (f5 * f5 - 4 * f4 * f6) * x3**4
    )
    return K2, K1 % q, K0 % q


def kummer_residual(curve: Genus2Curve, xi: tuple) -> int:
    """K2 xi4^2 + K1 xi4 + K0; zero exactly on the surface."""
    K2, K1, K0 = kummer_coeffs(curve, *xi[:3])
    x4 = xi[3]
    return (K2 * x4 * x4 + K1 * x4 + K0) % curve.q


def kummer_image(curve: Genus2Curve, P: MumfordPoint) -> tuple:
    """Uncounted projection of a generic point (the identity maps to (0:0:0:1))."""
    q = curve.q
    if P.tag == "identity":
        return (0, 0, 0, 1)
    if P.tag != "generic":
        raise PointError("only generic points have a chart with xi1 = 1")
    a1, a0, b1, b0 = P.coords
    f0, f1, f2, f3, f4, f5, f6 = curve.f
    w = (a1 * a1 - a0) % q
    xi4 = (b1 * b1 + w * (f5 * a1 - f6 * w) + a1 * (f3 - f4 * a1) - f2) % q
    return (1, (-a1) % q, a0, xi4)


def projectively_equal(x: tuple, y: tuple, q: int) -> bool:
    if not any(v % q for v in x) or not any(v % q for v in y):
        return False
    return all((x[i] * y[j] - x[j] * y[i]) % q == 0 for i in range(len(x)) for j in range(i + 1, len(x)))


# ---------------------------------------------------------------------------
# counted maps


def jac_project(ctx: FieldContext, curve: Genus2Curve, P: MumfordPoint) -> tuple:
    """(1 : -a1 : a0 : xi4) for generic P.

    5M + 2S + 7a; 4M + 2S + 6a when f6 = 0.  Curve constants count as M.
    """
    if P.tag != "generic":
        raise PointError("Project on the general Kummer needs a generic point")
    F = ctx
    a1, a0, b1, b0 = P.coords
    f = curve.f
    w = F.sub(F.sqr(a1), a0)
    t = F.mul(f[5], a1)
    if f[6]:
        t = F.sub(t, F.mul(f[6], w))
    xi4 = F.add(F.sqr(b1), F.mul(w, t))
    xi4 = F.add(xi4, F.mul(a1, F.sub(f[3], F.mul(f[4], a1))))
    xi4 = F.sub(xi4, f[2])
    return (1, F.neg(a1), a0, xi4)


def jac_recover_general(
    ctx: FieldContext,
    curve: Genus2Curve,
    P: MumfordPoint,
    xQ: tuple,
    xQP: tuple,
    xQmP: tuple,
    rosenhain: bool | None = None,
) -> MumfordPoint:
    """Q from P, x(Q), x(Q+P) and x(Q-P) on the general Kummer.

    Inputs are projective; one inversion normalizes the result.  Only the
    first three coordinates of x(Q+P) and x(Q-P) are read.  With
    ``rosenhain`` (default: detected from the curve) the terms in f0 and f6
    vanish and f5 = 1, leaving four constant multiplications.
    """
    F = ctx
    if rosenhain is None:
        rosenhain = curve.is_rosenhain_shape
    f0, f1, f2, f3, f4, f5, f6 = curve.f
    a1, a0, b1, b0 = P.coords
    s, x2, x3, x4 = xQ
    sp, p2, p3 = xQP[:3]
    sm, m2, m3 = xQmP[:3]

    # Z-values scaled by s = xi1 (Z4 and D by s^2); n1 = -Z1
    n1 = F.add(x2, F.mul(a1, s))
    z2 = F.sub(x3, F.mul(a0, s))
    z3 = F.add(F.mul(a1, x3), F.mul(a0, x2))
    z4 = F.neg(F.add(F.mul(x3, z2), F.mul(x2, z3)))
    z2z2 = F.sqr(z2)
    D = F.add(z2z2, F.mul(n1, z3))
    if D == 0:
        if n1 == 0 and z2 == 0:
            # x(Q) = x(P): Q = P exactly when x(Q-P) is the identity image
            if sm == 0 and m2 == 0 and m3 == 0:
                return P
            return jac_neg(curve, P)
        raise RecoveryError("D vanishes: excluded configuration")

    # G1, G2 scaled by D/s
    g1 = F.add(F.mul(z2, b1), F.mul(n1, b0))
    a0n1 = F.mul(a0, n1)
    g2 = F.sub(F.mul(a0n1, b1), F.mul(F.add(F.mul(a1, n1), z2), b0))

    # x(Q+P), x(Q-P) cross terms
    u2, v2 = F.mul(p2, sm), F.mul(m2, sp)
    u3, v3 = F.mul(p3, sm), F.mul(m3, sp)
    spm = F.mul(sp, sm)
    sig2, dif2 = F.add(u2, v2), F.sub(u2, v2)
    sig3, dif3 = F.add(u3, v3), F.sub(u3, v3)
    cross = F.sub(F.mul(p2, m3), F.mul(m2, p3))

    # Delta scaled by D^2 s+ s- / s^2
    g1g1, g2g2, g1g2 = F.sqr(g1), F.sqr(g2), F.mul(g1, g2)
    w = F.sub(F.mul(sig2, g1g2), F.mul(sig3, g1g1))
    y = F.mul(spm, g2g2)
    delta = F.sub(w, F.add(y, y))
    delta = F.add(delta, delta)
    if delta == 0:
        raise RecoveryError("Delta vanishes: excluded configuration")

    # T scaled by D^2
    ss = F.sqr(s)
    bracket = F.add(F.mulc(F.mul(n1, z2), f1, "f"), F.mulc(z2z2, f2, "f"))
    bracket = F.sub(bracket, F.mulc(F.mul(z2, z3), f3, "f"))
    bracket = F.add(bracket, F.mulc(F.sqr(z3), f4, "f"))
    if not rosenhain:
        bracket = F.add(bracket, F.mulc(F.sqr(n1), f0, "f"))
    W = F.add(F.mul(F.mul(x4, s), D), F.mul(ss, bracket))
    z3z4 = F.mul(z3, z4)
    if not rosenhain:
        z3z4 = F.mulc(z3z4, f5, "f")
    W = F.sub(W, F.mul(s, z3z4))
    t = F.neg(F.add(F.mul(ss, g1g1), W))
    if not rosenhain:
        t = F.add(t, F.mulc(F.sub(F.sqr(D), F.sqr(z4)), f6, "f"))

    # G3, G4 up to the common factor t / (s delta D)
    h3 = F.sub(F.mul(dif2, g2), F.mul(dif3, g1))
    h4 = F.add(F.mul(cross, g1), F.mul(dif3, g2))

    # b(Q) scaled by s^3 delta D / t
    sz2, sn1 = F.mul(s, z2), F.mul(s, n1)
    B1 = F.sub(F.mul(F.sub(F.mul(x2, n1), sz2), h3), F.mul(sn1, h4))
    B0 = F.sub(F.mul(sz2, h4), F.mul(F.mul(x3, n1), h3))

    den = F.mul(F.mul(ss, delta), D)
    inv = F.inv(F.mul(den, s))
    tinv = F.mul(t, inv)
    sinv = F.mul(den, inv)
    return MumfordPoint.generic(
        F.neg(F.mul(x2, sinv)), F.mul(x3, sinv), F.mul(B1, tinv), F.mul(B0, tinv)
    )


def jac_add_explicit(ctx: FieldContext, curve: Genus2Curve, P: MumfordPoint, Q: MumfordPoint) -> MumfordPoint:
    """P + Q for generic P, Q with coprime a-polynomials on a monic quintic.

    Affine explicit formulas (Cantor composition and one reduction step
    unrolled, as in Lange's genus-2 addition): 22M + 3S + 32a + 1I.
    """
    F = ctx
    if curve.f[6] or curve.f[5] != 1:
        raise PointError("explicit addition needs a monic quintic")
    u11, u10, v11, v10 = P.coords
    u21, u20, v21, v20 = Q.coords
    f4 = curve.f[4]

    # resultant of the a-polynomials and the almost-inverse of a(Q) mod a(P)
    z1 = F.sub(u11, u21)
    z2 = F.sub(u20, u10)
    z3 = F.add(F.mul(u11, z1), z2)
    r = F.add(F.mul(z2, z3), F.mul(F.sqr(z1), u10))
    if r == 0:
        raise PointError("a-polynomials share a root")

    # s' = r s = (b(P) - b(Q)) inv mod a(P), by Karatsuba
    w0 = F.sub(v10, v20)
    w1 = F.sub(v11, v21)
    w2 = F.mul(z3, w0)
    w3 = F.mul(z1, w1)
    s1 = F.sub(F.sub(F.mul(F.add(z3, z1), F.add(w0, w1)), w2), F.mul(w3, F.add(u11, 1)))
    s0 = F.sub(w2, F.mul(u10, w3))
    if s1 == 0:
        raise PointError("sum has a degree-1 support")

    # one inversion yields 1/s1, s1/r and r/s1
    w1 = F.inv(F.mul(r, s1))
    w2 = F.mul(r, w1)
    w3 = F.mul(F.sqr(s1), w1)
    w4 = F.mul(r, w2)
    w5 = F.sqr(w4)
    s0 = F.mul(s0, w2)

    # l = s a(Q) without its leading term
    l2 = F.add(u21, s0)
    l1 = F.add(F.mul(u21, s0), u20)
    l0 = F.mul(u20, s0)

    # a of the sum
    t = F.sub(s0, z1)
    u30 = F.mul(F.sub(s0, u11), t)
    u30 = F.add(F.sub(u30, u10), l1)
    u30 = F.add(u30, F.mul(F.add(v21, v21), w4))
    u30 = F.add(u30, F.mul(F.sub(F.add(F.add(u21, u21), z1), f4), w5))
    u31 = F.sub(F.add(s0, t), w5)

    # b of the sum
    w1 = F.sub(l2, u31)
    w2 = F.sub(F.add(F.mul(u31, w1), u30), l1)
    v31 = F.sub(F.mul(w2, w3), v21)
    w2 = F.sub(F.mul(u30, w1), l0)
    v30 = F.sub(F.mul(w3, w2), v20)
    return MumfordPoint.generic(u31, u30, v31, v30)
