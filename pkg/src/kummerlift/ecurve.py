"""Elliptic-curve backends: Montgomery, short Weierstrass and Edwards.

Group points are affine tuples ``(x, y)``.  Line points are projective pairs
``(X, Z)`` on the x-line (Montgomery, Weierstrass) or ``(Y, Z)`` on the
y-line (Edwards).  Prepared differences are ``(x,)`` with the projective
coordinate scaled to 1, except on the Edwards y-line where they are kept
projective in the Montgomery u-coordinate.

The one group addition the two-dimensional chain needs only feeds Project,
so ``add_for_chain`` returns the single coordinate Project reads, as a
1-tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .chain import PointError, RecoveryError
from .field import FieldContext, FieldError, ZeroDivision, prime_field


def _inv(ctx: FieldContext, x: int) -> int:
    try:
        return ctx.inv(x)
    except ZeroDivision as exc:
        raise RecoveryError("lift is undefined for this input") from exc


# ---------------------------------------------------------------------------
# curve parameters


@dataclass(frozen=True)
class MontgomeryCurve:
    """B y^2 = x^3 + A x^2 + x."""

    q: int
    A: int
    B: int
    a24: int = dc_field(init=False)

    def __post_init__(self) -> None:
        q = self.q
        prime_field(q)
        if self.B % q == 0 or (self.A * self.A - 4) % q == 0:
            raise FieldError("singular Montgomery curve: need B(A^2-4) != 0")
        object.__setattr__(self, "a24", (self.A + 2) * pow(4, -1, q) % q)

    def contains(self, P) -> bool:
        x, y = P
        q = self.q
        return (self.B * y * y - x * (x * x + self.A * x + 1)) % q == 0


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + a x + b."""

    q: int
    a: int
    b: int
    b2: int = dc_field(init=False)
    b4: int = dc_field(init=False)

    def __post_init__(self) -> None:
        q = self.q
        prime_field(q)
        if (4 * self.a**3 + 27 * self.b**2) % q == 0:
            raise FieldError("singular Weierstrass curve: need 4a^3 + 27b^2 != 0")
        object.__setattr__(self, "b2", 2 * self.b % q)
        object.__setattr__(self, "b4", 4 * self.b % q)

    def contains(self, P) -> bool:
        x, y = P
        return (y * y - x**3 - self.a * x - self.b) % self.q == 0


@dataclass(frozen=True)
class EdwardsCurve:
    """x^2 + y^2 = 1 + d x^2 y^2 with d = r^2."""

    q: int
    d: int
    r: int

    def __post_init__(self) -> None:
        q = self.q
        prime_field(q)
        d = self.d % q
        if d in (0, 1):
            raise FieldError("Edwards parameter d must differ from 0 and 1")
        if self.r * self.r % q != d:
            raise FieldError("r is not a square root of d")

    def contains(self, P) -> bool:
        x, y = P
        q = self.q
        return (x * x + y * y - 1 - self.d * x * x * y * y) % q == 0

    def montgomery(self) -> MontgomeryCurve:
        """The Montgomery model reached by u = (1+y)/(1-y), v = u/x."""
        q = self.q
        inv = pow(1 - self.d, -1, q)
        return MontgomeryCurve(q, 2 * (1 + self.d) * inv % q, 4 * inv % q)

    def to_montgomery(self, P):
        x, y = P
        q = self.q
        u = (1 + y) * pow(1 - y, -1, q) % q
        return u, u * pow(x, -1, q) % q

    def from_montgomery(self, P):
        u, v = P
        q = self.q
        return u * pow(v, -1, q) % q, (u - 1) * pow(u + 1, -1, q) % q


# ---------------------------------------------------------------------------
# Montgomery x-line kernels, shared with the Edwards y-line


def _mont_dbl(F: FieldContext, X: int, Z: int, a24: int):
    """2M + 2S + 1m_A + 4a."""
    s = F.add(X, Z)
    ss = F.sqr(s)
    d = F.sub(X, Z)
    dd = F.sqr(d)
    e = F.sub(ss, dd)
    X2 = F.mul(ss, dd)
    Z2 = F.mul(e, F.add(dd, F.mulc(e, a24, "A")))
    return X2, Z2


def _mont_cross(F: FieldContext, X1: int, Z1: int, X2: int, Z2: int):
    """(DA + CB)^2 and (DA - CB)^2 for the differential addition."""
    da = F.mul(F.sub(X1, Z1), F.add(X2, Z2))
    cb = F.mul(F.add(X1, Z1), F.sub(X2, Z2))
    return F.sqr(F.add(da, cb)), F.sqr(F.sub(da, cb))


def _mont_dbladd(F: FieldContext, X1, Z1, X2, Z2, a24):
    """Ladder step sharing X1 +- Z1 between the doubling and the addition."""
    s = F.add(X1, Z1)
    d = F.sub(X1, Z1)
    ss = F.sqr(s)
    dd = F.sqr(d)
    e = F.sub(ss, dd)
    da = F.mul(d, F.add(X2, Z2))
    cb = F.mul(s, F.sub(X2, Z2))
    u = F.sqr(F.add(da, cb))
    w = F.sqr(F.sub(da, cb))
    X4 = F.mul(ss, dd)
    Z4 = F.mul(e, F.add(dd, F.mulc(e, a24, "A")))
    return (X4, Z4), u, w


# ---------------------------------------------------------------------------
# backends


class _ECBackend:
    curve: object
    name = "ec"

    def validate(self, P) -> None:
        if not isinstance(P, tuple) or len(P) != 2:
            raise PointError("expected an affine point (x, y)")
        if not self.curve.contains(P):
            raise PointError("point is not on the curve")
        if self._two_torsion(P):
            raise PointError("point has order dividing 2")

    def _two_torsion(self, P) -> bool:
        return P[1] % self.curve.q == 0

    def as_tuple(self, P):
        return tuple(P)

    def from_tuple(self, t):
        return tuple(t)

    def project_many(self, ctx, Ps):
        return [self.project(ctx, P) for P in Ps]

    def prepare(self, ctx: FieldContext, x):
        """Scale the difference to Z = 1 (1I + 1M, charged to setup)."""
        X, Z = x
        if Z == 1:
            return (X,)
        return (ctx.mul(X, _inv(ctx, Z)),)


class MontgomeryBackend(_ECBackend):
    name = "montgomery"

    def __init__(self, curve: MontgomeryCurve):
        self.curve = curve

    def project(self, ctx, P):
        return (P[0], 1)

    def xdbl(self, ctx, x):
        return _mont_dbl(ctx, x[0], x[1], self.curve.a24)

    def xadd(self, ctx, x1, x2, diff):
        """3M + 2S + 6a with a normalized difference."""
        u, w = _mont_cross(ctx, x1[0], x1[1], x2[0], x2[1])
        return u, ctx.mul(diff[0], w)

    def xdbladd(self, ctx, x1, x2, diff):
        """5M + 4S + 1m_A + 8a with a normalized difference."""
        dbl, u, w = _mont_dbladd(ctx, x1[0], x1[1], x2[0], x2[1], self.curve.a24)
        return dbl, (u, ctx.mul(diff[0], w))

    def add_for_chain(self, ctx, P, Q):
        """x(P+Q) for affine P != +-Q: 1M + 1S + 1m_B + 5a + 1I."""
        F, c = ctx, self.curve
        lam = F.mul(F.sub(Q[1], P[1]), _inv(F, F.sub(Q[0], P[0])))
        x3 = F.sub(F.sub(F.sub(F.mulc(F.sqr(lam), c.B, "B"), c.A), P[0]), Q[0])
        return (x3,)

    def add(self, ctx, P, Q):
        """Affine P + Q for P != +-Q: 2M + 1S + 1m_B + 7a + 1I."""
        F, c = ctx, self.curve
        lam = F.mul(F.sub(Q[1], P[1]), _inv(F, F.sub(Q[0], P[0])))
        x3 = F.sub(F.sub(F.sub(F.mulc(F.sqr(lam), c.B, "B"), c.A), P[0]), Q[0])
        return x3, F.sub(F.mul(lam, F.sub(P[0], x3)), P[1])

    def recover(self, ctx, P, xQ, xQP):
        """Okeya-Sakurai lift: 12M + 1S + 1m_A + 1m_B + 8a + 1I."""
        F, c = ctx, self.curve
        x, y = P
        X1, Z1 = xQ
        X2, Z2 = xQP
        t1 = F.mul(x, Z1)
        t2 = F.add(X1, t1)
        t3 = F.sqr(F.sub(X1, t1))
        t3 = F.mul(t3, X2)
        t1 = F.mulc(Z1, c.A, "A")
        t1 = F.add(t1, t1)
        t2 = F.add(t2, t1)
        t4 = F.add(F.mul(x, X1), Z1)
        t2 = F.mul(t2, t4)
        t1 = F.mul(t1, Z1)
        t2 = F.mul(F.sub(t2, t1), Z2)
        Yq = F.sub(t2, t3)
        t1 = F.mulc(y, c.B, "B")
        t1 = F.add(t1, t1)
        t1 = F.mul(F.mul(t1, Z1), Z2)
        Xq = F.mul(t1, X1)
        Zq = F.mul(t1, Z1)
        inv = _inv(F, Zq)
        return F.mul(Xq, inv), F.mul(Yq, inv)


class WeierstrassBackend(_ECBackend):
    name = "weierstrass"

    def __init__(self, curve: WeierstrassCurve):
        self.curve = curve

    def project(self, ctx, P):
        return (P[0], 1)

    def xdbl(self, ctx, x):
        """2M + 5S + 1m_a + 2m_b + 8a."""
        F, c = ctx, self.curve
        X, Z = x
        xx = F.sqr(X)
        zz = F.sqr(Z)
        t = F.sub(F.sub(F.sqr(F.add(X, Z)), xx), zz)
        t = F.add(t, t)  # 4XZ
        azz = F.mulc(zz, c.a, "a")
        X2 = F.sub(F.sqr(F.sub(xx, azz)), F.mul(F.mulc(zz, c.b2, "b"), t))
        Z2 = F.add(F.mul(t, F.add(xx, azz)), F.mulc(F.sqr(zz), c.b4, "b"))
        return X2, Z2

    def xadd(self, ctx, x1, x2, diff):
        """6M + 2S + 1m_a + 1m_b + 4a with a normalized difference."""
        F, c = ctx, self.curve
        X1, Z1 = x1
        X2, Z2 = x2
        xx = F.mul(X1, X2)
        zz = F.mul(Z1, Z2)
        xz = F.mul(X1, Z2)
        zx = F.mul(Z1, X2)
        X3 = F.sub(
            F.sqr(F.sub(xx, F.mulc(zz, c.a, "a"))),
            F.mul(F.mulc(zz, c.b4, "b"), F.add(xz, zx)),
        )
        Z3 = F.mul(diff[0], F.sqr(F.sub(xz, zx)))
        return X3, Z3

    def xdbladd(self, ctx, x1, x2, diff):
        return self.xdbl(ctx, x1), self.xadd(ctx, x1, x2, diff)

    def add_for_chain(self, ctx, P, Q):
        """x(P+Q) for affine P != +-Q: 1M + 1S + 4a + 1I."""
        F = ctx
        lam = F.mul(F.sub(Q[1], P[1]), _inv(F, F.sub(Q[0], P[0])))
        return (F.sub(F.sub(F.sqr(lam), P[0]), Q[0]),)

    def add(self, ctx, P, Q):
        """Affine P + Q for P != +-Q: 2M + 1S + 6a + 1I."""
        F = ctx
        lam = F.mul(F.sub(Q[1], P[1]), _inv(F, F.sub(Q[0], P[0])))
        x3 = F.sub(F.sub(F.sqr(lam), P[0]), Q[0])
        return x3, F.sub(F.mul(lam, F.sub(P[0], x3)), P[1])

    def recover(self, ctx, P, xQ, xQP):
        """Brier-Joye lift: 11M + 2S + 1m_a + 1m_b + 7a + 1I.

        y(Q) = [2b + (a + x xQ)(x + xQ) - x(P+Q) (x - xQ)^2] / 2y, with
        every term scaled by Z1^2 Z2.
        """
        F, c = ctx, self.curve
        x, y = P
        X1, Z1 = xQ
        X2, Z2 = xQP
        xX1 = F.mul(x, X1)
        xZ1 = F.mul(x, Z1)
        zz = F.sqr(Z1)
        bzz = F.mulc(zz, c.b, "b")
        t = F.mul(F.add(F.mulc(Z1, c.a, "a"), xX1), F.add(xZ1, X1))
        t = F.add(F.add(bzz, bzz), t)
        num = F.sub(F.mul(t, Z2), F.mul(X2, F.sqr(F.sub(xZ1, X1))))
        T = F.mul(F.add(y, y), Z2)
        inv = _inv(F, F.mul(T, zz))
        return F.mul(F.mul(F.mul(X1, Z1), T), inv), F.mul(num, inv)


class EdwardsBackend(_ECBackend):
    """y-line backend.

    With ``via_montgomery`` the point is mapped to the Montgomery model,
    multiplied there and mapped back.  Otherwise the ladder runs on (Y:Z)
    directly: each differential step is the Montgomery step conjugated by
    the linear change (U:W) = (Z+Y : Z-Y).
    """

    name = "edwards"

    def __init__(self, curve: EdwardsCurve, via_montgomery: bool = False):
        self.curve = curve
        self.via_montgomery = via_montgomery
        self.mont_curve = curve.montgomery()
        self.mont = MontgomeryBackend(self.mont_curve)
        self.a24 = self.mont_curve.a24

    def _two_torsion(self, P) -> bool:
        return P[0] % self.curve.q == 0

    def validate(self, P) -> None:
        super().validate(P)
        if (1 - P[1]) % self.curve.q == 0:
            raise PointError("identity point")

    # representation changes
    def _to_mont(self, P):
        """Edwards (x, y) to Montgomery (u, v); 1-tuples are already u."""
        if len(P) == 1:
            return P
        return self.curve.to_montgomery(P)

    @staticmethod
    def _uw(F, x):
        Y, Z = x
        return F.add(Z, Y), F.sub(Z, Y)

    @staticmethod
    def _yz(F, u, w):
        return F.sub(u, w), F.add(u, w)

    def project(self, ctx, P):
        if self.via_montgomery:
            return self.mont.project(ctx, self._to_mont(P))
        return (P[-1], 1)

    def prepare(self, ctx, x):
        if self.via_montgomery:
            return self.mont.prepare(ctx, x)
        return self._uw(ctx, x)

    def xdbl(self, ctx, x):
        if self.via_montgomery:
            return self.mont.xdbl(ctx, x)
        u, w = self._uw(ctx, x)
        return self._yz(ctx, *_mont_dbl(ctx, u, w, self.a24))

    def xadd(self, ctx, x1, x2, diff):
        if self.via_montgomery:
            return self.mont.xadd(ctx, x1, x2, diff)
        F = ctx
        u1, w1 = self._uw(F, x1)
        u2, w2 = self._uw(F, x2)
        su, sw = _mont_cross(F, u1, w1, u2, w2)
        return self._yz(F, F.mul(diff[1], su), F.mul(diff[0], sw))

    def xdbladd(self, ctx, x1, x2, diff):
        if self.via_montgomery:
            return self.mont.xdbladd(ctx, x1, x2, diff)
        F = ctx
        u1, w1 = self._uw(F, x1)
        u2, w2 = self._uw(F, x2)
        dbl, su, sw = _mont_dbladd(F, u1, w1, u2, w2, self.a24)
        return self._yz(F, *dbl), self._yz(F, F.mul(diff[1], su), F.mul(diff[0], sw))

    def add_for_chain(self, ctx, P, Q):
        if self.via_montgomery:
            return self.mont.add_for_chain(ctx, self._to_mont(P), self._to_mont(Q))
        F = ctx
        xx = F.mul(P[0], Q[0])
        yy = F.mul(P[1], Q[1])
        t = F.mulc(F.mul(xx, yy), self.curve.d, "d")
        return (F.mul(F.sub(yy, xx), _inv(F, F.sub(1, t))),)

    def add(self, ctx, P, Q):
        """Edwards addition law for affine points off the exceptional locus."""
        F, d = ctx, self.curve.d
        xx = F.mul(P[0], Q[0])
        yy = F.mul(P[1], Q[1])
        t = F.mulc(F.mul(xx, yy), d, "d")
        xy = F.add(F.mul(P[0], Q[1]), F.mul(P[1], Q[0]))
        inv = F.simultaneous_inv([F.add(1, t), F.sub(1, t)])
        return F.mul(xy, inv[0]), F.mul(F.sub(yy, xx), inv[1])

    def recover(self, ctx, P, xQ, xQP):
        """x(Q) = (y(Q+P) - y(Q) y(P)) / (x(P) (d y(P) y(Q) y(Q+P) - 1))."""
        if self.via_montgomery:
            R = self.mont.recover(ctx, self._to_mont(P), xQ, xQP)
            try:
                return self.curve.from_montgomery(R)
            except ValueError as exc:
                raise RecoveryError("result has no affine Edwards form") from exc
        F, d = ctx, self.curve.d
        x1, y1 = P
        Y, Z = xQ
        Y3, Z3 = xQP
        yY = F.mul(y1, Y)
        num = F.sub(F.mul(Y3, Z), F.mul(yY, Z3))
        den = F.mul(x1, F.sub(F.mulc(F.mul(yY, Y3), d, "d"), F.mul(Z, Z3)))
        inv = _inv(F, F.mul(den, Z))
        return F.mul(F.mul(num, Z), inv), F.mul(F.mul(Y, den), inv)
