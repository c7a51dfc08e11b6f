"""Slow, case-complete reference arithmetic.

Nothing here shares straight-line code with the counted backends.  The
elliptic groups use textbook affine chord-and-tangent laws with ``None`` as
the point at infinity; the genus-2 Jacobian uses Cantor's algorithm (in
:mod:`kummerlift.genus2`).  Scalar multiplication is plain double-and-add.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator


@dataclass(frozen=True)
class OracleConfig:
    toy_bits: int = 16
    exhaustive_bound: int = 63
    random_trials: int = 500
    seed: int = 2015


# ---------------------------------------------------------------------------
# generic helpers


def naive_scalar_mul(m: int, P, add: Callable, identity=None):
    """[m]P by left-to-right double-and-add using only ``add``."""
    if m < 0:
        raise ValueError("scalar must be non-negative")
    R = identity
    for bit in bin(m)[2:] if m else "":
        R = add(R, R)
        if bit == "1":
            R = add(R, P)
    return R


def naive_two_dim(m: int, n: int, P, Q, add: Callable, identity=None):
    """[m]P + [n]Q by joint double-and-add (Shamir's trick)."""
    PQ = add(P, Q)
    R = identity
    for i in range(max(m, n).bit_length() - 1, -1, -1):
        R = add(R, R)
        k = ((m >> i) & 1) | (((n >> i) & 1) << 1)
        if k:
            R = add(R, (P, Q, PQ)[k - 1])
    return R


def doublings(P, bits: int, add: Callable) -> list:
    """[P, 2P, 4P, ...] with ``bits`` entries, for :func:`fixed_base_mul`."""
    out = [P]
    for _ in range(bits - 1):
        out.append(add(out[-1], out[-1]))
    return out


def fixed_base_mul(m: int, table: list, add: Callable, identity=None):
    """[m]P from the doublings of P: one add per set bit of m."""
    if m < 0 or m.bit_length() > len(table):
        raise ValueError("scalar out of range for table")
    R = identity
    for i in range(m.bit_length()):
        if (m >> i) & 1:
            R = table[i] if R is identity else add(R, table[i])
    return R


def group_order_probe(P, order: int, mul: Callable, identity=None) -> bool:
    """True iff P has order exactly ``order``."""
    from sympy import factorint

    if mul(order, P) != identity:
        return False
    return all(mul(order // ell, P) != identity for ell in factorint(order))


def square_table(q: int) -> bytearray:
    """is_square[v] for v in [0, q); exhaustive, for toy fields only."""
    t = bytearray(q)
    for x in range(q):
        t[x * x % q] = 1
    return t


def _count(q: int, rhs: Callable[[int], int]) -> int:
    """Points on y^2 = rhs(x) including infinity, by exhaustive scan."""
    sq = square_table(q)
    total = q + 1
    for x in range(q):
        v = rhs(x)
        if v:
            total += 1 if sq[v] else -1
    return total


# ---------------------------------------------------------------------------
# elliptic curves, affine with None as infinity


class WeierstrassGroup:
    """y^2 = x^3 + a x + b over GF(q)."""

    def __init__(self, q: int, a: int, b: int):
        self.q, self.a, self.b = q, a % q, b % q

    identity = None

    def contains(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        return (y * y - x**3 - self.a * x - self.b) % self.q == 0

    def neg(self, P):
        return None if P is None else (P[0], -P[1] % self.q)

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        q = self.q
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if (y1 + y2) % q == 0:
                return None
            lam = (3 * x1 * x1 + self.a) * pow(2 * y1, -1, q) % q
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, q) % q
        x3 = (lam * lam - x1 - x2) % q
        return x3, (lam * (x1 - x3) - y1) % q

    def mul(self, m: int, P):
        return naive_scalar_mul(m, P, self.add)

    def rhs(self, x: int) -> int:
        return (x**3 + self.a * x + self.b) % self.q

    def lift_x(self, x: int):
        from .field import FieldContext, NONSQUARE

        r = FieldContext(self.q).sqrt(self.rhs(x))
        return None if r is NONSQUARE else (x % self.q, r)

    def count_points(self) -> int:
        return _count(self.q, self.rhs)


class MontgomeryGroup:
    """B y^2 = x^3 + A x^2 + x over GF(q)."""

    identity = None

    def __init__(self, q: int, A: int, B: int):
        self.q, self.A, self.B = q, A % q, B % q

    def contains(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        return (self.B * y * y - x * (x * x + self.A * x + 1)) % self.q == 0

    def neg(self, P):
        return None if P is None else (P[0], -P[1] % self.q)

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        q, A, B = self.q, self.A, self.B
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if (y1 + y2) % q == 0:
                return None
            lam = (3 * x1 * x1 + 2 * A * x1 + 1) * pow(2 * B * y1, -1, q) % q
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, q) % q
        x3 = (B * lam * lam - A - x1 - x2) % q
        return x3, (lam * (x1 - x3) - y1) % q

    def mul(self, m: int, P):
        return naive_scalar_mul(m, P, self.add)

    def rhs_over_B(self, x: int) -> int:
        q = self.q
        return x * (x * x + self.A * x + 1) * pow(self.B, -1, q) % q

    def lift_x(self, x: int):
        from .field import FieldContext, NONSQUARE

        r = FieldContext(self.q).sqrt(self.rhs_over_B(x))
        return None if r is NONSQUARE else (x % self.q, r)

    def count_points(self) -> int:
        return _count(self.q, self.rhs_over_B)


class EdwardsGroup:
    """x^2 + y^2 = 1 + d x^2 y^2 over GF(q), identity (0, 1).

    Sums use the Edwards law when its denominators are nonzero and fall back
    to the birationally equivalent Montgomery model otherwise.
    """

    def __init__(self, q: int, d: int):
        self.q, self.d = q, d % q
        inv = pow(1 - d, -1, q)
        self.mont = MontgomeryGroup(q, 2 * (1 + d) * inv, 4 * inv)

    identity = (0, 1)

    def contains(self, P) -> bool:
        x, y = P
        return (x * x + y * y - 1 - self.d * x * x * y * y) % self.q == 0

    def neg(self, P):
        return (-P[0] % self.q, P[1])

    def _to_mont(self, P):
        q = self.q
        x, y = P
        if (x, y) == (0, 1):
            return None
        if (x, y) == (0, q - 1):
            return (0, 0)
        u = (1 + y) * pow(1 - y, -1, q) % q
        return u, u * pow(x, -1, q) % q

    def _from_mont(self, R):
        q = self.q
        if R is None:
            return (0, 1)
        u, v = R
        if (u, v) == (0, 0):
            return (0, q - 1)
        if v == 0 or (u + 1) % q == 0:
            raise ArithmeticError("point has no affine Edwards form")
        return u * pow(v, -1, q) % q, (u - 1) * pow(u + 1, -1, q) % q

    def add(self, P, Q):
        q, d = self.q, self.d
        (x1, y1), (x2, y2) = P, Q
        t = d * x1 * x2 * y1 * y2 % q
        if (1 + t) % q and (1 - t) % q:
            return (
                (x1 * y2 + y1 * x2) * pow(1 + t, -1, q) % q,
                (y1 * y2 - x1 * x2) * pow(1 - t, -1, q) % q,
            )
        return self._from_mont(self.mont.add(self._to_mont(P), self._to_mont(Q)))

    def mul(self, m: int, P):
        return naive_scalar_mul(m, P, self.add, self.identity)

    def lift_y(self, y: int):
        from .field import FieldContext, NONSQUARE

        q = self.q
        den = (1 - self.d * y * y) % q
        if den == 0:
            return None
        r = FieldContext(q).sqrt((1 - y * y) * pow(den, -1, q) % q)
        return None if r is NONSQUARE else (r, y % q)


# ---------------------------------------------------------------------------
# toy curves


@dataclass(frozen=True)
class ToyGroup:
    """A curve, a generator P of prime order ell and a second point Q = kP."""

    group: object
    ell: int
    P: tuple
    Q: tuple
    k: int


def _safe_multiplier(ell: int, bound: int, rng: random.Random) -> int | None:
    """k with A + kB != 0 mod ell whenever |A|, |B| <= bound, (A, B) != 0.

    None when every k in [2, ell - 2] is excluded.
    """
    bad = {(-A * pow(B, -1, ell)) % ell for B in range(1, bound + 1) for A in range(-bound, bound + 1)}
    ok = [k for k in range(2, ell - 1) if k not in bad]
    return rng.choice(ok) if ok else None


def _prime_part(n: int, max_cofactor: int):
    from sympy import isprime

    for h in range(1, max_cofactor + 1):
        if n % h == 0 and isprime(n // h):
            return n // h, h
    return None


def toy_primes(lo: int, hi: int, rng: random.Random) -> Iterator[int]:
    from sympy import isprime

    while True:
        p = rng.randrange(lo, hi) | 3
        if p < hi and isprime(p):
            yield p


def toy_weierstrass(rng: random.Random, bits: int = 16, bound: int = 65) -> ToyGroup:
    for p in toy_primes(1 << (bits - 1), 1 << bits, rng):
        a, b = rng.randrange(p), rng.randrange(p)
        if (4 * a**3 + 27 * b * b) % p == 0:
            continue
        G = WeierstrassGroup(p, a, b)
        pp = _prime_part(G.count_points(), 4)
        if pp is None or pp[0] < 1000:
            continue
        T = _finish_toy(G, *pp, lambda: G.lift_x(rng.randrange(p)), bound, rng)
        if T is not None:
            return T
    raise AssertionError("unreachable")


def toy_montgomery(rng: random.Random, bits: int = 16, bound: int = 65) -> ToyGroup:
    for p in toy_primes(1 << (bits - 1), 1 << bits, rng):
        A, B = rng.randrange(3, p - 2), rng.randrange(1, p)
        if (A * A - 4) % p == 0:
            continue
        G = MontgomeryGroup(p, A, B)
        pp = _prime_part(G.count_points(), 8)
        if pp is None or pp[0] < 1000:
            continue
        T = _finish_toy(G, *pp, lambda: G.lift_x(rng.randrange(1, p)), bound, rng)
        if T is not None:
            return T
    raise AssertionError("unreachable")


def toy_edwards(rng: random.Random, bits: int = 16, bound: int = 65) -> ToyGroup:
    for p in toy_primes(1 << (bits - 1), 1 << bits, rng):
        r = rng.randrange(2, p - 1)
        d = r * r % p
        if d in (0, 1):
            continue
        G = EdwardsGroup(p, d)
        pp = _prime_part(G.mont.count_points(), 8)
        if pp is None or pp[0] < 1000:
            continue
        G.r = r
        T = _finish_toy(G, *pp, lambda: G.lift_y(rng.randrange(p)), bound, rng)
        if T is not None:
            return T
    raise AssertionError("unreachable")


def _finish_toy(G, ell, h, sample, bound, rng) -> ToyGroup | None:
    k = _safe_multiplier(ell, bound, rng)
    if k is None:
        return None
    ident = G.identity
    while True:
        R = sample()
        if R is None:
            continue
        P = G.mul(h, R)
        if P != ident and G.mul(ell, P) == ident:
            break
    return ToyGroup(G, ell, P, G.mul(k, P), k)


# ---------------------------------------------------------------------------
# test-vector files: one record per line, space-separated key=hex fields


def format_record(fields: dict) -> str:
    return " ".join(f"{k}={v:x}" if isinstance(v, int) else f"{k}={v.hex()}" for k, v in fields.items())


def parse_record(line: str) -> dict:
    out = {}
    for tok in line.split():
        k, v = tok.split("=", 1)
        out[k] = int(v, 16) if v else 0
    return out


def write_vectors(path, records: Iterable[dict]) -> None:
    with open(path, "w") as fh:
        for r in records:
            fh.write(format_record(r) + "\n")


def read_vectors(path) -> list[dict]:
    with open(path) as fh:
        return [parse_record(line) for line in fh if line.strip() and not line.startswith("#")]
