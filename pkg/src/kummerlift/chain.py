"""Scalar multiplication drivers over an x-line backend.

``ladder_mul`` is the one-dimensional Montgomery ladder and
``two_dim_mul`` walks Bernstein's two-dimensional binary differential
addition chain.  Both follow the Project, pseudomultiply, Recover pattern:
project to the x-line, run a fixed sequence of differential operations,
then lift the result back to the group.

Every backend call happens in the same order for every scalar of a given
bit length.  Branching on scalar bits is replaced by masked swaps and
masked table lookups over the operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol, Sequence

from .field import FieldContext, lookup, select_tuple, swap_tuple


class ScalarError(ValueError):
    """Scalar outside the domain an algorithm accepts."""


class PointError(ValueError):
    """Point outside the domain an algorithm accepts."""


class RecoveryError(ArithmeticError):
    """Recover was asked to lift an excluded (two-torsion or degenerate) input."""


XPoint = tuple


class Backend(Protocol):
    """The six x-line subroutines plus difference preparation.

    ``prepare`` turns an x-line point into the form ``xadd``/``xdbladd``
    take as their difference argument (for instance with cached inverses).
    Its cost belongs to setup, which the drivers charge to a separate context.
    """

    name: str

    def project(self, ctx, P) -> XPoint: ...

    def project_many(self, ctx, Ps: Sequence[Any]) -> list[XPoint]: ...

    def prepare(self, ctx, x: XPoint) -> tuple: ...

    def xdbl(self, ctx, x: XPoint) -> XPoint: ...

    def xadd(self, ctx, x1: XPoint, x2: XPoint, diff: tuple) -> XPoint: ...

    def xdbladd(self, ctx, x1: XPoint, x2: XPoint, diff: tuple) -> tuple[XPoint, XPoint]: ...

    def add_for_chain(self, ctx, P, Q) -> Any: ...

    def recover(self, ctx, P, xQ: XPoint, xQP: XPoint) -> Any: ...

    def validate(self, P) -> None: ...

    def as_tuple(self, P) -> tuple: ...

    def from_tuple(self, t: tuple) -> Any: ...


@dataclass
class CallTrace:
    """Backend-call kinds in the order a driver issued them."""

    calls: list

    def __init__(self) -> None:
        self.calls = []

    def __call__(self, kind: str) -> None:
        self.calls.append(kind)


def _noop(kind: str) -> None:
    pass


def bits_of(m: int, beta: int) -> list[int]:
    return [(m >> i) & 1 for i in range(beta)]


def _contexts(ctx, setup, backend=None):
    if ctx is None:
        curve = getattr(backend, "curve", None)
        ctx = FieldContext(curve.q) if curve is not None else None
    return ctx, (setup if setup is not None else ctx)


def ladder_mul(m: int, P, backend: Backend, ctx=None, setup=None, beta: int | None = None, trace=_noop):
    """[m]P by the Montgomery ladder.

    ``m`` must have exactly ``beta`` bits (top bit set).  Cost is one
    project, one xdbl, beta-1 xdbladd and one recover in ``ctx``; difference
    preparation is charged to ``setup``.
    """
    if m <= 0:
        raise ScalarError("scalar must be positive")
    if beta is None:
        beta = m.bit_length()
    if m.bit_length() != beta:
        raise ScalarError(f"scalar must have exactly {beta} bits")
    backend.validate(P)
    ctx, setup = _contexts(ctx, setup, backend)
    bits = bits_of(m, beta)

    trace("project")
    xP = backend.project(ctx, P)
    dP = backend.prepare(setup, xP)
    trace("xdbl")
    t1, t2 = xP, backend.xdbl(ctx, xP)
    for i in range(beta - 2, -1, -1):
        b = bits[i]
        t1, t2 = swap_tuple(b, t1, t2)
        trace("xdbladd")
        t1, t2 = backend.xdbladd(ctx, t1, t2, dP)
        t1, t2 = swap_tuple(b, t1, t2)
    trace("recover")
    return backend.recover(ctx, P, t1, t2)


def ladder_x(m: int, xP: XPoint, backend: Backend, ctx=None, setup=None, beta: int | None = None):
    """Pseudomultiplication only: x([m]P) from x(P), no lifting."""
    if beta is None:
        beta = m.bit_length()
    ctx, setup = _contexts(ctx, setup, backend)
    bits = bits_of(m, beta)
    dP = backend.prepare(setup, xP)
    t1, t2 = xP, backend.xdbl(ctx, xP)
    for i in range(beta - 2, -1, -1):
        b = bits[i]
        t1, t2 = swap_tuple(b, t1, t2)
        t1, t2 = backend.xdbladd(ctx, t1, t2, dP)
        t1, t2 = swap_tuple(b, t1, t2)
    return t1, t2


# ---------------------------------------------------------------------------
# two-dimensional chain


@dataclass(frozen=True)
class ChainEncoding:
    vectors: tuple  # beta-1 four-bit tuples, index i for step i
    d_last: int


def chain_encode(m: int, n: int, beta: int | None = None) -> ChainEncoding:
    """Transition vectors of the binary chain for (m, n).

    Vector i is (m_i ^ m_{i+1}, n_i ^ n_{i+1}, m_{i+1} ^ n_{i+1}, d_i) with
    d_0 = m_0 and d_{i+1} = (~d_i & (m_i ^ m_{i+1})) ^ (d_i & ~(n_i ^ n_{i+1})).
    """
    if m < 0 or n < 0 or (m == 0 and n == 0):
        raise ScalarError("need (m, n) non-negative and not both zero")
    if beta is None:
        beta = max(m, n).bit_length()
    if max(m, n).bit_length() > beta:
        raise ScalarError(f"scalars exceed {beta} bits")
    mb, nb = bits_of(m, beta), bits_of(n, beta)
    d = mb[0]
    out = []
    for i in range(beta - 1):
        dm = mb[i] ^ mb[i + 1]
        dn = nb[i] ^ nb[i + 1]
        out.append((dm, dn, mb[i + 1] ^ nb[i + 1], d))
        d = ((d ^ 1) & dm) ^ (d & (dn ^ 1))
    return ChainEncoding(tuple(out), d)


def table2_key(v: tuple) -> tuple:
    """Reorder an encoded vector into the step-switch key.

    The encoding stores (m_i^m_{i+1}, n_i^n_{i+1}, m_{i+1}^n_{i+1}, d_i).
    The switch is keyed by (a-b, A-a, B-b, D) mod 2 with a = m >> (i+1),
    A = m >> i (likewise b, B for n): the parity of a-b decides whether
    o-e is +-(1,1) or +-(1,-1).
    """
    dm, dn, top, d = v
    return (top, dm, dn, d)


# Operand routing for one chain step, indexed by 4*t1 + 2*t2 + t3 where
# (t0, t1, t2, t3) is the transition vector.  Entries name the register
# doubled first and its partner; 0 = E, 1 = M, 2 = O.
_STEP_ROUTE = (
    (0, 1),  # 000: (E, M)
    (0, 1),  # 001
    (1, 0),  # 010: (M, E)
    (1, 2),  # 011: (M, O)
    (1, 2),  # 100: (M, O)
    (1, 0),  # 101: (M, E)
    (2, 1),  # 110: (O, M)
    (2, 1),  # 111
)

# Every route pairs M with E or O, so one masked select and one masked swap
# realise it.
_ROUTE_USES_O = [int(2 in pair) for pair in _STEP_ROUTE]
_ROUTE_SWAP = [int(pair[0] == 1) for pair in _STEP_ROUTE]

# Initialisation by (m_top, n_top, d_last): the xdbladd operands and its
# difference, plus the register left alone.  Base names: P=0, Q=1, S=2, D=3
# where S = P+Q and D = P-Q.  ``m_single`` marks cases that set M directly.
_INIT = {
    (0, 1, 0): dict(first=1, second=0, diff=3, single=1, m_single=1),
    (0, 1, 1): dict(first=1, second=2, diff=0, single=2, m_single=0),
    (1, 0, 0): dict(first=0, second=2, diff=1, single=2, m_single=0),
    (1, 0, 1): dict(first=0, second=1, diff=3, single=0, m_single=1),
    (1, 1, 0): dict(first=2, second=0, diff=1, single=2, m_single=0),
    (1, 1, 1): dict(first=2, second=1, diff=0, single=2, m_single=0),
}
_INIT_TABLE = [_INIT.get((k >> 2, (k >> 1) & 1, k & 1)) for k in range(8)]


def _init_column(key: str) -> list[int]:
    return [0 if row is None else row[key] for row in _INIT_TABLE]


_INIT_FIRST = _init_column("first")
_INIT_SECOND = _init_column("second")
_INIT_DIFF = _init_column("diff")
_INIT_SINGLE = _init_column("single")
_INIT_MSINGLE = _init_column("m_single")

# Final lift by (m_0, n_0): the register holding x([m]P+[n]Q), the register
# holding x of its sum with the base, and the base (P = 0, Q = 1).  Using P
# or Q rather than P+Q as the base keeps the one group addition x-only.
_FINAL_TARGET = (0, 1, 1, 2)  # 00: E, 01: M, 10: M, 11: O
_FINAL_PARTNER = (1, 2, 0, 1)  # 00: M = E+Q, 01: O = M+P, 10: E = M+P, 11: M = O+Q
_FINAL_BASE = (1, 0, 0, 1)


def two_dim_mul(m: int, n: int, P, Q, backend: Backend, ctx=None, setup=None, beta: int | None = None, trace=_noop):
    """[m]P + [n]Q along Bernstein's binary chain.

    One add, three projects, beta xadds, beta xdbladds and one recover in
    ``ctx``; preparation of the four fixed differences goes to ``setup``.
    """
    if m <= 0 or n <= 0:
        raise ScalarError("scalars must be positive")
    if beta is None:
        beta = max(m, n).bit_length()
    if max(m, n).bit_length() != beta:
        raise ScalarError(f"one of the scalars must have exactly {beta} bits")
    backend.validate(P)
    backend.validate(Q)
    ctx, setup = _contexts(ctx, setup, backend)
    enc = chain_encode(m, n, beta)
    mb, nb = bits_of(m, beta), bits_of(n, beta)

    trace("add")
    S = backend.add_for_chain(ctx, P, Q)
    trace("project")
    trace("project")
    trace("project")
    xP, xQ, xS = backend.project_many(ctx, [P, Q, S])
    dP = backend.prepare(setup, xP)
    dQ = backend.prepare(setup, xQ)
    dS = backend.prepare(setup, xS)
    trace("xadd")
    xD = backend.xadd(ctx, xP, xQ, dS)
    dD = backend.prepare(setup, xD)
    xs = (xP, xQ, xS, xD)
    ds = (dP, dQ, dS, dD)

    k = (mb[beta - 1] << 2) | (nb[beta - 1] << 1) | enc.d_last
    first = lookup(_INIT_FIRST[k], xs)
    second = lookup(_INIT_SECOND[k], xs)
    diff = lookup(_INIT_DIFF[k], ds)
    single = lookup(_INIT_SINGLE[k], xs)
    trace("xdbladd")
    r1, r2 = backend.xdbladd(ctx, first, second, diff)
    ms = _INIT_MSINGLE[k]
    E = r1
    M = select_tuple(ms, r2, single)
    O = select_tuple(ms, single, r2)

    for i in range(beta - 2, -1, -1):
        t0, t1, t2, t3 = table2_key(enc.vectors[i])
        trace("xadd")
        newO = backend.xadd(ctx, O, E, select_tuple(t0, dS, dD))
        r = (t1 << 2) | (t2 << 1) | t3
        a, b = swap_tuple(_ROUTE_SWAP[r], select_tuple(_ROUTE_USES_O[r], E, O), M)
        trace("xdbladd")
        E, M = backend.xdbladd(ctx, a, b, select_tuple(t3, dQ, dP))
        O = newO

    # after the last step the triple belongs to C_{m_0}(m, n), so D = m_0
    k = (mb[0] << 1) | nb[0]
    regs = (E, M, O)
    xT = lookup(_FINAL_TARGET[k], regs)
    xTB = lookup(_FINAL_PARTNER[k], regs)
    base = select_tuple(_FINAL_BASE[k], backend.as_tuple(P), backend.as_tuple(Q))
    trace("recover")
    return backend.recover(ctx, backend.from_tuple(base), xT, xTB)


# ---------------------------------------------------------------------------
# integer model and the recursive chain definition


CHAIN_BASE = ((0, 0), (1, 0), (0, 1), (1, -1))


def chain_triples_oracle(A: int, B: int, D: int | None = None) -> list[tuple]:
    """C_D(A, B) from the recursive definition, as a flat list of pairs.

    The chain starts with CHAIN_BASE and then appends one (O, E, M) triple
    per bit: O has both entries odd, E both even and M one of each.
    """
    if A < 0 or B < 0:
        raise ScalarError("need non-negative pairs")
    if D is None:
        D = A & 1
    if A == 0 and B == 0:
        return list(CHAIN_BASE)
    a, b = A >> 1, B >> 1
    pa, pb = (A - a) & 1, (B - b) & 1
    if not pa and not pb:
        d = D
    elif not pa:
        d = 0
    elif not pb:
        d = 1
    else:
        d = 1 - D
    O = (A + ((A + 1) & 1), B + ((B + 1) & 1))
    E = (A + (A & 1), B + (B & 1))
    M = (A + ((A + D) & 1), B + ((B + D + 1) & 1))
    return chain_triples_oracle(a, b, d) + [O, E, M]


def chain_triples(A: int, B: int, D: int | None = None) -> list[tuple]:
    """The (O, E, M) triples of C_D(A, B), oldest first, base excluded."""
    flat = chain_triples_oracle(A, B, D)[len(CHAIN_BASE):]
    return [tuple(flat[k : k + 3]) for k in range(0, len(flat), 3)]


def _canon(v: tuple) -> tuple:
    """Representative of {v, -v} with a positive leading nonzero entry."""
    for c in v:
        if c:
            return v if c > 0 else tuple(-x for x in v)
    return v


def _canon_pair(a: int, b: int) -> tuple:
    return (a, b) if a > 0 or (a == 0 and b >= 0) else (-a, -b)


class IntegerBackend:
    """Pairs of integers standing for [a]P + [b]Q modulo sign.

    Differential operations assert that their difference argument is
    consistent with their operands.  ``checks`` counts those assertions.
    """

    name = "integer"

    def __init__(self) -> None:
        self.checks = 0

    def validate(self, P) -> None:
        pass

    def as_tuple(self, P):
        return tuple(P)

    def from_tuple(self, t):
        return tuple(t)

    def project(self, ctx, P):
        return _canon(P)

    def project_many(self, ctx, Ps):
        return [_canon(P) for P in Ps]

    def prepare(self, ctx, x):
        return x

    def xdbl(self, ctx, x):
        a, b = x
        return _canon_pair(2 * a, 2 * b)

    def xadd(self, ctx, x1, x2, diff):
        (a1, b1), (a2, b2) = x1, x2
        s = _canon_pair(a1 + a2, b1 + b2)
        t = _canon_pair(a1 - a2, b1 - b2)
        cd = _canon_pair(*diff)
        self.checks += 1
        if t == cd:
            return s
        if s == cd:
            return t
        raise AssertionError(f"difference {diff} inconsistent with {x1}, {x2}")

    def xdbladd(self, ctx, x1, x2, diff):
        return self.xdbl(ctx, x1), self.xadd(ctx, x1, x2, diff)

    def add_for_chain(self, ctx, P, Q):
        return tuple(u + v for u, v in zip(P, Q))

    def recover(self, ctx, P, xQ, xQP):
        cands = [c for c in (xQ, tuple(-x for x in xQ)) if _canon(tuple(u + v for u, v in zip(c, P))) == _canon(xQP)]
        if len(cands) != 1:
            raise RecoveryError("recover is ambiguous or inconsistent")
        return cands[0]
