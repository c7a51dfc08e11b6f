"""Prime-field arithmetic with exact operation counting.

Field elements are plain Python ints kept in the canonical range [0, q).
All counted arithmetic goes through a :class:`FieldContext`, which pairs
the field parameters with an :class:`OpCounter`.  Two contexts never share
tallies unless they are handed the same counter explicitly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MERSENNE127 = (1 << 127) - 1

FieldElement = int


class FieldError(ValueError):
    """Parameter mismatch or malformed field data."""


class ZeroDivision(FieldError, ZeroDivisionError):
    """Inversion of zero.  ``index`` names the offending input, if any."""

    def __init__(self, msg: str, index: int | None = None):
        super().__init__(msg)
        self.index = index


class NonSquareError(FieldError):
    """Raised where a square root was required but does not exist."""


class _NonSquare:
    __slots__ = ()

    def __repr__(self) -> str:
        return "NONSQUARE"

    def __bool__(self) -> bool:
        return False


NONSQUARE = _NonSquare()


def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


@dataclass(frozen=True)
class FieldParams:
    q: int
    is_mersenne127: bool = False

    def __post_init__(self) -> None:
        if self.q <= 3:
            raise FieldError(f"modulus must exceed 3, got {self.q}")
        if self.is_mersenne127 != (self.q == MERSENNE127):
            raise FieldError("is_mersenne127 flag does not match modulus")
        if not _is_prime(self.q):
            raise FieldError(f"modulus {self.q} is not prime")

    @property
    def byte_length(self) -> int:
        return (self.q.bit_length() + 7) // 8

    def encode(self, x: int) -> bytes:
        """Little-endian encoding padded to the modulus byte length."""
        if not 0 <= x < self.q:
            raise FieldError("element out of range")
        return x.to_bytes(self.byte_length, "little")

    def decode(self, data: bytes) -> int:
        if len(data) != self.byte_length:
            raise FieldError(f"expected {self.byte_length} bytes, got {len(data)}")
        x = int.from_bytes(data, "little")
        if x >= self.q:
            raise FieldError("encoding is not reduced modulo q")
        return x


_PARAM_CACHE: dict[int, FieldParams] = {}


def prime_field(q: int) -> FieldParams:
    """Return (cached) parameters for GF(q)."""
    p = _PARAM_CACHE.get(q)
    if p is None:
        p = FieldParams(q, q == MERSENNE127)
        _PARAM_CACHE[q] = p
    return p


@dataclass
class OpCounter:
    """Tally of field operations.

    ``mc`` is keyed by constant class (for instance ``"A"`` and ``"B"`` on
    Montgomery curves, ``"a"``/``"b"`` on short Weierstrass curves, ``"c"``
    for theta and curve constants on Kummer surfaces).
    """

    M: int = 0
    S: int = 0
    a: int = 0
    I: int = 0
    E: int = 0
    mc: Counter = field(default_factory=Counter)

    @property
    def mc_total(self) -> int:
        return sum(self.mc.values())

    def copy(self) -> "OpCounter":
        return OpCounter(self.M, self.S, self.a, self.I, self.E, Counter(self.mc))

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            self.M + other.M,
            self.S + other.S,
            self.a + other.a,
            self.I + other.I,
            self.E + other.E,
            self.mc + other.mc,
        )

    def __sub__(self, other: "OpCounter") -> "OpCounter":
        mc = Counter(self.mc)
        mc.subtract(other.mc)
        return OpCounter(
            self.M - other.M,
            self.S - other.S,
            self.a - other.a,
            self.I - other.I,
            self.E - other.E,
            +mc,
        )

    def scaled(self, k: int) -> "OpCounter":
        return OpCounter(
            self.M * k,
            self.S * k,
            self.a * k,
            self.I * k,
            self.E * k,
            Counter({c: n * k for c, n in self.mc.items()}),
        )

    def as_tuple(self, classes: Sequence[str] | None = None) -> tuple[int, ...]:
        """(M, S, mc..., a, I, E) with mc split per ``classes`` or summed."""
        if classes is None:
            mcs: tuple[int, ...] = (self.mc_total,)
        else:
            mcs = tuple(self.mc.get(c, 0) for c in classes)
        return (self.M, self.S, *mcs, self.a, self.I, self.E)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpCounter):
            return NotImplemented
        return (
            self.M == other.M
            and self.S == other.S
            and self.a == other.a
            and self.I == other.I
            and self.E == other.E
            and +self.mc == +other.mc
        )

    def __str__(self) -> str:
        parts = [f"{self.M}M", f"{self.S}S"]
        for c in sorted(self.mc):
            if self.mc[c]:
                parts.append(f"{self.mc[c]}m_{c}")
        parts += [f"{self.a}a", f"{self.I}I"]
        if self.E:
            parts.append(f"{self.E}E")
        return " + ".join(parts)


def cost(
    M: int = 0, S: int = 0, a: int = 0, I: int = 0, E: int = 0, **mc: int
) -> OpCounter:
    """Build an expected tally, e.g. ``cost(M=5, S=4, a=8, A=1)``."""
    return OpCounter(M, S, a, I, E, Counter({k: v for k, v in mc.items() if v}))


class FieldContext:
    """Counted arithmetic over GF(q) for one invocation context."""

    __slots__ = ("params", "q", "counter")

    def __init__(self, params: FieldParams | int, counter: OpCounter | None = None):
        if isinstance(params, int):
            params = prime_field(params)
        self.params = params
        self.q = params.q
        self.counter = counter if counter is not None else OpCounter()

    def fork(self, counter: OpCounter | None = None) -> "FieldContext":
        """A context over the same field with its own (or the given) counter."""
        return type(self)(self.params, counter)

    def elem(self, x: int) -> int:
        """Reduce an integer into canonical form (not counted)."""
        return x % self.q

    def _check(self, other: "FieldContext") -> None:
        if other.q != self.q:
            raise FieldError("operands belong to different fields")

    # additive operations: one ``a`` each
    def add(self, x: int, y: int) -> int:
        self.counter.a += 1
        s = x + y
        return s - self.q if s >= self.q else s

    def sub(self, x: int, y: int) -> int:
        self.counter.a += 1
        s = x - y
        return s + self.q if s < 0 else s

    def neg(self, x: int) -> int:
        self.counter.a += 1
        return (self.q - x) % self.q

    # multiplicative operations
    def mul(self, x: int, y: int) -> int:
        self.counter.M += 1
        return x * y % self.q

    def sqr(self, x: int) -> int:
        self.counter.S += 1
        return x * x % self.q

    def mulc(self, x: int, c: int, cls: str = "c") -> int:
        """Multiply by a registered curve/theta constant, tallied as m_cls."""
        self.counter.mc[cls] += 1
        return x * c % self.q

    def inv(self, x: int) -> int:
        """Inverse by the fixed exponent q-2."""
        if x % self.q == 0:
            raise ZeroDivision("inversion of zero")
        self.counter.I += 1
        return pow(x, self.q - 2, self.q)

    def _tally_exp(self) -> None:
        self.counter.E += 1

    def _root(self, x: int) -> int:
        q = self.q
        if q % 4 == 3:
            return pow(x, (q + 1) // 4, q)
        from sympy.ntheory.residue_ntheory import sqrt_mod

        r = sqrt_mod(x, q)
        return 0 if r is None else r

    def sqrt(self, x: int):
        """Square root with even sign bit, or :data:`NONSQUARE`.  One ``E``."""
        self._tally_exp()
        r = self._root(x)
        if r * r % self.q != x % self.q:
            return NONSQUARE
        return self.cselect(r & 1, r, (self.q - r) % self.q)

    @staticmethod
    def sign_bit(x: int) -> int:
        return x & 1

    def simultaneous_inv(self, xs: Sequence[int]) -> list[int]:
        """Montgomery's trick: 3(n-1)M + 1I for n inputs."""
        n = len(xs)
        if n == 0:
            return []
        for i, x in enumerate(xs):
            if x % self.q == 0:
                raise ZeroDivision(f"input {i} is zero", index=i)
        prefix = [xs[0]]
        for x in xs[1:]:
            prefix.append(self.mul(prefix[-1], x))
        acc = self.inv(prefix[-1])
        out = [0] * n
        for i in range(n - 1, 0, -1):
            out[i] = self.mul(acc, prefix[i - 1])
            acc = self.mul(acc, xs[i])
        out[0] = acc
        return out

    def inv_sqrt(self, x: int):
        """r with r^2 x = 1 (r = x^((q-3)/4)), or :data:`NONSQUARE`.  One ``E``."""
        q = self.q
        if q % 4 != 3:
            raise FieldError("inverse square root needs q = 3 mod 4")
        self._tally_exp()
        r = pow(x, (q - 3) // 4, q)
        if r * r % q * x % q != 1:
            return NONSQUARE
        return r

    def simultaneous_inv_sqrt(self, u: int, v: int) -> tuple[int, int]:
        """Return (sqrt(u), 1/v) with a single exponentiation.

        w = u v^2 and t = w^((q-3)/4) = 1/sqrt(w); then sqrt(u) = u v t and
        1/v = sqrt(u) t.  Cost 4M + 1S + 1E.  Needs u != 0, since 1/v is
        read off sqrt(u).
        """
        q = self.q
        if v % q == 0:
            raise ZeroDivision("inversion of zero")
        if u % q == 0:
            raise ZeroDivision("u = 0 leaves 1/v undetermined", index=0)
        if q % 4 != 3:
            raise FieldError("simultaneous inverse square root needs q = 3 mod 4")
        w = self.mul(u, self.sqr(v))
        self._tally_exp()
        t = pow(w, (q - 3) // 4, q)
        s = self.mul(self.mul(u, v), t)
        if s * s % q != u % q:
            raise NonSquareError("argument is not a square")
        inv_v = self.mul(s, t)
        return self.cselect(s & 1, s, (q - s) % q), inv_v

    # branch-free selection; no tallied field operations
    @staticmethod
    def cselect(bit: int, x: int, y: int) -> int:
        """x if bit == 0 else y, via masking."""
        return x ^ ((x ^ y) & -bit)

    @staticmethod
    def cswap(bit: int, x: int, y: int) -> tuple[int, int]:
        t = (x ^ y) & -bit
        return x ^ t, y ^ t


def select_tuple(bit: int, xs: Sequence[int], ys: Sequence[int]) -> tuple:
    """Componentwise xs if bit == 0 else ys, via masking."""
    m = -bit
    return tuple([x ^ ((x ^ y) & m) for x, y in zip(xs, ys)])


def swap_tuple(bit: int, xs: Sequence[int], ys: Sequence[int]):
    m = -bit
    ts = [(x ^ y) & m for x, y in zip(xs, ys)]
    return tuple([x ^ t for x, t in zip(xs, ts)]), tuple([y ^ t for y, t in zip(ys, ts)])


def lookup(index: int, table: Sequence[Sequence[int]]) -> tuple:
    """table[index] by a masked scan over every entry."""
    acc = list(table[0])
    for j in range(1, len(table)):
        m = -int(j == index)
        acc = [a ^ ((a ^ t) & m) for a, t in zip(acc, table[j])]
    return tuple(acc)


class TracingContext(FieldContext):
    """FieldContext that also records the sequence of operation kinds."""

    __slots__ = ("trace",)

    def __init__(self, params, counter=None):
        super().__init__(params, counter)
        self.trace: list[str] = []

    def add(self, x, y):
        self.trace.append("a")
        return super().add(x, y)

    def sub(self, x, y):
        self.trace.append("a")
        return super().sub(x, y)

    def neg(self, x):
        self.trace.append("a")
        return super().neg(x)

    def mul(self, x, y):
        self.trace.append("M")
        return super().mul(x, y)

    def sqr(self, x):
        self.trace.append("S")
        return super().sqr(x)

    def mulc(self, x, c, cls="c"):
        self.trace.append("m_" + cls)
        return super().mulc(x, c, cls)

    def inv(self, x):
        self.trace.append("I")
        return super().inv(x)

    def _tally_exp(self):
        self.trace.append("E")
        super()._tally_exp()


def legendre(x: int, q: int) -> int:
    """Euler's criterion: 1, -1 or 0 (uncounted helper)."""
    x %= q
    if x == 0:
        return 0
    return 1 if pow(x, (q - 1) // 2, q) == 1 else -1


def random_elements(q: int, rng, n: int, nonzero: bool = False) -> list[int]:
    lo = 1 if nonzero else 0
    return [rng.randrange(lo, q) for _ in range(n)]


def sum_counters(cs: Iterable[OpCounter]) -> OpCounter:
    total = OpCounter()
    for c in cs:
        total = total + c
    return total
