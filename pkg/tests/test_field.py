import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kummerlift.field import (
    MERSENNE127,
    NONSQUARE,
    FieldContext,
    FieldError,
    NonSquareError,
    OpCounter,
    TracingContext,
    ZeroDivision,
    cost,
    legendre,
    lookup,
    prime_field,
    select_tuple,
    swap_tuple,
)

Q = MERSENNE127
elems = st.integers(min_value=0, max_value=Q - 1)
nonzero = st.integers(min_value=1, max_value=Q - 1)


def test_rejects_composite_and_tiny_moduli():
    with pytest.raises(FieldError):
        prime_field(1 << 127)
    with pytest.raises(FieldError):
        prime_field(3)


def test_sign_bit_conventions():
    assert FieldContext.sign_bit(0) == 0
    assert FieldContext.sign_bit(1) == 1
    assert FieldContext.sign_bit(Q - 1) == 0


def test_encoding_is_little_endian_and_canonical():
    p = prime_field(Q)
    assert p.encode(1) == b"\x01" + bytes(15)
    assert p.decode(p.encode(Q - 1)) == Q - 1
    with pytest.raises(FieldError):
        p.decode(Q.to_bytes(16, "little"))
    with pytest.raises(FieldError):
        p.decode(bytes(15))


@given(elems, elems)
def test_ring_operations_match_integers(x, y):
    F = FieldContext(Q)
    assert F.add(x, y) == (x + y) % Q
    assert F.sub(x, y) == (x - y) % Q
    assert F.mul(x, y) == x * y % Q
    assert F.sqr(x) == x * x % Q
    assert F.neg(x) == -x % Q
    assert F.counter == cost(M=1, S=1, a=3)


@given(nonzero)
def test_inverse(x):
    F = FieldContext(Q)
    assert F.mul(x, F.inv(x)) == 1
    assert F.counter.I == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivision):
        FieldContext(Q).inv(0)


@given(elems)
def test_sqrt_is_even_root_or_nonsquare(x):
    F = FieldContext(Q)
    r = F.sqrt(x)
    if legendre(x, Q) == -1:
        assert r is NONSQUARE
    else:
        assert r * r % Q == x and r & 1 == 0
    assert F.counter == cost(E=1)


@given(nonzero)
def test_inv_sqrt(x):
    F = FieldContext(Q)
    r = F.inv_sqrt(x)
    if legendre(x, Q) == 1:
        assert r * r * x % Q == 1
    else:
        assert r is NONSQUARE
    assert F.counter == cost(E=1)


@given(nonzero, nonzero)
def test_simultaneous_inv_sqrt(u, v):
    F = FieldContext(Q)
    if legendre(u, Q) == -1:
        with pytest.raises(NonSquareError):
            F.simultaneous_inv_sqrt(u, v)
        return
    s, w = F.simultaneous_inv_sqrt(u, v)
    assert s * s % Q == u and s & 1 == 0
    assert w * v % Q == 1
    assert F.counter == cost(M=4, S=1, E=1)


def test_simultaneous_inv_sqrt_needs_nonzero_u():
    with pytest.raises(ZeroDivision):
        FieldContext(Q).simultaneous_inv_sqrt(0, 5)


@given(st.lists(nonzero, min_size=1, max_size=9))
def test_simultaneous_inverse(xs):
    F = FieldContext(Q)
    inv = F.simultaneous_inv(xs)
    assert all(x * y % Q == 1 for x, y in zip(xs, inv))
    assert F.counter == cost(M=3 * (len(xs) - 1), I=1)


def test_simultaneous_inverse_names_zero_input():
    with pytest.raises(ZeroDivision) as info:
        FieldContext(Q).simultaneous_inv([3, 0, 5])
    assert info.value.index == 1


@given(st.integers(0, 1), elems, elems)
def test_masked_selection(bit, x, y):
    assert FieldContext.cselect(bit, x, y) == (y if bit else x)
    assert FieldContext.cswap(bit, x, y) == ((y, x) if bit else (x, y))
    assert select_tuple(bit, (x, y), (y, x)) == ((y, x) if bit else (x, y))
    assert swap_tuple(bit, (x,), (y,)) == (((y,), (x,)) if bit else ((x,), (y,)))


def test_lookup_scans_whole_table():
    table = [(i, i * i) for i in range(7)]
    assert all(lookup(i, table) == table[i] for i in range(7))


def test_counter_arithmetic():
    c = cost(M=2, S=1, a=3, A=1)
    assert c + c == c.scaled(2)
    assert (c + c) - c == c
    assert str(c) == "2M + 1S + 1m_A + 3a + 0I"
    assert c.as_tuple(["A"]) == (2, 1, 1, 3, 0, 0)
    assert OpCounter() == cost()


def test_trace_depends_only_on_program_shape():
    def program(F, x, y):
        t = F.mul(F.add(x, y), F.sqr(x))
        return F.sqrt(F.sub(t, y))

    rng = random.Random(1)
    traces = set()
    for _ in range(20):
        F = TracingContext(prime_field(Q))
        program(F, rng.randrange(Q), rng.randrange(Q))
        traces.add(tuple(F.trace))
    assert traces == {("a", "S", "M", "a", "E")}
