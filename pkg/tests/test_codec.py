import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kummerlift.codec import (
    CompressedMumford,
    EncodingError,
    decode_point_256,
    decode_scalar_256,
    decode_sig_512,
    encode_point_256,
    encode_scalar_256,
    fk_compress,
    fk_decompress,
    gk_compress,
    gk_decompress,
    jac_compress,
    jac_decompress,
    jac_decompress_general,
)
from kummerlift.fastkummer import GS_N, fk_project
from kummerlift.field import MERSENNE127, FieldContext, cost
from kummerlift.genus2 import (
    IDENTITY,
    Genus2Curve,
    jac_neg,
    kummer_image,
    projectively_equal,
    random_point,
)

# [DERIVED] The generator, a public key and a signature, each recomputed with
# plain Cantor arithmetic (no ladder, no Kummer) and frozen here.
GENERATOR_HEX = "3704e2f1cf102d7b7d55916a8400246d01fab0696dabb53d58068144f2b65556"


def F(q):
    return FieldContext(q)


def test_jacobian_round_trip_and_counts(gs, gs_points):
    C, q = gs.curve, gs.q
    for P in gs_points:
        ctx = F(q)
        c = jac_compress(ctx, C, P)
        assert ctx.counter == cost(M=3, S=1, a=4)
        ctx = F(q)
        assert jac_decompress(ctx, C, c) == P
        assert ctx.counter == cost(M=18, S=4, a=24, E=2)
        assert jac_decompress_general(F(q), C, c) == P
        assert decode_point_256(encode_point_256(c)) == c


def test_negation_flips_a_sign_bit(gs, gs_points):
    C, q = gs.curve, gs.q
    for P in gs_points[:10]:
        c, n = jac_compress(F(q), C, P), jac_compress(F(q), C, jac_neg(C, P))
        assert (c.a1, c.a0) == (n.a1, n.a0) and (c.bit1, c.bit0) != (n.bit1, n.bit0)


def test_general_curve_decompression():
    q = 1000003
    rng = random.Random(9)
    C = Genus2Curve(q, tuple(rng.randrange(q) for _ in range(5)) + (1,))
    for _ in range(30):
        P = random_point(C, rng)
        assert jac_decompress_general(F(q), C, jac_compress(F(q), C, P)) == P


def test_kummer_round_trips_and_counts(gs, gs_points):
    C, q = gs.curve, gs.q
    for P in gs_points[:15]:
        xi = kummer_image(C, P)
        ctx = F(q)
        c = gk_compress(ctx, C, xi)
        assert ctx.counter == cost(M=10, S=2, a=10, I=1)
        ctx = F(q)
        assert projectively_equal(gk_decompress(ctx, C, c), xi, q)
        assert ctx.counter == cost(M=18, S=4, a=19, E=1)
        x = fk_project(F(q), gs, P)
        ctx = F(q)
        c = fk_compress(ctx, gs, x)
        assert ctx.counter == cost(M=25, S=2, a=22, I=1)
        ctx = F(q)
        assert projectively_equal(fk_decompress(ctx, gs, c), x, q)
        assert ctx.counter == cost(M=33, S=4, a=31, E=1)


def test_rejects_off_curve_and_noncanonical(gs):
    C, q = gs.curve, gs.q
    rng = random.Random(3)
    rejected = 0
    for _ in range(40):
        c = CompressedMumford(rng.randrange(q), rng.randrange(q), rng.randrange(2), rng.randrange(2))
        try:
            P = jac_decompress(F(q), C, c)
        except EncodingError:
            rejected += 1
            continue
        assert jac_compress(F(q), C, P) == c
    assert 0 < rejected < 40
    with pytest.raises(EncodingError):
        encode_point_256(CompressedMumford(MERSENNE127, 0, 0, 0))
    bad = ((MERSENNE127 << 1) | 1).to_bytes(32, "little")
    with pytest.raises(EncodingError):
        decode_point_256(bad)
    with pytest.raises(EncodingError):
        decode_point_256(b"\x00" * 31)


def test_scalar_and_signature_layout():
    assert decode_scalar_256(encode_scalar_256(GS_N - 1, GS_N), GS_N) == GS_N - 1
    with pytest.raises(EncodingError):
        encode_scalar_256(GS_N, GS_N)
    with pytest.raises(EncodingError):
        decode_scalar_256(GS_N.to_bytes(32, "little"), GS_N)
    with pytest.raises(EncodingError):
        decode_sig_512(b"\x00" * 63, GS_N)


@given(st.integers(0, MERSENNE127 - 1), st.integers(0, MERSENNE127 - 1), st.integers(0, 1), st.integers(0, 1))
def test_point_layout_is_bijective(a1, a0, b1, b0):
    c = CompressedMumford(a1, a0, b1, b0)
    data = encode_point_256(c)
    v = int.from_bytes(data, "little")
    assert v & 1 == b0 and (v >> 128) & 1 == b1
    assert decode_point_256(data) == c


def test_frozen_generator_encoding(scheme):
    enc = encode_point_256(jac_compress(F(scheme.q), scheme.curve, scheme.P))
    assert enc.hex() == GENERATOR_HEX
    assert jac_decompress(F(scheme.q), scheme.curve, decode_point_256(enc)) == scheme.P
    assert scheme.P != IDENTITY
