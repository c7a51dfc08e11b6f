import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kummerlift.chain import PointError, RecoveryError
from kummerlift.field import FieldContext, cost
from kummerlift.genus2 import (
    IDENTITY,
    Genus2Curve,
    MumfordPoint,
    cantor_add,
    jac_add_explicit,
    jac_mul,
    jac_neg,
    jac_project,
    jac_recover_general,
    jac_validate,
    kummer_image,
    kummer_residual,
    point_from_x,
    projectively_equal,
    random_point,
)
from kummerlift.oracle import naive_scalar_mul

TOY = (1 << 31) - 1


@pytest.fixture(scope="module")
def quintic():
    rng = random.Random(8)
    return Genus2Curve(TOY, [rng.randrange(TOY) for _ in range(5)] + [rng.randrange(1, TOY)])


@pytest.fixture(scope="module")
def sextic():
    rng = random.Random(9)
    return Genus2Curve(TOY, [rng.randrange(TOY) for _ in range(6)] + [1])


def test_curve_validation():
    with pytest.raises(ValueError):
        Genus2Curve(TOY, [0, 0, 0, 1])
    with pytest.raises(ValueError):
        Genus2Curve(TOY, [0, 0, 1, 0, 0, 1])  # x^5 + x^2 is not squarefree
    assert Genus2Curve.rosenhain(TOY, 2, 3, 4).is_rosenhain_shape


def test_group_law_basics(gs, gs_points):
    C = gs.curve
    P, Q, R = gs_points[:3]
    assert cantor_add(C, P, IDENTITY) == P
    assert cantor_add(C, P, jac_neg(C, P)) == IDENTITY
    assert cantor_add(C, P, Q) == cantor_add(C, Q, P)
    assert cantor_add(C, cantor_add(C, P, Q), R) == cantor_add(C, P, cantor_add(C, Q, R))
    assert jac_validate(C, cantor_add(C, P, P)) in ("generic", "special")


def test_validate_rejects_bad_points(gs, gs_points):
    C = gs.curve
    a1, a0, b1, b0 = gs_points[0].coords
    assert jac_validate(C, MumfordPoint.generic(a1, a0, b1, (b0 + 1) % C.q)) == "invalid"
    assert jac_validate(C, MumfordPoint((1,), (3,))) == "invalid"
    assert jac_validate(C, IDENTITY) == "identity"


def test_explicit_addition_matches_cantor(gs, gs_points):
    C = gs.curve
    for P, Q in zip(gs_points[::2], gs_points[1::2]):
        F = FieldContext(C.q)
        assert jac_add_explicit(F, C, P, Q) == cantor_add(C, P, Q)
        assert F.counter == cost(M=22, S=3, a=32, I=1)


def test_project_counts_and_surface(gs, gs_points, quintic, sextic):
    rng = random.Random(1)
    for curve, want in ((gs.curve, cost(M=4, S=2, a=6)), (sextic, cost(M=5, S=2, a=7))):
        pts = gs_points if curve is gs.curve else [random_point(curve, rng) for _ in range(10)]
        for P in pts:
            F = FieldContext(curve.q)
            xi = jac_project(F, curve, P)
            assert F.counter == want
            assert kummer_residual(curve, xi) == 0
            assert projectively_equal(xi, kummer_image(curve, P), curve.q)
            assert xi == jac_project(FieldContext(curve.q), curve, jac_neg(curve, P))


@pytest.mark.parametrize("which", ["gs", "quintic"])
def test_recover_from_kummer_images(which, gs, quintic):
    curve = gs.curve if which == "gs" else quintic
    rng = random.Random(2)
    for _ in range(15):
        P, Q = random_point(curve, rng), random_point(curve, rng)
        s = rng.randrange(1, curve.q)
        xQ = tuple(s * v % curve.q for v in kummer_image(curve, Q))
        xQP = kummer_image(curve, cantor_add(curve, Q, P))
        xQmP = kummer_image(curve, cantor_add(curve, Q, jac_neg(curve, P)))
        got = jac_recover_general(FieldContext(curve.q), curve, P, xQ, xQP, xQmP)
        assert got == Q
        assert jac_validate(curve, got) == "generic"


def test_recover_handles_q_equal_to_plus_minus_p(gs, gs_points):
    C = gs.curve
    P = gs_points[0]
    x = kummer_image(C, P)
    x2 = kummer_image(C, cantor_add(C, P, P))
    ident = kummer_image(C, IDENTITY)
    assert jac_recover_general(FieldContext(C.q), C, P, x, x2, ident) == P
    assert jac_recover_general(FieldContext(C.q), C, P, x, ident, x2) == jac_neg(C, P)


def test_recover_rejects_inconsistent_inputs(gs, gs_points):
    C = gs.curve
    P, Q, R = gs_points[:3]
    with pytest.raises((RecoveryError, PointError)):
        got = jac_recover_general(
            FieldContext(C.q), C, P, kummer_image(C, Q), kummer_image(C, R), kummer_image(C, R)
        )
        if jac_validate(C, got) == "invalid":
            raise RecoveryError("invalid output")


def test_special_points(gs):
    C = gs.curve
    rng = random.Random(6)
    found = 0
    while found < 5:
        S = point_from_x(C, rng.randrange(C.q))
        if S is None:
            continue
        found += 1
        assert S.tag == "special" and jac_validate(C, S) == "special"
        with pytest.raises(PointError):
            jac_project(FieldContext(C.q), C, S)


@given(st.integers(0, 300), st.integers(0, 300))
def test_scalar_multiplication_is_linear(m, n):
    curve = Genus2Curve.rosenhain(TOY, 2, 3, 5)
    P = random_point(curve, random.Random(7))
    add = lambda x, y: cantor_add(curve, x, y)  # noqa: E731
    lhs = naive_scalar_mul(m + n, P, add, IDENTITY)
    assert lhs == add(jac_mul(curve, m, P), jac_mul(curve, n, P))
