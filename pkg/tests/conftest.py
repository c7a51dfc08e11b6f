import random

import pytest
from hypothesis import HealthCheck, settings

from kummerlift.fastkummer import gaudry_schost, random_params
from kummerlift.genus2 import random_point

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

TOY_Q = (1 << 31) - 1


@pytest.fixture(scope="session")
def gs():
    return gaudry_schost()


@pytest.fixture(scope="session")
def gs_points(gs):
    rng = random.Random(127)
    return [random_point(gs.curve, rng) for _ in range(40)]


@pytest.fixture(scope="session")
def toy_kummer():
    return random_params(TOY_Q, random.Random(5))


@pytest.fixture(scope="session")
def scheme():
    from kummerlift.schnorr import default_params

    return default_params()


@pytest.fixture(scope="session")
def toy_ec():
    """Toy elliptic groups with their backends, keyed by model name."""
    from kummerlift.ecurve import (
        EdwardsBackend,
        EdwardsCurve,
        MontgomeryBackend,
        MontgomeryCurve,
        WeierstrassBackend,
        WeierstrassCurve,
    )
    from kummerlift.oracle import toy_edwards, toy_montgomery, toy_weierstrass

    rng = random.Random(2015)
    w = toy_weierstrass(rng)
    m = toy_montgomery(rng)
    e = toy_edwards(rng)
    return {
        "weierstrass": (w, WeierstrassBackend(WeierstrassCurve(w.group.q, w.group.a, w.group.b))),
        "montgomery": (m, MontgomeryBackend(MontgomeryCurve(m.group.q, m.group.A, m.group.B))),
        "edwards": (e, EdwardsBackend(EdwardsCurve(e.group.q, e.group.d, e.group.r))),
        "edwards-via-montgomery": (
            e,
            EdwardsBackend(EdwardsCurve(e.group.q, e.group.d, e.group.r), via_montgomery=True),
        ),
    }


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
