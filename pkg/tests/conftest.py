import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from mfull.field import Rng  # noqa: E402
from mfull.ideal_ops import Ideal  # noqa: E402
from mfull.monomial import MonomialIdeal  # noqa: E402
from mfull.poly import PolyRing, Polynomial, exponents_of_degree  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=300,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

P = 32003


@pytest.fixture
def R2():
    return PolyRing(2)


@pytest.fixture
def R3():
    return PolyRing(3)


@pytest.fixture
def rng():
    return Rng(7)


# -- strategies -------------------------------------------------------------

@st.composite
def exponent_vectors(draw, n, max_deg=4, min_deg=0):
    d = draw(st.integers(min_deg, max_deg))
    e = [0] * n
    for _ in range(d):
        e[draw(st.integers(0, n - 1))] += 1
    return e


@st.composite
def homogeneous_polys(draw, ring, min_deg=1, max_deg=3, max_terms=4):
    d = draw(st.integers(min_deg, max_deg))
    mons = list(exponents_of_degree(ring.n, d))
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, ring.p - 1), min_size=len(chosen), max_size=len(chosen)))
    return Polynomial(ring, {ring.pack(e): c for e, c in zip(chosen, coeffs)})


@st.composite
def graded_ideals(draw, n=None, max_gens=3, max_deg=3):
    if n is None:
        n = draw(st.integers(2, 3))
    ring = PolyRing(n)
    gens = draw(st.lists(homogeneous_polys(ring, 1, max_deg), min_size=1, max_size=max_gens))
    return Ideal(ring, gens)


@st.composite
def monomial_ideals(draw, n=None, max_gens=4, max_deg=4):
    if n is None:
        n = draw(st.integers(1, 3))
    gens = draw(st.lists(exponent_vectors(n, max_deg, 1), min_size=1, max_size=max_gens))
    return MonomialIdeal(n, gens)


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
