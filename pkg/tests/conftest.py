from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dualcanon.dual_core import DualMatrix, DualScalar, KMatrix
from dualcanon.polyalg import QPoly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20240611)


small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.fractions(min_value=-8, max_value=8, max_denominator=5)
dual_scalars = st.builds(DualScalar, rationals, rationals)


@st.composite
def kmatrices(draw, n=None, max_n=4, elements=small_ints):
    if n is None:
        n = draw(st.integers(min_value=1, max_value=max_n))
    rows = draw(st.lists(st.lists(elements, min_size=n, max_size=n), min_size=n, max_size=n))
    return KMatrix(rows)


@st.composite
def dual_matrices(draw, n=None, max_n=4):
    if n is None:
        n = draw(st.integers(min_value=1, max_value=max_n))
    return DualMatrix(draw(kmatrices(n=n)), draw(kmatrices(n=n)))


@st.composite
def qpolys(draw, max_deg=6, nonzero=False):
    coeffs = draw(st.lists(rationals, min_size=1, max_size=max_deg + 1))
    p = QPoly(coeffs)
    if nonzero and p.is_zero():
        p = QPoly([Fraction(1)])
    return p


def pytest_terminal_summary(terminalreporter):
    from .acceptance_report import lines

    report = lines()
    if report:
        terminalreporter.section("acceptance criteria")
        for line in report:
            terminalreporter.write_line(line)
