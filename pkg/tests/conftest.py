from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from flexinfer.rules import Polarity, make_rule
from flexinfer.values import Universe, make_flexible_value

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep

U = Universe("U", 0.0, 10.0)
V = Universe("V", 0.0, 100.0)


def canonical_a():
    return make_flexible_value("A", U, (2, 8), (4.5, 5.5), 5)


def canonical_b():
    return make_flexible_value("B", V, (20, 80), (45, 55), 50)


@pytest.fixture
def A():
    return canonical_a()


@pytest.fixture
def B():
    return canonical_b()


@pytest.fixture
def rule(A, B):
    return make_rule("r", A, B)


def random_value(rng: np.random.Generator, name: str, universe: Universe, beta: float | None = None):
    """Random valid value with support strictly inside the universe."""
    lo, hi = universe.lo, universe.hi
    # seven ordered knots; peak drawn between the core endpoints
    k = np.sort(rng.uniform(lo, hi, 6))
    while np.any(np.diff(k) <= 1e-6 * (hi - lo)):
        k = np.sort(rng.uniform(lo, hi, 6))
    s_lo, e_lo, c_lo, c_hi, e_hi, s_hi = k.tolist()
    if beta is None:
        beta = 1.0 if rng.random() < 0.5 else float(rng.uniform(1.0, 2.0))
    if beta > 1.0:
        peak = float(rng.uniform(c_lo, c_hi))
        if not c_lo < peak < c_hi:
            peak = (c_lo + c_hi) / 2
    else:
        peak = float(rng.uniform(c_lo, c_hi))
    return make_flexible_value(name, universe, (s_lo, s_hi), (c_lo, c_hi), peak, beta, (e_lo, e_hi))


def random_rule(rng: np.random.Generator, name: str = "r"):
    a = random_value(rng, "A", U)
    b = random_value(rng, "B", V)
    pol = Polarity.INCREASING if rng.random() < 0.5 else Polarity.DECREASING
    return make_rule(name, a, b, polarity=pol)


@st.composite
def flexible_values(draw, universe: Universe = U):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_value(np.random.default_rng(seed), "H", universe)


@st.composite
def rules(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_rule(np.random.default_rng(seed))
