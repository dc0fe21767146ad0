import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polarcone.theorems.random import random_cone

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def cone_params():
    """(dim, n_rays, seed, lineality) tuples for random cones."""
    return st.tuples(
        st.integers(2, 5), st.integers(0, 8), st.integers(0, 2**32), st.integers(0, 1)
    )


def make_cone(params):
    n, k, seed, lin = params
    return random_cone(n, k, seed, lineality_dim=min(lin, n))


def vectors(n, scale=5.0):
    return st.lists(
        st.floats(-scale, scale, allow_nan=False, allow_infinity=False), min_size=n, max_size=n
    ).map(np.array)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
