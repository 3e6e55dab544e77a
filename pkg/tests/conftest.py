import numpy as np
import pytest

from nttpoly import Polynomial, Wrap, make_context


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def ctx7681():
    return make_context(7681, 4, Wrap.NWC)


@pytest.fixture(scope="session")
def pwc7681():
    return make_context(7681, 4, Wrap.PWC)


def random_poly(rng, n, q):
    return Polynomial(tuple(rng.integers(0, q, n).tolist()), q)


def brute_order(x, q):
    """Multiplicative order of x mod q by repeated multiplication."""
    y, k = x % q, 1
    while y != 1:
        y = y * x % q
        k += 1
    return k


# Filled by test_acceptance.py; echoed after the run so the lines survive output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
