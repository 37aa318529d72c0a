import numpy as np
import pytest

# acceptance results, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def random_spd(rng, n, low=0.2, high=5.0):
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return (Q * rng.uniform(low, high, n)) @ Q.T


def random_invertible(rng, n, max_cond=50.0):
    while True:
        M = rng.standard_normal((n, n))
        if np.linalg.cond(M) < max_cond:
            return M


def random_directions(rng, n, count):
    U = rng.standard_normal((count, n))
    return U / np.linalg.norm(U, axis=1, keepdims=True)


def random_polygon_vertices(rng, k):
    """``k`` generators in the upper half-plane; with their negatives a symmetric ``2k``-gon."""
    ang = np.sort(rng.uniform(0, np.pi, k))
    return np.c_[np.cos(ang), np.sin(ang)] * rng.uniform(0.5, 2.0, k)[:, None]


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
