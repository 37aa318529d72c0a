import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from polarduality import geometry as geo
from polarduality import volumes as vol
from polarduality.errors import PolarDualityError, UnsupportedError

from conftest import random_invertible, random_polygon_vertices, random_spd


def lgamma_bounds(n, hbar):
    """The four closed forms through math.lgamma, independent of the library's evaluation path."""
    lg = math.lgamma(n / 2 + 1)
    lf = math.lgamma(n + 1)
    return (
        math.exp(n * math.log(math.pi * hbar) - 2 * lg),
        math.exp(n * math.log(math.pi * hbar / 4) - lf),
        math.exp(n * math.log(4 * hbar) - lf),
        math.exp(-n * math.log(2) / 2 - lg),
    )


# -- closed forms ------------------------------------------------------------


def test_exact_examples():
    assert vol.volume_exact(geo.ball(1.0, 2)).value == pytest.approx(math.pi, rel=1e-15)
    assert vol.volume_exact(geo.ellipsoid(np.diag([4.0, 1.0]))).value == pytest.approx(math.pi / 2, rel=1e-15)
    assert vol.volume_exact(geo.box([1.0, 2.0])).value == 8.0


def test_exact_cross_polytope_and_parallelotopes(rng):
    assert vol.volume_exact(geo.vpolytope(np.diag([1.0, 2.0, 3.0]))).value == pytest.approx(8 * 6 / 6, rel=1e-14)
    V = random_invertible(rng, 3)
    expected = 8 * abs(np.linalg.det(V)) / 6
    assert vol.volume_exact(geo.vpolytope(V)).value == pytest.approx(expected, rel=1e-12)
    U = random_invertible(rng, 3)
    expected = 8 / abs(np.linalg.det(U))
    assert vol.volume_exact(geo.hpolytope(U)).value == pytest.approx(expected, rel=1e-12)


def test_exact_polygon_matches_hull(rng):
    for _ in range(20):
        V = random_polygon_vertices(rng, rng.integers(2, 7))
        X = geo.vpolytope(V)
        assert vol.volume_exact(X).value == pytest.approx(ConvexHull(np.vstack([V, -V])).volume, rel=1e-12)


def test_unsupported_exact_volume():
    X = geo.hpolytope(np.random.default_rng(1).standard_normal((6, 3)))
    with pytest.raises(UnsupportedError, match="volume_mc"):
        vol.volume_exact(X)
    assert vol.volume(X, samples=20_000).method == "monte_carlo"


@pytest.mark.parametrize(
    "n, expected",
    [
        (1, (4.0, math.pi / 4, 4.0, math.sqrt(2 / math.pi))),
        (2, (math.pi**2, math.pi**2 / 32, 8.0, 0.5)),
        (4, (math.pi**4 / 4, math.pi**4 / 6144, 32 / 3, 0.125)),
    ],
)
def test_bound_values(n, expected):
    b = vol.bounds(n, 1.0)
    np.testing.assert_allclose([b.bs, b.kuperberg, b.mahler_conj, b.delta], expected, rtol=1e-13)


def test_bound_values_printed():
    b = vol.bounds(2)
    assert round(b.bs, 6) == 9.869604 and round(b.kuperberg, 6) == 0.308425
    assert b.mahler_conj == 8.0 and b.delta == 0.5


@pytest.mark.parametrize("n", [3, 10, 59, 60, 61, 150, 400])
@pytest.mark.parametrize("hbar", [0.3, 1.0, 2.5])
def test_bounds_agree_with_log_gamma(n, hbar):
    b = vol.bounds(n, hbar)
    np.testing.assert_allclose([b.bs, b.kuperberg, b.mahler_conj, b.delta], lgamma_bounds(n, hbar), rtol=1e-11)


@pytest.mark.parametrize("n, hbar", [(0, 1.0), (2.5, 1.0), (2, 0.0), (2, -1.0)])
def test_bounds_reject_bad_input(n, hbar):
    with pytest.raises(PolarDualityError):
        vol.bounds(n, hbar)


# -- Monte Carlo -------------------------------------------------------------


def test_mc_disc_area():
    v = vol.volume_mc(geo.ball(1.0, 2), 1_000_000, seed=3)
    assert abs(v.value - math.pi) <= 3 * v.std_error
    assert v.method == "monte_carlo" and v.samples == 1_000_000 and v.seed == 3


def test_mc_is_bitwise_reproducible():
    X = geo.ellipsoid(np.diag([2.0, 0.5, 1.0]))
    a = vol.volume_mc(X, 200_000, seed=11)
    b = vol.volume_mc(X, 200_000, seed=11)
    assert a == b


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_mc_parallel_equals_sequential(workers):
    X = geo.vpolytope(np.random.default_rng(2).standard_normal((5, 3)))
    assert vol.volume_mc(X, 300_001, seed=5, workers=workers) == vol.volume_mc(X, 300_001, seed=5)


def test_mc_random_polygons_match_hull(rng):
    for k in range(10):
        V = random_polygon_vertices(rng, 3 + k % 3)
        X = geo.vpolytope(V)
        v = vol.volume_mc(X, 200_000, seed=k)
        assert abs(v.value - ConvexHull(np.vstack([V, -V])).volume) <= 3 * v.std_error


def test_mc_standard_error_scaling():
    X = geo.ball(1.0, 3)
    a = vol.volume_mc(X, 250_000, seed=1)
    b = vol.volume_mc(X, 500_000, seed=1)
    assert a.std_error / b.std_error == pytest.approx(math.sqrt(2), rel=0.1)


def test_mc_rejects_small_budget_and_negative_seed():
    with pytest.raises(PolarDualityError):
        vol.volume_mc(geo.ball(1.0, 2), 999)
    with pytest.raises(PolarDualityError):
        vol.volume_mc(geo.ball(1.0, 2), 10_000, seed=-1)


def test_estimate_invariants():
    with pytest.raises(PolarDualityError):
        vol.VolumeEstimate(-1.0)
    with pytest.raises(PolarDualityError):
        vol.VolumeEstimate(1.0, std_error=0.1, method="exact")


# -- Mahler volume and the sandwich ----------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.floats(0.2, 3.0), st.integers(0, 2**31))
def test_ellipsoid_mahler_equals_bs(n, hbar, seed):
    A = random_spd(np.random.default_rng(seed), n)
    v = vol.mahler_volume(geo.ellipsoid(A, hbar))
    assert v.method == "exact"
    assert v.value == pytest.approx(vol.bounds(n, hbar).bs, rel=1e-9)


def test_mahler_examples():
    assert vol.mahler_volume(geo.ellipsoid([[3.0, 1.0], [1.0, 2.0]])).value == pytest.approx(math.pi**2, rel=1e-12)
    assert vol.mahler_volume(geo.box([1.0, 1.0])).value == pytest.approx(8.0, rel=1e-12)
    for a in (0.01, 1.0, 37.0):
        assert vol.mahler_volume(geo.box([a])).value == pytest.approx(4.0, rel=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_box_mahler_is_conjecture_value(rng, n):
    hbar = rng.uniform(0.3, 2.0)
    v = vol.mahler_volume(geo.box(rng.uniform(0.1, 5.0, n), hbar))
    assert v.value == pytest.approx((4 * hbar) ** n / math.factorial(n), rel=1e-9)


def test_ellipsoid_reports_bs_equality():
    r = vol.check_bounds(geo.ellipsoid(np.diag([1.0, 2.0, 3.0])))
    assert abs(r.mahler.value - r.bs_bound) <= 1e-9 * r.bs_bound
    assert r.verdicts["blaschke_santalo_upper"]["equality"]
    assert r.passed


def test_square_sandwich():
    r = vol.check_bounds(geo.box([1.0, 1.0]))
    assert r.kuperberg_bound == pytest.approx(0.308425, abs=1e-6)
    assert r.mahler.value == pytest.approx(8.0)
    assert r.bs_bound == pytest.approx(9.869604, abs=1e-6)
    assert r.verdicts["kuperberg_lower"]["pass"] and r.verdicts["blaschke_santalo_upper"]["pass"]
    assert not r.verdicts["blaschke_santalo_upper"]["equality"]


def test_hexagon_sandwich_with_monte_carlo(rng):
    X = geo.vpolytope(random_polygon_vertices(rng, 3))
    r = vol.check_bounds(X, method="mc", samples=200_000, seed=2)
    assert r.mahler.method == "monte_carlo" and r.mahler.std_error > 0
    assert r.passed
    exact = vol.mahler_volume(X).value
    assert abs(r.mahler.value - exact) <= 3 * r.mahler.std_error


def test_mahler_conjecture_is_reported_without_verdict():
    r = vol.check_bounds(geo.box([1.0, 1.0]))
    assert "pass" not in r.verdicts["mahler_conjecture"]
    assert r.verdicts["mahler_conjecture"]["holds"]


def test_sweep_rows():
    rows = vol.sweep_rows(3, 1.0)
    assert [r[0] for r in rows] == [1, 2, 3]
    assert all(r[-1] and r[-2] for r in rows)
    assert rows[1][6] == pytest.approx(8.0)
    assert len(vol.SWEEP_HEADER.split(",")) == len(rows[0])
