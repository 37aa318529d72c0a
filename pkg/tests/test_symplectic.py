import math

import numpy as np
import pytest

from polarduality import geometry as geo
from polarduality import symplectic as sym
from polarduality.errors import DimensionError, InvalidBodyError, PolarDualityError, UnsupportedError
from polarduality.volumes import ball_volume

from conftest import random_directions, random_spd


def test_form_convention():
    assert sym.symplectic_form([1.0, 0.0], [0.0, 1.0]) == -1.0
    J = sym.standard_form(2)
    np.testing.assert_array_equal(J @ J, -np.eye(4))


def test_form_is_alternating(rng):
    for _ in range(100):
        z, w = rng.standard_normal(6), rng.standard_normal(6)
        assert sym.symplectic_form(z, z) == pytest.approx(0.0, abs=1e-14)
        assert abs(sym.symplectic_form(z, w) + sym.symplectic_form(w, z)) <= 1e-14
        assert sym.symplectic_form(z, w) == pytest.approx(sym.standard_form(3) @ z @ w, abs=1e-13)


def test_form_dimension_errors():
    with pytest.raises(DimensionError):
        sym.symplectic_form([1.0, 0.0], [1.0, 0.0, 0.0, 0.0])
    with pytest.raises(DimensionError):
        sym.symplectic_form([1.0, 0.0, 2.0], [1.0, 0.0, 1.0])


def test_is_symplectic_examples():
    assert sym.is_symplectic(np.eye(4))
    assert sym.is_symplectic(np.diag([0.5, 2.0]))
    assert not sym.is_symplectic(np.diag([2.0, 2.0]))
    with pytest.raises(DimensionError):
        sym.is_symplectic(np.eye(3))


def test_symplectic_map_validates():
    with pytest.raises(PolarDualityError, match="not symplectic"):
        sym.SymplecticMap(np.diag([2.0, 2.0]))
    S = sym.SymplecticMap(np.diag([0.5, 2.0]))
    assert sym.SymplecticMap.from_dict(S.to_dict()).S.tolist() == S.S.tolist()


def test_blob_of_identity():
    qb = sym.quantum_blob(np.eye(2), 0.7)
    np.testing.assert_allclose(qb.S.S, np.eye(4), atol=1e-15)
    np.testing.assert_allclose(qb.blob.Q, np.eye(4), atol=1e-15)
    assert qb.blob.hbar == 0.7


def test_blob_of_diagonal():
    qb = sym.quantum_blob(np.diag([4.0, 1.0]))
    np.testing.assert_allclose(qb.S.S, np.diag([0.5, 1.0, 2.0, 1.0]), atol=1e-15)


def test_blob_rejects_non_spd():
    with pytest.raises(InvalidBodyError):
        sym.quantum_blob([[1.0, 2.0], [2.0, 1.0]])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_blob_is_symplectic_and_volume_preserving(rng, n):
    for _ in range(25):
        hbar = rng.uniform(0.3, 3.0)
        qb = sym.quantum_blob(random_spd(rng, n), hbar)
        assert sym.is_symplectic(qb.S.S, 1e-12)
        assert qb.blob.volume() == pytest.approx(ball_volume(2 * n, math.sqrt(hbar)), rel=1e-9)


def test_blob_matrix_is_pullback_of_ball(rng):
    # S B(sqrt hbar) = {z : S^-T S^-1 z.z <= hbar}
    qb = sym.quantum_blob(random_spd(rng, 2), 1.3)
    Sinv = np.linalg.inv(qb.S.S)
    np.testing.assert_allclose(qb.blob.Q, Sinv.T @ Sinv, rtol=1e-12, atol=1e-12)


def test_blob_containment(rng):
    A = random_spd(rng, 2)
    qb = sym.quantum_blob(A, 0.8)
    Z = sym.sample_blob(qb, 100_000, seed=1)
    assert np.all(qb.blob.contains(Z))
    n = 2
    X = geo.ellipsoid(A, 0.8)
    inside = geo.contains(X, Z[:, :n]) & geo.contains(geo.polar_dual(X), Z[:, n:])
    assert inside.all()
    assert sym.blob_violations(A, 0.8, 100_000, seed=2) == 0


def test_inscribed_family_certificate():
    for n in (1, 2, 3):
        cert = sym.inscribed_family_certificate(n, 1.0)
        assert cert["holds"] and cert["inscribed_members"] > 0
        assert cert["argmax"] == pytest.approx((1.0, 1.0))
        assert cert["max_volume"] == pytest.approx(cert["blob_volume"], rel=1e-12)


def test_phase_space_ellipsoid_round_trip():
    E = sym.PhaseSpaceEllipsoid(np.diag([1.0, 2.0, 3.0, 4.0]), 0.5)
    F = sym.PhaseSpaceEllipsoid.from_dict(E.to_dict())
    assert F.Q.tolist() == E.Q.tolist() and F.hbar == E.hbar
    assert '"hbar": 0.5' in sym.to_json(E)
    with pytest.raises(InvalidBodyError):
        sym.PhaseSpaceEllipsoid(np.diag([1.0, -1.0]))
    with pytest.raises(DimensionError):
        sym.PhaseSpaceEllipsoid(np.eye(3))


# -- Lagrangian polar duality ------------------------------------------------


def test_standard_frames_give_polar_dual(rng):
    x, p = sym.LagrangianFrame.x_plane(2), sym.LagrangianFrame.p_plane(2)
    U = random_directions(rng, 2, 300)
    for C in (geo.ellipsoid(random_spd(rng, 2)), geo.box([0.5, 2.0]), geo.vpolytope(rng.standard_normal((4, 2)))):
        expected = geo.support_many(geo.polar_dual(C), U)
        for a, b in ((x, p), (p, x)):
            got = geo.support_many(sym.lagrangian_polar_dual(a, b, C), U)
            np.testing.assert_allclose(got, expected, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("theta", [0.0, 0.3, 1.1, 2.5])
@pytest.mark.parametrize("a", [0.5, 2.0])
def test_rotated_frames_against_dense_grid(theta, a):
    hbar = 0.8
    ell = np.array([[math.cos(theta)], [math.sin(theta)]])
    ell2 = np.array([[-math.sin(theta)], [math.cos(theta)]])
    D = sym.lagrangian_polar_dual(sym.LagrangianFrame(ell), sym.LagrangianFrame(ell2), geo.box([a], hbar))
    # brute force: c' is admissible iff sigma(c l, c' l') <= hbar for every c in [-a, a]
    c = np.linspace(-a, a, 401)
    cp = np.linspace(-10, 10, 20_001)
    sig = np.array([sym.symplectic_form(ell[:, 0], ell2[:, 0])])
    ok = (np.outer(cp, c) * sig).max(axis=1) <= hbar * (1 + 1e-12)
    lo, hi = cp[ok].min(), cp[ok].max()
    step = cp[1] - cp[0]
    assert geo.support(D, [1.0]) == pytest.approx(hi, abs=step)
    assert -geo.support(D, [-1.0]) == pytest.approx(lo, abs=step)


def test_frames_must_be_transverse():
    x = sym.LagrangianFrame.x_plane(1)
    with pytest.raises(PolarDualityError, match="transverse"):
        sym.lagrangian_polar_dual(x, x, geo.box([1.0]))


def test_frame_validation():
    with pytest.raises(InvalidBodyError, match="isotropic"):
        sym.LagrangianFrame(np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(InvalidBodyError, match="dependent"):
        sym.LagrangianFrame(np.array([[1.0, 2.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]))
    with pytest.raises(DimensionError):
        sym.LagrangianFrame(np.eye(3))


def test_lagrangian_dual_needs_centered_body():
    x, p = sym.LagrangianFrame.x_plane(1), sym.LagrangianFrame.p_plane(1)
    with pytest.raises(InvalidBodyError):
        sym.lagrangian_polar_dual(x, p, geo.box([1.0], center=[0.5]))


# -- Gromov width ------------------------------------------------------------


@pytest.mark.parametrize("a", [0.1, 1.0, 5.0, 123.0])
@pytest.mark.parametrize("hbar", [0.5, 1.0, 2.0])
def test_gromov_width(a, hbar):
    assert sym.gromov_width_1d(a, hbar) == pytest.approx(4 * hbar, rel=1e-14)


def test_gromov_width_errors():
    with pytest.raises(UnsupportedError):
        sym.gromov_width_1d(1.0, 1.0, n=2)
    with pytest.raises(InvalidBodyError):
        sym.gromov_width_1d(0.0)
