"""Standard symplectic structure, quantum blobs and Lagrangian polar duality.

Phase-space vectors are ordered ``z = (x, p)`` and the symplectic form is
``sigma(z, z') = Jz . z'`` with ``J = [[0, I], [-I, 0]]``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidBodyError, PolarDualityError, UnsupportedError
from .geometry import ConvexBody, box, contains, ellipsoid, linear_image, polar_dual, support
from .volumes import ball_volume

SYMPLECTIC_TOL = 1e-12
EIGEN_FLOOR = 1e-12
TRANSVERSE_COND = 1e12


def standard_form(n: int) -> np.ndarray:
    """The ``2n x 2n`` matrix ``J``."""
    if n < 1:
        raise DimensionError(f"half-dimension must be positive, got {n}")
    eye, zero = np.eye(n), np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _half_dim(size: int, what: str) -> int:
    if size % 2 or size == 0:
        raise DimensionError(f"{what} must have even positive dimension, got {size}")
    return size // 2


def symplectic_form(z, w) -> float:
    z, w = np.asarray(z, dtype=float).ravel(), np.asarray(w, dtype=float).ravel()
    if z.shape != w.shape:
        raise DimensionError(f"phase points differ in dimension: {z.size} vs {w.size}")
    n = _half_dim(z.size, "phase points")
    # J z = (p, -x)
    return float(z[n:] @ w[:n] - z[:n] @ w[n:])


def is_symplectic(S, tol: float = SYMPLECTIC_TOL) -> bool:
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise DimensionError(f"S must be square, got shape {S.shape}")
    J = standard_form(_half_dim(S.shape[0], "S"))
    return bool(np.abs(S.T @ J @ S - J).max() <= tol)


def _matrix(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SymplecticMap:
    S: np.ndarray

    def __post_init__(self):
        S = _matrix(self.S)
        if not is_symplectic(S):
            J = standard_form(S.shape[0] // 2)
            raise PolarDualityError(f"matrix is not symplectic (defect {np.abs(S.T @ J @ S - J).max():.2e})")
        object.__setattr__(self, "S", S)

    @property
    def n(self) -> int:
        return self.S.shape[0] // 2

    def to_dict(self) -> dict:
        return {"n": self.n, "S": self.S.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "SymplecticMap":
        return cls(np.array(d["S"], dtype=float))


@dataclass(frozen=True, eq=False)
class PhaseSpaceEllipsoid:
    """``{z : Qz.z <= hbar}``."""

    Q: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        Q = _matrix(self.Q)
        _half_dim(Q.shape[0], "Q")
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1] or np.abs(Q - Q.T).max() > 1e-12 * max(1.0, np.abs(Q).max()):
            raise InvalidBodyError("Q must be a symmetric square matrix")
        if np.linalg.eigvalsh(Q)[0] <= 0:
            raise InvalidBodyError("Q is not positive definite")
        if not self.hbar > 0:
            raise InvalidBodyError("hbar must be positive")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.Q.shape[0] // 2

    def volume(self) -> float:
        _, logdet = np.linalg.slogdet(self.Q)
        return ball_volume(2 * self.n, math.sqrt(self.hbar)) * math.exp(-0.5 * logdet)

    def contains(self, points, tol: float = 1e-12) -> np.ndarray:
        Z = np.atleast_2d(points)
        return np.einsum("ij,jk,ik->i", Z, self.Q, Z) <= self.hbar * (1 + tol)

    def to_dict(self) -> dict:
        return {"n": self.n, "hbar": self.hbar, "Q": self.Q.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "PhaseSpaceEllipsoid":
        return cls(np.array(d["Q"], dtype=float), d.get("hbar", 1.0))


def to_json(obj) -> str:
    return json.dumps(obj.to_dict(), sort_keys=True)


@dataclass(frozen=True, eq=False)
class QuantumBlob:
    S: SymplecticMap
    blob: PhaseSpaceEllipsoid
    A: np.ndarray

    def to_dict(self) -> dict:
        return {"S": self.S.to_dict(), "blob": self.blob.to_dict(), "A": self.A.tolist()}


def spd_power(A, power: float) -> np.ndarray:
    """``A^power`` by symmetric eigendecomposition; rejects eigenvalues below 1e-12."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"A must be square, got {A.shape}")
    if np.abs(A - A.T).max() > 1e-12 * max(1.0, np.abs(A).max()):
        raise InvalidBodyError("A is not symmetric")
    w, V = np.linalg.eigh(0.5 * (A + A.T))
    if w[0] < EIGEN_FLOOR:
        raise InvalidBodyError(f"A is not positive definite (smallest eigenvalue {w[0]:.3e})")
    return (V * w**power) @ V.T


def quantum_blob(A, hbar: float = 1.0) -> QuantumBlob:
    """``S = diag(A^-1/2, A^1/2)`` and its image of the ball of radius ``sqrt(hbar)``."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    lo, hi = spd_power(A, -0.5), spd_power(A, 0.5)
    zero = np.zeros_like(A)
    S = np.block([[lo, zero], [zero, hi]])
    Q = np.block([[A, zero], [zero, spd_power(A, -1.0)]])
    return QuantumBlob(SymplecticMap(S), PhaseSpaceEllipsoid(0.5 * (Q + Q.T), hbar), _matrix(A))


def sample_blob(qb: QuantumBlob, samples: int, seed: int = 0) -> np.ndarray:
    """Uniform samples of the blob: ``S`` applied to uniform points of the ball."""
    n2 = 2 * qb.S.n
    rng = np.random.Generator(np.random.Philox(seed))
    g = rng.standard_normal((samples, n2))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = rng.random(samples) ** (1.0 / n2)
    ball = math.sqrt(qb.blob.hbar) * g * r[:, None]
    return ball @ qb.S.S.T


def product_contains(A, hbar: float, points) -> np.ndarray:
    """Membership of phase points in ``X x X^hbar`` with ``X = ellipsoid(A)``."""
    X = ellipsoid(A, hbar)
    Z = np.atleast_2d(points)
    n = X.dim
    return contains(X, Z[:, :n]) & contains(polar_dual(X), Z[:, n:])


def blob_violations(A, hbar: float = 1.0, samples: int = 100_000, seed: int = 0) -> int:
    """Sampled blob points falling outside ``X x X^hbar``."""
    qb = quantum_blob(A, hbar)
    return int(np.count_nonzero(~product_contains(A, hbar, sample_blob(qb, samples, seed))))


def inscribed_family_certificate(n: int, hbar: float = 1.0, grid=None) -> dict:
    """Volumes of ``{|x|^2 / alpha + |p|^2 / beta <= hbar}`` inscribed in ``B x B``.

    ``B`` is the ball of radius ``sqrt(hbar)``, which is its own polar dual.
    Inscription is decided from the largest eigenvalue of each block of
    ``hbar Q^-1`` (the squared extent of the projection).  The certificate
    holds when no inscribed member beats the ball of radius ``sqrt(hbar)``.
    """
    grid = np.linspace(0.1, 2.0, 39) if grid is None else np.asarray(grid, dtype=float)
    ref = ball_volume(2 * n, math.sqrt(hbar))
    best, best_ab, inscribed = 0.0, None, 0
    for a in grid:
        for b in grid:
            E = PhaseSpaceEllipsoid(np.diag(np.r_[np.full(n, 1 / a), np.full(n, 1 / b)]), hbar)
            cov = hbar * np.linalg.inv(E.Q)
            if max(np.linalg.eigvalsh(cov[:n, :n])[-1], np.linalg.eigvalsh(cov[n:, n:])[-1]) > hbar * (1 + 1e-12):
                continue
            inscribed += 1
            v = E.volume()
            if v > best:
                best, best_ab = v, (float(a), float(b))
    return {
        "n": n,
        "hbar": hbar,
        "inscribed_members": inscribed,
        "max_volume": best,
        "argmax": best_ab,
        "blob_volume": ref,
        "holds": best <= ref * (1 + 1e-12),
    }


@dataclass(frozen=True, eq=False)
class LagrangianFrame:
    """``2n x n`` matrix whose columns span a Lagrangian plane."""

    L: np.ndarray

    def __post_init__(self):
        L = _matrix(self.L)
        if L.ndim != 2 or L.shape[0] != 2 * L.shape[1]:
            raise DimensionError(f"a Lagrangian frame is 2n x n, got shape {L.shape}")
        n = L.shape[1]
        if np.linalg.matrix_rank(L) != n:
            raise InvalidBodyError("frame columns are linearly dependent")
        defect = np.abs(L.T @ standard_form(n) @ L).max()
        if defect > SYMPLECTIC_TOL * max(1.0, np.abs(L).max() ** 2):
            raise InvalidBodyError(f"frame is not isotropic (|L^T J L| = {defect:.2e})")
        object.__setattr__(self, "L", L)

    @property
    def n(self) -> int:
        return self.L.shape[1]

    @classmethod
    def x_plane(cls, n: int) -> "LagrangianFrame":
        return cls(np.vstack([np.eye(n), np.zeros((n, n))]))

    @classmethod
    def p_plane(cls, n: int) -> "LagrangianFrame":
        return cls(np.vstack([np.zeros((n, n)), np.eye(n)]))


def lagrangian_polar_dual(frame: LagrangianFrame, other: LagrangianFrame, C: ConvexBody) -> ConvexBody:
    """``{c' : sigma(L c, L' c') <= hbar for all c in C}`` in the coordinates of ``other``."""
    if frame.n != other.n or C.dim != frame.n:
        raise DimensionError("frames and body must share the dimension n")
    if not (C.symmetric and C.is_centered):
        raise InvalidBodyError("the body must be symmetric and centered")
    M = other.L.T @ standard_form(frame.n) @ frame.L
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > TRANSVERSE_COND:
        raise PolarDualityError(f"frames are not transverse (cond M = {cond:.2e})")
    return polar_dual(linear_image(M, C))


def gromov_width_1d(a: float, hbar: float = 1.0, n: int = 1) -> float:
    """Area of ``[-a, a] x [-a, a]^hbar``, the Gromov width of the product for n = 1."""
    if n != 1:
        raise UnsupportedError("Gromov width is only available for n = 1")
    if not a > 0:
        raise InvalidBodyError(f"half-width must be positive, got {a}")
    dual = polar_dual(box([a], hbar))
    width = support(dual, [1.0]) + support(dual, [-1.0])
    return 2 * a * width
