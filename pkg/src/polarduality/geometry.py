"""Symmetric convex bodies, their polar duals, supports and Santalo points.

Bodies live in position space and carry their own action unit ``hbar``; the
polar dual of ``X`` is the set of momenta ``p`` with ``p . x <= hbar`` for
every ``x`` in ``X``.  Five representations are supported:

``ball``       ``{x : |x - c| <= r}``
``ellipsoid``  ``{x : A (x - c) . (x - c) <= hbar}`` with ``A`` symmetric positive definite
``vpolytope``  convex hull of ``+-V`` (or of ``V`` alone when ``symmetric=False``)
``hpolytope``  ``{x : |u_j . (x - c)| <= hbar}``
``box``        ``{x : |x_j - c_j| <= a_j}``

All bodies are immutable; every function here is pure.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from . import _simplex
from .errors import (
    ConvergenceError,
    DimensionError,
    InvalidBodyError,
    NotInteriorError,
    PolarDualityError,
)

KINDS = ("ball", "ellipsoid", "vpolytope", "hpolytope", "box")

SYMMETRY_TOL = 1e-12
MAX_VPOLYTOPE_DIM = 6
ILL_CONDITIONED = 1e8


def _frozen(a, dtype=float):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """A validated convex body.  Use the constructors below or :func:`make_body`."""

    kind: str
    dim: int
    hbar: float = 1.0
    radius: float | None = None
    matrix: np.ndarray | None = None
    vertices: np.ndarray | None = None
    normals: np.ndarray | None = None
    half_widths: np.ndarray | None = None
    center: np.ndarray = field(default=None)
    symmetric: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidBodyError(f"unknown body kind {self.kind!r}; expected one of {KINDS}")
        if not (np.isfinite(self.hbar) and self.hbar > 0):
            raise InvalidBodyError(f"hbar must be positive, got {self.hbar}")
        if self.dim < 1:
            raise InvalidBodyError("dimension must be at least 1")
        center = np.zeros(self.dim) if self.center is None else np.asarray(self.center, float)
        if center.shape != (self.dim,) or not np.all(np.isfinite(center)):
            raise InvalidBodyError(f"center must be a finite vector of length {self.dim}")
        object.__setattr__(self, "center", _frozen(center))
        object.__setattr__(self, "hbar", float(self.hbar))
        getattr(self, "_validate_" + self.kind)()
        if not self.symmetric and self.kind != "vpolytope":
            raise InvalidBodyError("only vertex polytopes may be flagged asymmetric")

    def _validate_ball(self):
        if self.radius is None or not (np.isfinite(self.radius) and self.radius > 0):
            raise InvalidBodyError(f"ball radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    def _validate_ellipsoid(self):
        A = np.asarray(self.matrix, dtype=float)
        if A.shape != (self.dim, self.dim):
            raise InvalidBodyError(f"ellipsoid matrix must be {self.dim}x{self.dim}, got {A.shape}")
        if not np.all(np.isfinite(A)):
            raise InvalidBodyError("ellipsoid matrix has non-finite entries")
        scale = max(np.abs(A).max(), 1.0)
        if np.abs(A - A.T).max() > SYMMETRY_TOL * scale:
            raise InvalidBodyError("ellipsoid matrix is not symmetric")
        A = 0.5 * (A + A.T)
        eig = np.linalg.eigvalsh(A)
        if eig[0] <= 0:
            raise InvalidBodyError(
                "ellipsoid matrix is not positive definite "
                f"(eigenvalues {np.array2string(eig, precision=6)})"
            )
        object.__setattr__(self, "matrix", _frozen(A))

    def _validate_vpolytope(self):
        V = np.asarray(self.vertices, dtype=float)
        if V.size == 0:
            raise InvalidBodyError("vertex list is empty")
        V = V.reshape(-1, self.dim) if V.ndim == 1 and self.dim == 1 else V
        if V.ndim != 2 or V.shape[1] != self.dim:
            raise InvalidBodyError(f"vertices must have shape (k, {self.dim}), got {V.shape}")
        if not np.all(np.isfinite(V)):
            raise InvalidBodyError("vertices have non-finite entries")
        if self.dim > MAX_VPOLYTOPE_DIM:
            raise InvalidBodyError(f"vertex polytopes are limited to dimension {MAX_VPOLYTOPE_DIM}")
        spread = V if self.symmetric else V - V.mean(axis=0)
        if V.shape[0] < (self.dim if self.symmetric else self.dim + 1) or (
            np.linalg.matrix_rank(spread) < self.dim
        ):
            raise InvalidBodyError("vertices do not span the space: the polytope has empty interior")
        object.__setattr__(self, "vertices", _frozen(V))

    def _validate_hpolytope(self):
        U = np.asarray(self.normals, dtype=float)
        if U.size == 0:
            raise InvalidBodyError("normal list is empty")
        U = U.reshape(-1, self.dim) if U.ndim == 1 and self.dim == 1 else U
        if U.ndim != 2 or U.shape[1] != self.dim:
            raise InvalidBodyError(f"normals must have shape (k, {self.dim}), got {U.shape}")
        if not np.all(np.isfinite(U)):
            raise InvalidBodyError("normals have non-finite entries")
        if np.linalg.matrix_rank(U) < self.dim:
            raise InvalidBodyError("normals do not span the space: the polytope is unbounded")
        object.__setattr__(self, "normals", _frozen(U))

    def _validate_box(self):
        a = np.atleast_1d(np.asarray(self.half_widths, dtype=float))
        if a.shape != (self.dim,):
            raise InvalidBodyError(f"box needs {self.dim} half-widths, got {a.shape}")
        if not np.all(np.isfinite(a)) or np.any(a <= 0):
            raise InvalidBodyError(f"box half-widths must be positive, got {a}")
        object.__setattr__(self, "half_widths", _frozen(a))

    # -- derived data (centered coordinates) -------------------------------

    @property
    def is_centered(self) -> bool:
        return self.symmetric and not np.any(self.center)

    @cached_property
    def _points(self) -> np.ndarray:
        """Vertex cloud of a V-polytope, including the reflected copies."""
        V = self.vertices
        return np.vstack([V, -V]) if self.symmetric else V

    @cached_property
    def _inverse(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    @cached_property
    def _facets(self):
        """``(A, b)`` with the body equal to ``{y : A y <= b}``, ``y = x - center``."""
        if self.kind == "box":
            eye = np.eye(self.dim)
            return np.vstack([eye, -eye]), np.concatenate([self.half_widths, self.half_widths])
        if self.kind == "hpolytope":
            U = self.normals
            return np.vstack([U, -U]), np.full(2 * len(U), self.hbar)
        if self.kind == "vpolytope":
            return _point_facets(self._points)
        raise PolarDualityError(f"{self.kind} has no facet representation")

    @cached_property
    def _hvertices(self) -> np.ndarray:
        """Vertices of an H-polytope (centered coordinates)."""
        U = np.vstack([self.normals, -self.normals])
        A, b = _point_facets(U)
        return self.hbar * A / b[:, None]


def _hull2d(points: np.ndarray) -> np.ndarray:
    """Counter-clockwise convex hull of 2D points (monotone chain), no repeats."""
    pts = np.unique(np.round(points, 15), axis=0)
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def _point_facets(P: np.ndarray):
    """Facet inequalities ``A y <= b`` of conv(P); rows of ``A`` are unit normals."""
    n = P.shape[1]
    if n == 1:
        return np.array([[1.0], [-1.0]]), np.array([P.max(), -P.min()])
    if n == 2:
        H = _hull2d(P)
        edges = np.roll(H, -1, axis=0) - H
        A = np.column_stack([edges[:, 1], -edges[:, 0]])
        A /= np.linalg.norm(A, axis=1)[:, None]
        return A, np.einsum("ij,ij->i", A, H)
    hull = ConvexHull(P)
    eq = hull.equations
    return eq[:, :-1], -eq[:, -1]


# -- construction -----------------------------------------------------------


def ball(radius, dim, hbar=1.0, center=None) -> ConvexBody:
    return ConvexBody("ball", int(dim), hbar, radius=radius, center=center)


def ellipsoid(matrix, hbar=1.0, center=None) -> ConvexBody:
    A = np.atleast_2d(np.asarray(matrix, dtype=float))
    return ConvexBody("ellipsoid", A.shape[0], hbar, matrix=A, center=center)


def vpolytope(vertices, hbar=1.0, center=None, symmetric=True) -> ConvexBody:
    V = np.asarray(vertices, dtype=float)
    V = V.reshape(-1, 1) if V.ndim == 1 else V
    return ConvexBody("vpolytope", V.shape[1], hbar, vertices=V, center=center, symmetric=symmetric)


def hpolytope(normals, hbar=1.0, center=None) -> ConvexBody:
    U = np.asarray(normals, dtype=float)
    U = U.reshape(-1, 1) if U.ndim == 1 else U
    return ConvexBody("hpolytope", U.shape[1], hbar, normals=U, center=center)


def box(half_widths, hbar=1.0, center=None) -> ConvexBody:
    a = np.atleast_1d(np.asarray(half_widths, dtype=float))
    return ConvexBody("box", a.size, hbar, half_widths=a, center=center)


def variance_box(variances, hbar=1.0) -> ConvexBody:
    """Box with half-widths ``sqrt(2 sigma_jj)`` built from position variances."""
    s = np.atleast_1d(np.asarray(variances, dtype=float))
    if np.any(~np.isfinite(s)) or np.any(s <= 0):
        raise InvalidBodyError(f"variances must be positive, got {s}")
    return box(np.sqrt(2.0 * s), hbar)


def make_body(spec: dict) -> ConvexBody:
    """Build a body from its JSON-style description.

    Recognised keys: ``kind``, ``hbar``, ``center`` and one of ``radius``
    (with ``dim``), ``matrix``, ``vertices`` (optional ``symmetric``),
    ``normals``, ``half_widths`` or ``variances`` (box kind).
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidBodyError("body description must be an object with a 'kind' key")
    kind = spec["kind"]
    hbar = float(spec.get("hbar", 1.0))
    center = spec.get("center")
    try:
        if kind == "ball":
            return ball(spec["radius"], spec.get("dim", 1 if center is None else len(center)), hbar, center)
        if kind == "ellipsoid":
            return ellipsoid(spec["matrix"], hbar, center)
        if kind == "vpolytope":
            return vpolytope(spec["vertices"], hbar, center, bool(spec.get("symmetric", True)))
        if kind == "hpolytope":
            return hpolytope(spec["normals"], hbar, center)
        if kind == "box":
            if "variances" in spec:
                body = variance_box(spec["variances"], hbar)
                return body if center is None else box(body.half_widths, hbar, center)
            return box(spec["half_widths"], hbar, center)
    except KeyError as exc:
        raise InvalidBodyError(f"{kind} description is missing {exc.args[0]!r}") from None
    raise InvalidBodyError(f"unknown body kind {kind!r}; expected one of {KINDS}")


def body_to_dict(X: ConvexBody) -> dict:
    d = {"kind": X.kind, "hbar": X.hbar}
    if X.kind == "ball":
        d.update(radius=X.radius, dim=X.dim)
    elif X.kind == "ellipsoid":
        d["matrix"] = X.matrix.tolist()
    elif X.kind == "vpolytope":
        d["vertices"] = X.vertices.tolist()
        if not X.symmetric:
            d["symmetric"] = False
    elif X.kind == "hpolytope":
        d["normals"] = X.normals.tolist()
    else:
        d["half_widths"] = X.half_widths.tolist()
    if np.any(X.center):
        d["center"] = X.center.tolist()
    return d


def body_to_json(X: ConvexBody, **kwargs) -> str:
    return json.dumps(body_to_dict(X), **kwargs)


def body_from_json(text: str) -> ConvexBody:
    return make_body(json.loads(text))


# -- duality ----------------------------------------------------------------


def polar_dual(X: ConvexBody) -> ConvexBody:
    """Exact polar dual of a centered symmetric body."""
    if not X.is_centered:
        raise PolarDualityError(
            "polar_dual needs a body centered at the origin; use polar_dual_about for translated bodies"
        )
    h = X.hbar
    if X.kind == "ball":
        # h / sqrt(h) can round away from sqrt(h); keep the fixed point exact
        r = X.radius if X.radius == math.sqrt(h) else h / X.radius
        return ball(r, X.dim, h)
    if X.kind == "ellipsoid":
        return ellipsoid(X._inverse, h)
    if X.kind == "vpolytope":
        return hpolytope(X.vertices, h)
    if X.kind == "hpolytope":
        return vpolytope(X.normals, h)
    return vpolytope(np.diag(h / X.half_widths), h)


def _gauge(X: ConvexBody, y: np.ndarray) -> np.ndarray:
    """Minkowski functional of a symmetric body at centered points ``y`` (rows)."""
    if X.kind == "ball":
        return np.linalg.norm(y, axis=-1) / X.radius
    if X.kind == "ellipsoid":
        return np.sqrt(np.maximum(np.einsum("...i,ij,...j->...", y, X.matrix, y), 0.0) / X.hbar)
    if X.kind == "box":
        return np.max(np.abs(y) / X.half_widths, axis=-1)
    if X.kind == "hpolytope":
        return np.max(np.abs(y @ X.normals.T), axis=-1) / X.hbar
    A, b = X._facets
    return np.max((y @ A.T) / b, axis=-1)


def _is_interior(X: ConvexBody, x: np.ndarray, margin: float = 1e-12) -> bool:
    x = np.asarray(x, dtype=float)
    if X.kind == "vpolytope" and not X.symmetric:
        A, b = X._facets
        return bool(np.all(A @ x - b < -margin * np.abs(b).max()))
    return bool(_gauge(X, x - X.center) < 1.0 - margin)


def polar_dual_about(X: ConvexBody, x0) -> ConvexBody:
    """Polar dual of ``X - x0``, for ``x0`` strictly inside ``X``.

    When ``x0`` is not the center the dual is no longer symmetric: polytopes
    come back as asymmetric V-polytopes and ellipsoids as translated
    ellipsoids, both expressed in momentum coordinates about the origin.
    """
    x0 = _as_point(X, x0)
    if not _is_interior(X, x0):
        raise NotInteriorError(f"x0={x0.tolist()} is not strictly interior; the dual would be unbounded")
    d = X.center - x0
    h = X.hbar
    if X.symmetric and np.abs(d).max() <= SYMMETRY_TOL * max(1.0, np.abs(x0).max()):
        return polar_dual(_recentered(X))
    if X.kind in ("ball", "ellipsoid"):
        Ainv = X._inverse if X.kind == "ellipsoid" else np.eye(X.dim) * X.radius**2 / h
        # |p|_{A^-1} sqrt(h) + d.p <= h, squared out into a translated ellipsoid
        Q = h * Ainv - np.outer(d, d)
        pc = -h * np.linalg.solve(Q, d)
        rhs = h * h + h * h * d @ np.linalg.solve(Q, d)
        return ellipsoid(Q * h / rhs, h, center=pc)
    A, b = X._facets
    if X.kind == "vpolytope" and not X.symmetric:
        gap = b - A @ x0
    else:
        gap = b + A @ d
    return vpolytope(h * A / gap[:, None], h, symmetric=False)


def _recentered(X: ConvexBody) -> ConvexBody:
    d = body_to_dict(X)
    d.pop("center", None)
    return make_body(d)


# -- membership and support -------------------------------------------------


def _as_point(X: ConvexBody, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (X.dim,):
        raise DimensionError(f"point has shape {x.shape}, body dimension is {X.dim}")
    if not np.all(np.isfinite(x)):
        raise PolarDualityError("point has non-finite coordinates")
    return x


def membership(X: ConvexBody, x, tol: float = 1e-12) -> bool:
    """Whether ``x`` lies in ``X``.

    V-polytopes are decided by a linear feasibility problem: ``x`` must be a
    convex combination of the vertices (with their reflections when the
    body is symmetric).
    """
    x = _as_point(X, x)
    if X.kind != "vpolytope":
        return bool(_gauge(X, x - X.center) <= 1.0 + tol)
    y = x - X.center
    V = X.vertices
    k = len(V)
    if X.symmetric:
        # y = V^T (s - t), s, t >= 0, minimise sum(s + t)
        res = linprog(np.ones(2 * k), A_eq=np.hstack([V.T, -V.T]), b_eq=y, bounds=(0, None), method="highs")
        return bool(res.status == 0 and res.fun <= 1.0 + tol)
    A_eq = np.vstack([V.T, np.ones((1, k))])
    res = linprog(np.zeros(k), A_eq=A_eq, b_eq=np.append(y, 1.0), bounds=(0, None), method="highs")
    return res.status == 0


def contains(X: ConvexBody, points, tol: float = 1e-12) -> np.ndarray:
    """Vectorised membership test for an ``(m, n)`` array of points."""
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != X.dim:
        raise DimensionError(f"points must have shape (m, {X.dim}), got {P.shape}")
    y = P - X.center
    if X.kind == "vpolytope":
        A, b = X._facets
        scale = np.abs(b).max()
        return np.all(y @ A.T <= b + tol * scale, axis=1)
    return _gauge(X, y) <= 1.0 + tol


def support(X: ConvexBody, u, method: str = "auto") -> float:
    """Support function ``max{u . x : x in X}``.

    ``method="lp"`` evaluates H-polytope supports with a linear program
    instead of the cached vertex enumeration.
    """
    u = _as_point(X, u)
    if not np.any(u):
        raise PolarDualityError("support direction must be nonzero")
    if X.kind == "hpolytope" and method == "lp":
        return float(_hpolytope_support_lp(X, u) + X.center @ u)
    return float(support_many(X, u[None, :])[0])


def support_many(X: ConvexBody, U) -> np.ndarray:
    """Support function evaluated on each row of ``U``."""
    U = np.asarray(U, dtype=float)
    if U.ndim != 2 or U.shape[1] != X.dim:
        raise DimensionError(f"directions must have shape (m, {X.dim}), got {U.shape}")
    if X.kind == "ball":
        h = X.radius * np.linalg.norm(U, axis=1)
    elif X.kind == "ellipsoid":
        h = np.sqrt(X.hbar * np.einsum("ij,jk,ik->i", U, X._inverse, U))
    elif X.kind == "box":
        h = np.abs(U) @ X.half_widths
    elif X.kind == "vpolytope":
        h = (U @ X._points.T).max(axis=1)
    else:
        h = (U @ X._hvertices.T).max(axis=1)
    return h + U @ X.center


def _hpolytope_support_lp(X: ConvexBody, u: np.ndarray) -> float:
    U = X.normals
    A_ub = np.vstack([U, -U])
    b_ub = np.full(2 * len(U), X.hbar)
    res = linprog(-u, A_ub=A_ub, b_ub=b_ub, bounds=(None, None), method="highs-ds")
    if res.status != 0:
        raise PolarDualityError(f"support linear program failed: {res.message}")
    # re-solve on the active set so the optimum is exact to rounding
    slack = b_ub - A_ub @ res.x
    active = []
    for i in np.argsort(slack):
        if slack[i] > 1e-6 * X.hbar:
            break
        trial = A_ub[active + [i]]
        if np.linalg.matrix_rank(trial) == len(active) + 1:
            active.append(int(i))
        if len(active) == X.dim:
            break
    if len(active) == X.dim:
        x = np.linalg.solve(A_ub[active], b_ub[active])
        if np.all(A_ub @ x <= X.hbar * (1 + 1e-9)) and u @ x >= -res.fun - 1e-7 * (1 + abs(res.fun)):
            return float(u @ x)
    return float(-res.fun)


# -- linear images ----------------------------------------------------------


def linear_image(M, X: ConvexBody) -> ConvexBody:
    """Image ``M X`` of a body under an invertible linear map."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape != (X.dim, X.dim):
        raise DimensionError(f"map must be {X.dim}x{X.dim}, got {M.shape}")
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > 1e15:
        raise PolarDualityError("linear map is singular")
    if cond > ILL_CONDITIONED:
        warnings.warn(f"linear map is ill-conditioned (condition number {cond:.3g})", stacklevel=2)
    Minv = np.linalg.inv(M)
    h = X.hbar
    c = M @ X.center if np.any(X.center) else None
    if X.kind == "ball":
        s = np.linalg.svd(M, compute_uv=False)
        if s[0] - s[-1] <= 1e-14 * s[0]:
            return ball(X.radius * s[0], X.dim, h, c)
        return ellipsoid(Minv.T @ (np.eye(X.dim) * h / X.radius**2) @ Minv, h, c)
    if X.kind == "ellipsoid":
        B = Minv.T @ X.matrix @ Minv
        return ellipsoid(0.5 * (B + B.T), h, c)
    if X.kind == "vpolytope":
        return vpolytope(X.vertices @ M.T, h, c, X.symmetric)
    if X.kind == "hpolytope":
        return hpolytope(X.normals @ Minv, h, c)
    if not np.any(M - np.diag(np.diag(M))):
        return box(np.abs(np.diag(M)) * X.half_widths, h, c)
    return hpolytope((h / X.half_widths)[:, None] * Minv, h, c)


# -- Santalo point ----------------------------------------------------------


def sphere_area(n: int) -> float:
    """Surface measure of the unit sphere in R^n."""
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


def sphere_directions(n: int, samples: int, seed: int = 0) -> np.ndarray:
    """Antithetic uniform directions on the unit sphere (Philox stream)."""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    rng = np.random.Generator(np.random.Philox(seed))
    g = rng.standard_normal((max(samples // 2, 1), n))
    g /= np.linalg.norm(g, axis=1)[:, None]
    return np.vstack([g, -g])


def dual_volume_about(X: ConvexBody, x0, directions: np.ndarray, h_dirs: np.ndarray | None = None) -> float:
    """Radial Monte Carlo estimate of ``Vol((X - x0)^hbar)``.

    The polar body has radial function ``hbar / h_{X - x0}``, so its volume is
    ``(1/n) * integral over the sphere of (hbar / h_{X - x0})^n``.
    """
    x0 = np.asarray(x0, dtype=float)
    if h_dirs is None:
        h_dirs = support_many(X, directions)
    gap = h_dirs - directions @ x0
    if gap.min() <= 0:
        return math.inf
    n = X.dim
    if n == 1:
        return float(np.sum(X.hbar / gap))
    return float(sphere_area(n) / n * np.mean((X.hbar / gap) ** n))


def santalo_point(
    X: ConvexBody,
    mc_samples: int = 20000,
    seed: int = 0,
    tolerance: float = 1e-6,
    max_iter: int = 4000,
    restarts: int = 4,
    start=None,
) -> np.ndarray:
    """Interior point minimising the volume of the polar dual about it.

    The dual volume is estimated on one fixed set of random directions, so
    every iterate sees the same samples and the sampled objective stays
    convex.  A reflecting-simplex search with restarts minimises it; trial
    points that leave the interior are pulled back towards the simplex
    centroid.  The search starts at ``start`` when given, otherwise at the
    vertex mean (V-polytopes) or the stored center.
    """
    dirs = sphere_directions(X.dim, mc_samples, seed)
    if X.kind == "hpolytope" and X.dim > 2:
        h_dirs = np.array([_hpolytope_support_lp(X, u) for u in dirs]) + dirs @ X.center
    else:
        h_dirs = support_many(X, dirs)

    def objective(x):
        if not _is_interior(X, x):
            return math.inf
        return dual_volume_about(X, x, dirs, h_dirs)

    if start is not None:
        start = _as_point(X, start)
    elif X.kind == "vpolytope":
        start = X._points.mean(axis=0) + X.center
    else:
        start = X.center.copy()
    extent = support_many(X, np.eye(X.dim)) + support_many(X, -np.eye(X.dim))
    step = 0.1 * float(extent.min())

    best, fbest = start, objective(start)
    if not np.isfinite(fbest):
        raise NotInteriorError("starting point of the Santalo search is not interior")
    for attempt in range(restarts):
        x, fx, converged = _simplex.minimize(
            objective, best, step, xtol=tolerance, max_iter=max_iter, feasible=lambda z: _is_interior(X, z)
        )
        if not converged:
            raise ConvergenceError(
                f"Santalo search did not converge in {max_iter} iterations", best=x, value=fx
            )
        moved = np.abs(x - best).max()
        best, fbest = x, fx
        if moved <= tolerance and attempt > 0:
            break
        step *= 0.5
    return best
