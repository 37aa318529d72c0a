"""Concentration functionals and the uncertainty-principle checks built on them.

Every check returns a :class:`ConcentrationReport`.  A report passes when
``lhs >= rhs - tolerance`` for the asserted inequality; quantities that are
reported but not asserted live in ``details``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .. import _simplex
from ..errors import DimensionError, PolarDualityError
from ..geometry import ConvexBody, ball, body_to_dict, ellipsoid, polar_dual, sphere_directions, support_many
from ..volumes import GUARD_SIGMAS, bounds, mahler_volume, volume
from .grid import PhaseSpaceFunction, SampledFunction, default_wigner_grid
from .quadrature import mass_split
from .transforms import _spd, hbar_fourier, phase_space_fourier, wigner

EVEN_TOL = 1e-10
HARDY_TOL = 1e-9


@dataclass
class ConcentrationReport:
    inequality: str
    passed: bool
    lhs: float | None = None
    rhs: float | None = None
    margin: float | None = None
    tolerance: float = 0.0
    epsilon_star: float | None = None
    eta_star: float | None = None
    applicable: bool = True
    vacuous: bool = False
    grid: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _density(f):
    if isinstance(f, PhaseSpaceFunction):
        return np.abs(f.values) ** 2, f.spacings, 2 * f.n
    if isinstance(f, SampledFunction):
        return np.abs(f.values) ** 2, (f.spacing,) * f.n, f.n
    raise PolarDualityError(f"cannot take the concentration of a {type(f).__name__}")


def concentration_with_error(f, X: ConvexBody, points: int | None = None):
    """Minimal ``eps`` with ``f`` eps-concentrated in ``X``, and its quadrature error.

    ``f`` is a sampled function (density ``|f|^2``) or a phase-space table
    (density ``|W|^2``); it is normalised internally.
    """
    density, spacings, dim = _density(f)
    if X.dim != dim:
        raise DimensionError(f"body dimension {X.dim} does not match the function's dimension {dim}")
    split = mass_split(density, spacings, X, points)
    if split.total <= 0:
        raise PolarDualityError("function has zero norm")
    q = split.outside_fraction
    eps = math.sqrt(q)
    err = split.error
    err_eps = err / (2 * eps) if eps > math.sqrt(err) else math.sqrt(err)
    return min(eps, 1.0), err_eps


def concentration(f, X: ConvexBody, points: int | None = None) -> float:
    return concentration_with_error(f, X, points)[0]


def _grid_info(f, **extra):
    info = {"N": f.N, "L": f.L, "hbar": f.hbar}
    info.update(extra)
    return info


def _require_position(f):
    if not isinstance(f, SampledFunction) or f.space != "position":
        raise PolarDualityError("expected a position-space SampledFunction")


def donoho_stark_check(
    f: SampledFunction, X: ConvexBody, P: ConvexBody, samples: int = 1_000_000, seed: int = 0
) -> ConcentrationReport:
    """``Vol(X) Vol(P) >= (2 pi hbar)^n (1 - eps - eta)^2`` at the minimal eps, eta."""
    _require_position(f)
    n, h = f.n, f.hbar
    if X.dim != n or P.dim != n:
        raise DimensionError(f"X and P must have dimension {n}")
    eps, err_e = concentration_with_error(f, X)
    eta, err_h = concentration_with_error(hbar_fourier(f), P)
    vx = volume(X, samples=samples, seed=seed)
    vp = volume(P, samples=samples, seed=seed + 1)
    lhs = vx.value * vp.value
    lhs_se = math.hypot(vx.value * vp.std_error, vp.value * vx.std_error)
    scale = (2 * math.pi * h) ** n
    s = 1.0 - eps - eta
    rhs = scale * max(s, 0.0) ** 2
    tol = scale * 2 * max(s, 0.0) * (err_e + err_h) + GUARD_SIGMAS * lhs_se
    return ConcentrationReport(
        inequality="Donoho-Stark uncertainty principle",
        passed=lhs >= rhs - tol,
        lhs=lhs,
        rhs=rhs,
        margin=lhs - rhs,
        tolerance=tol,
        epsilon_star=eps,
        eta_star=eta,
        vacuous=s <= 0,
        grid=_grid_info(f, quadrature_error=err_e + err_h),
        details={"X": body_to_dict(X), "P": body_to_dict(P), "volume_X": vx.to_dict(), "volume_P": vp.to_dict()},
    )


def _half_argument(W: PhaseSpaceFunction) -> np.ndarray:
    """``W(-J zeta / 2)`` on the grid of ``phase_space_fourier(W)``.

    The conjugate grid has spacings ``2 pi hbar / (N s)``; for a Wigner
    table ``zeta_x / 2`` at index ``k`` is the momentum node ``k`` and
    ``zeta_p / 2`` at index ``m`` is the position node ``m``, so with
    ``-J zeta / 2 = (-zeta_p / 2, zeta_x / 2)`` the resampling is an index
    permutation.
    """
    n = W.n
    V = np.transpose(W.values, list(range(n, 2 * n)) + list(range(n)))
    for a in range(n, 2 * n):
        # index m -> -m on the centered lattice
        V = np.roll(np.flip(V, axis=a), 1, axis=a)
    return V


def _odd_report(name, f, defect):
    return ConcentrationReport(
        inequality=name,
        passed=False,
        applicable=False,
        grid=_grid_info(f),
        details={"reason": "input is not even", "evenness_defect": defect},
    )


def wigner_fourier_relation_check(f: SampledFunction, tol: float = 1e-6, size: int | None = None) -> ConcentrationReport:
    """Sup-norm check of ``F W(zeta) = 2^-n W(-J zeta / 2)`` for even ``f``."""
    name = "even-state Wigner/Fourier identity"
    _require_position(f)
    if not f.is_even(EVEN_TOL):
        return _odd_report(name, f, f.evenness_defect())
    W = wigner(f, size=size)
    F = phase_space_fourier(W).values
    R = 2.0 ** (-W.n) * _half_argument(W)
    # the first index on the zeta_p axes wraps to the far edge of the table
    keep = (slice(None),) * W.n + (slice(1, None),) * W.n
    gap = float(np.abs(F[keep] - R[keep]).max())
    return ConcentrationReport(
        inequality=name,
        passed=gap <= tol,
        lhs=gap,
        rhs=tol,
        margin=tol - gap,
        tolerance=0.0,
        grid=_grid_info(f, table_size=W.N, imag_residue=W.meta.get("imag_residue")),
    )


def wigner_ball_concentration(
    f: SampledFunction, X: ConvexBody | None = None, size: int | None = None, samples: int = 1_000_000, seed: int = 0
) -> ConcentrationReport:
    """Concentration of ``W f`` in the phase-space ball of radius ``sqrt(hbar)``.

    Asserts ``eps_W >= 1/2 - 1/(2 n!)``.  With a user body ``X`` in
    phase space it also asserts ``Vol(X) >= (pi hbar)^n (1 - 2 eps_W)``
    for the minimal concentration of ``W f`` in ``X``.
    """
    name = "Wigner concentration in the quantum ball"
    _require_position(f)
    if not f.is_even(EVEN_TOL):
        return _odd_report(name, f, f.evenness_defect())
    n, h = f.n, f.hbar
    W = wigner(f, size=size)
    B = ball(math.sqrt(h), 2 * n, h)
    eps, err = concentration_with_error(W, B)
    bound = 0.5 - 0.5 / math.factorial(n)
    passed = eps + err >= bound
    details = {
        "lower_bound": bound,
        "stated_delta": 1.0 / math.factorial(n),
        "upper_value_not_asserted": 0.5 + 0.5 / math.factorial(n),
        "ball_volume": volume(B).value,
        "abs_form_rhs": (math.pi * h) ** n * abs(1 - 2 * eps),
    }
    if X is not None:
        if X.dim != 2 * n:
            raise DimensionError(f"phase-space body must have dimension {2 * n}")
        eps_x, err_x = concentration_with_error(W, X)
        vx = volume(X, samples=samples, seed=seed)
        rhs = (math.pi * h) ** n * max(0.0, 1 - 2 * eps_x)
        tol = (math.pi * h) ** n * 2 * err_x + GUARD_SIGMAS * vx.std_error
        ok = vx.value >= rhs - tol
        details["user_body"] = {
            "X": body_to_dict(X),
            "epsilon_star": eps_x,
            "volume": vx.to_dict(),
            "rhs": rhs,
            "abs_form_rhs": (math.pi * h) ** n * abs(1 - 2 * eps_x),
            "tolerance": tol,
            "pass": ok,
        }
        passed = passed and ok
    return ConcentrationReport(
        inequality=name,
        passed=passed,
        lhs=eps,
        rhs=bound,
        margin=eps - bound,
        tolerance=err,
        epsilon_star=eps,
        grid=_grid_info(f, table_size=W.N, quadrature_error=err),
        details=details,
    )


def tradeoff_check(
    f: SampledFunction, X: ConvexBody, samples: int = 1_000_000, seed: int = 0
) -> ConcentrationReport:
    """``eps + eta >= 1 - delta(n)`` for ``X`` and its polar dual in momentum space."""
    _require_position(f)
    n, h = f.n, f.hbar
    if X.dim != n:
        raise DimensionError(f"body dimension {X.dim} does not match state dimension {n}")
    if not math.isclose(X.hbar, h, rel_tol=1e-12):
        raise PolarDualityError(f"body hbar {X.hbar} differs from state hbar {h}")
    dual = polar_dual(X)
    eps, err_e = concentration_with_error(f, X)
    eta, err_h = concentration_with_error(hbar_fourier(f), dual)
    b = bounds(n, h)
    total = eps + eta
    lower = 1.0 - b.delta
    tol = 2.0 * (err_e + err_h)
    mv = mahler_volume(X, samples=samples, seed=seed)
    return ConcentrationReport(
        inequality="concentration trade-off lower bound",
        passed=total >= lower - tol,
        lhs=total,
        rhs=lower,
        margin=total - lower,
        tolerance=tol,
        epsilon_star=eps,
        eta_star=eta,
        grid=_grid_info(f, quadrature_error=err_e + err_h),
        details={
            "X": body_to_dict(X),
            "delta_n": b.delta,
            "lower_bound": lower,
            "sum": total,
            "upper_value_not_asserted": 1.0 + b.delta,
            "chain": {
                "donoho_stark_rhs": (2 * math.pi * h) ** n * max(0.0, 1 - total) ** 2,
                "mahler_volume": mv.to_dict(),
                "blaschke_santalo": b.bs,
            },
            "presence_probability_x": 1 - eps**2,
            "presence_probability_p": 1 - eta**2,
        },
    )


def _support_ratio(dual, P, U):
    return support_many(dual, U) / support_many(P, U)


def hardy_check(A, B, hbar: float = 1.0, samples: int = 2000, seed: int = 0) -> ConcentrationReport:
    """Compare ``max eig(A^1/2 B A^1/2) <= 1`` with sampled containment of ``X^hbar`` in ``P``.

    ``X = {x : Ax.x <= hbar}``, so ``X^hbar = {p : A^-1 p.p <= hbar}``, and
    ``P = {p : Bp.p <= hbar}``.  The sampling route maximises the support
    ratio ``h_{X^hbar}(u) / h_P(u)`` over random directions and refines the
    best one with a simplex search.
    """
    A, B = _spd(A, "A"), _spd(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"A and B differ in shape: {A.shape} vs {B.shape}")
    n = A.shape[0]
    w, V = np.linalg.eigh(A)
    root = (V * np.sqrt(w)) @ V.T
    eigs = np.linalg.eigvalsh(root @ B @ root)
    lam = float(eigs[-1])
    by_eigen = lam <= 1 + HARDY_TOL

    dual = polar_dual(ellipsoid(A, hbar))
    P = ellipsoid(B, hbar)
    U = sphere_directions(n, samples, seed)
    ratios = _support_ratio(dual, P, U)
    u0 = U[int(np.argmax(ratios))]
    best = float(ratios.max())
    if n > 1:
        x, val, _ = _simplex.minimize(
            lambda u: -float(_support_ratio(dual, P, (u / np.linalg.norm(u))[None, :])[0]), u0, 0.05, xtol=1e-10
        )
        best = max(best, -val)
    by_sampling = best <= 1 + HARDY_TOL
    return ConcentrationReport(
        inequality="Hardy uncertainty criterion",
        passed=by_eigen == by_sampling,
        lhs=lam,
        rhs=1.0,
        margin=1.0 - lam,
        tolerance=HARDY_TOL,
        details={
            "eigenvalues": eigs.tolist(),
            "contained_by_eigenvalues": by_eigen,
            "contained_by_sampling": by_sampling,
            "max_support_ratio_squared": best**2,
            "equality_case": bool(np.all(np.abs(eigs - 1) <= HARDY_TOL)),
            "samples": samples,
            "seed": seed,
        },
    )


def standard_gaussian(n: int, hbar: float = 1.0, N: int | None = None, L: float | None = None) -> SampledFunction:
    """The standard Gaussian on the default Wigner grid (or a given one)."""
    from .transforms import gaussian_state

    N0, L0 = default_wigner_grid(n, hbar)
    return gaussian_state(np.eye(n), N or N0, L or L0, hbar)
