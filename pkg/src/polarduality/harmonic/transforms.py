"""Unitary hbar-Fourier transform, Gaussian states and Wigner/ambiguity tables."""
from __future__ import annotations

import math

import numpy as np

from ..errors import DimensionError, PolarDualityError, TruncationError
from .grid import MAX_WIGNER_N, PhaseSpaceFunction, SampledFunction, centered_axis

TRUNCATION_RATIO = 1e-14
IMAG_RESIDUE_TOL = 1e-12


def centered_dft(values: np.ndarray, axes, inverse: bool = False) -> np.ndarray:
    """``sum_m exp(-+2 pi i k m / N) v_m`` with k, m running over ``[-N/2, N/2)``."""
    shifted = np.fft.ifftshift(values, axes=axes)
    if inverse:
        size = math.prod(values.shape[a] for a in axes)
        out = np.fft.ifftn(shifted, axes=axes) * size
    else:
        out = np.fft.fftn(shifted, axes=axes)
    return np.fft.fftshift(out, axes=axes)


def _spd(A, name="A"):
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got {A.shape}")
    if np.abs(A - A.T).max() > 1e-12 * max(1.0, np.abs(A).max()):
        raise PolarDualityError(f"{name} is not symmetric")
    A = 0.5 * (A + A.T)
    if np.linalg.eigvalsh(A)[0] <= 0:
        raise PolarDualityError(f"{name} is not positive definite")
    return A


def gaussian_state(A, N: int, L: float, hbar: float = 1.0) -> SampledFunction:
    """Normalised Gaussian ``(det A)^(1/4) (pi hbar)^(-n/4) exp(-A x.x / 2 hbar)``.

    Raises :class:`TruncationError` when the envelope on the grid boundary
    exceeds ``1e-14`` of the peak.
    """
    A = _spd(A)
    n = A.shape[0]
    if n not in (1, 2):
        raise DimensionError("sampled states are limited to n = 1 or 2")
    f = SampledFunction.from_callable(lambda x: np.zeros(len(x)), n, N, L, hbar)
    edge = N // 2 * f.dx
    # smallest quadratic form on the boundary faces |x_i| = edge
    decay = edge**2 / (2 * hbar * np.diag(np.linalg.inv(A)).max())
    if decay < -math.log(TRUNCATION_RATIO):
        raise TruncationError(
            f"grid half-extent L={L} truncates the Gaussian (edge/peak = {math.exp(-decay):.2e})"
        )
    x = f.points()
    q = np.einsum("ij,jk,ik->i", x, A, x)
    amp = np.linalg.det(A) ** 0.25 * (math.pi * hbar) ** (-n / 4)
    return SampledFunction((amp * np.exp(-q / (2 * hbar))).reshape((N,) * n), L, hbar)


def hbar_fourier(f: SampledFunction, direction: str = "forward") -> SampledFunction:
    """Unitary hbar-Fourier transform between the position and momentum grids."""
    if direction not in ("forward", "inverse"):
        raise PolarDualityError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    expected = "position" if direction == "forward" else "momentum"
    if f.space != expected:
        raise PolarDualityError(f"{direction} transform expects a {expected}-space function, got {f.space}")
    n = f.n
    axes = tuple(range(n))
    scale = (2 * math.pi * f.hbar) ** (-n / 2) * f.spacing**n
    out = scale * centered_dft(f.values, axes, inverse=direction == "inverse")
    return SampledFunction(out, f.L, f.hbar, "momentum" if direction == "forward" else "position")


def fourier_at(f: SampledFunction, p: np.ndarray) -> np.ndarray:
    """Direct-sum hbar-Fourier transform of a position-space function at arbitrary momenta."""
    p = np.atleast_2d(p)
    x = f.points()
    kernel = np.exp(-1j * (p @ x.T) / f.hbar)
    return (2 * math.pi * f.hbar) ** (-f.n / 2) * f.dx**f.n * kernel @ f.values.ravel()


def _lag_products(psi: np.ndarray, size: int, wigner_mode: bool):
    """Products of shifted samples feeding the phase-space transforms.

    Wigner: ``C[j, m] = psi[j + m] conj(psi[j - m])`` for the ``size`` central
    nodes ``j`` and centered lags ``m``; the end lag averages its two aliases
    ``+-size/2`` so the lag sum stays Hermitian.  Ambiguity: ``D[l, b] =
    psi[b + l] conj(psi[b])`` for ``size`` centered lags ``l`` and every node
    ``b``.  Samples outside the grid count as zero.
    """
    n, N = psi.ndim, psi.shape[0]
    first = N // 2 - size // 2
    plus, minus = [], []
    mask = np.ones((1,) * (2 * n), dtype=bool)
    for a in range(n):
        shape_1 = [1] * (2 * n)
        shape_2 = [1] * (2 * n)
        shape_1[a] = size
        shape_2[n + a] = size + 1 if wigner_mode else N
        if wigner_mode:
            j = (first + np.arange(size)).reshape(shape_1)
            m = (np.arange(size + 1) - size // 2).reshape(shape_2)
            hi, lo = j + m, j - m
        else:
            lag = (np.arange(size) - size // 2).reshape(shape_1)
            b = np.arange(N).reshape(shape_2)
            hi, lo = b + lag, b + 0 * lag
        mask = mask & (hi >= 0) & (hi < N) & (lo >= 0) & (lo < N)
        plus.append(np.clip(hi, 0, N - 1))
        minus.append(np.clip(lo, 0, N - 1))
    out = psi[tuple(plus)] * np.conj(psi[tuple(minus)]) * mask
    if wigner_mode:
        for a in range(n, 2 * n):
            ends = 0.5 * (np.take(out, [0], axis=a) + np.take(out, [size], axis=a))
            out = np.concatenate([ends, np.take(out, range(1, size), axis=a)], axis=a)
    return out


def wigner(f: SampledFunction, mode: str = "wigner", size: int | None = None) -> PhaseSpaceFunction:
    """Wigner or ambiguity table of a position-space function.

    The table has ``size`` nodes per axis (default: all ``N`` nodes for
    ``n = 1``, at most 32 for ``n = 2``), taken from the central window of
    the position grid.

    Wigner: the integration variable ``y`` runs over the even lattice
    ``2 m dx`` so ``x +- y/2`` stays on the grid, and the momentum axis gets
    spacing ``pi hbar / (size dx)``.  Ambiguity: the position lag runs over
    ``l dx``, the midpoint over half-shifted nodes, and the momentum axis is
    the central window of the ordinary momentum grid.
    """
    if f.space != "position":
        raise PolarDualityError("wigner expects a position-space function")
    if mode not in ("wigner", "ambiguity"):
        raise PolarDualityError(f"mode must be 'wigner' or 'ambiguity', got {mode!r}")
    n, N, h, dx = f.n, f.N, f.hbar, f.dx
    size = min(N, MAX_WIGNER_N[n]) if size is None else int(size)
    if size > MAX_WIGNER_N[n] or size > N:
        raise PolarDualityError(
            f"phase-space table too large: size={size} (limit {min(N, MAX_WIGNER_N[n])} at n={n}, N={N})"
        )
    if size < 4 or size & (size - 1):
        raise PolarDualityError(f"table size must be a power of two >= 4, got {size}")
    psi = f.values
    lag_axes = tuple(range(n, 2 * n))
    norm = (2 * math.pi * h) ** (-n)
    half_extent = size // 2 * dx

    if mode == "wigner":
        C = _lag_products(psi, size, True)
        table = norm * (2 * dx) ** n * centered_dft(C, lag_axes)
        residue = float(np.abs(table.imag).max())
        if residue > IMAG_RESIDUE_TOL * max(1.0, float(np.abs(table).max())):
            raise PolarDualityError(f"Wigner table is not real (imaginary residue {residue:.2e})")
        spacings = (dx,) * n + (math.pi * h / (size * dx),) * n
        return PhaseSpaceFunction(table.real, half_extent, h, spacings, "wigner", {"imag_residue": residue})

    D = _lag_products(psi, size, False)
    table = norm * dx**n * centered_dft(D, lag_axes)
    keep = slice(N // 2 - size // 2, N // 2 + size // 2)
    table = table[(slice(None),) * n + (keep,) * n]
    # midpoint y = x_b + l dx / 2: restore the half-lag phase
    lag = centered_axis(size, dx)
    mom = centered_axis(size, f.dp)
    for a in range(n):
        shape_l = [1] * (2 * n)
        shape_p = [1] * (2 * n)
        shape_l[a], shape_p[n + a] = size, size
        table = table * np.exp(-0.5j * lag.reshape(shape_l) * mom.reshape(shape_p) / h)
    spacings = (dx,) * n + (f.dp,) * n
    return PhaseSpaceFunction(table, half_extent, h, spacings, "ambiguity")


def phase_space_fourier(W: PhaseSpaceFunction) -> PhaseSpaceFunction:
    """``(2 pi hbar)^(-n) int exp(-i zeta.z / hbar) W(z) dz`` on the conjugate grid."""
    n, N, h = W.n, W.N, W.hbar
    axes = tuple(range(2 * n))
    out = (2 * math.pi * h) ** (-n) * W.cell * centered_dft(W.values, axes)
    spacings = tuple(2 * math.pi * h / (N * s) for s in W.spacings)
    return PhaseSpaceFunction(out, W.L, h, spacings, "fourier")
