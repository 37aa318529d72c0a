"""Mass of a sampled density inside a convex body.

Each grid cell carries the mass of the tensor-product quadratic interpolant
through its ``3^d`` neighbouring samples (``g_j + g''dx^2/24`` per axis,
the cell average to fourth order).  Cells whose ``2^d`` corners all lie in
the body are inside by convexity and count whole; cells with every corner
and the center outside are skipped.  The remaining boundary cells are
sampled at the ``M`` points of an unscrambled Sobol net shifted to
midpoints, whose one-dimensional projections are stratified at ``1/M`` so
faces parallel to the grid are resolved as finely as slanted ones.  Point
values come from the same quadratic interpolant (or, where it dips below
zero, the linear one) rescaled to the cell mass, so a boundary cell lying
wholly in the body contributes its full mass and the inside mass is
monotone under inclusion of bodies.

The reported error bounds three effects on the boundary cells: the
resolution of the net (``1/M`` of the boundary mass, plus the change when
only the first ``M/2`` points, itself a net, are used), and the
interpolation error of the quadratic, whose cubic remainder integrates to at
most ``PARTIAL_CELL_CUBIC * |third difference|`` of the cell per axis over
any part of the cell.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.ndimage import convolve1d
from scipy.stats import qmc

from ..errors import DimensionError
from ..geometry import ConvexBody, contains
from .grid import centered_axis, grid_points

# points per boundary cell
DEFAULT_POINTS = {1: 4096, 2: 1024, 3: 2048, 4: 4096}
CELL_KERNEL = np.array([1 / 24, 11 / 12, 1 / 24])
# max over t of |int_{-1/2}^{t} (o^3 - o) / 6 do|
PARTIAL_CELL_CUBIC = 7 / 384
CHUNK_POINTS = 1 << 21


@dataclass(frozen=True)
class MassSplit:
    inside: float
    total: float
    boundary: float
    points: int
    resolution_error: float = 0.0

    @property
    def outside_fraction(self) -> float:
        return max(self.total - self.inside, 0.0) / self.total

    @property
    def error(self) -> float:
        return self.resolution_error


@lru_cache(maxsize=None)
def cell_points(d: int, M: int) -> np.ndarray:
    """``M`` Sobol points in ``[-1/2, 1/2)^d`` shifted to the midpoints of their strata."""
    k = int(M).bit_length() - 1
    if M != 1 << k:
        raise ValueError(f"points per cell must be a power of two, got {M}")
    P = qmc.Sobol(d, scramble=False).random_base2(k) + 0.5 / M - 0.5
    P.setflags(write=False)
    return P


def _weights(P: np.ndarray, order: int) -> np.ndarray:
    """``(M, 3^d)`` interpolation weights on the neighbours (-1, 0, +1)^d."""
    out = np.ones((len(P), 1))
    for o in P.T:
        if order == 2:
            w = np.column_stack([o * (o - 1) / 2, 1 - o * o, o * (o + 1) / 2])
        else:
            w = np.column_stack([np.maximum(-o, 0), 1 - np.abs(o), np.maximum(o, 0)])
        out = (out[:, :, None] * w[:, None, :]).reshape(len(P), -1)
    return out


def mass_split(density: np.ndarray, spacings, body: ConvexBody, points: int | None = None) -> MassSplit:
    g = np.asarray(density, dtype=float)
    d = g.ndim
    if body.dim != d:
        raise DimensionError(f"body dimension {body.dim} does not match grid dimension {d}")
    M = points or DEFAULT_POINTS[d]
    spacings = np.asarray(spacings, dtype=float)
    shape = g.shape
    cell = float(np.prod(spacings))

    cell_mass = g
    for a in range(d):
        cell_mass = convolve1d(cell_mass, CELL_KERNEL, axis=a, mode="constant")
    cell_mass = cell_mass * cell
    total = float(cell_mass.sum())

    corners = [centered_axis(N + 1, s) - 0.5 * s for N, s in zip(shape, spacings)]
    corner_in = contains(body, grid_points(corners)).reshape([N + 1 for N in shape])
    all_in = np.ones(shape, dtype=bool)
    any_in = contains(body, grid_points([centered_axis(N, s) for N, s in zip(shape, spacings)])).reshape(shape)
    for shift in itertools.product((0, 1), repeat=d):
        sl = corner_in[tuple(slice(k, k + N) for k, N in zip(shift, shape))]
        all_in &= sl
        any_in |= sl
    boundary = any_in & ~all_in

    inside = total if all_in.all() else float(cell_mass[all_in].sum())
    idx = np.argwhere(boundary)
    boundary_mass = float(cell_mass[boundary].sum())
    if not len(idx):
        return MassSplit(inside, total, boundary_mass, M)
    padded = np.pad(g, 1)
    # 3^d neighbourhoods of every boundary cell, flattened in C order
    offsets = np.array(list(itertools.product((0, 1, 2), repeat=d)))
    neigh = padded[tuple((idx[:, None, a] + offsets[None, :, a]) for a in range(d))]
    centers = np.stack([centered_axis(N, s)[idx[:, a]] for a, (N, s) in enumerate(zip(shape, spacings))], axis=1)
    masses = cell_mass[boundary]

    P = cell_points(d, M)
    quad, lin = _weights(P, 2), _weights(P, 1)
    local = P * spacings
    half = M // 2
    fine = coarse = 0.0
    step = max(1, CHUNK_POINTS // M)
    for lo in range(0, len(idx), step):
        sl = slice(lo, lo + step)
        vals_lin = neigh[sl] @ lin.T
        vals = neigh[sl] @ quad.T
        bad = np.any(vals < 0, axis=1)
        vals[bad] = vals_lin[bad]
        hit = contains(body, (centers[sl, None, :] + local[None, :, :]).reshape(-1, d)).reshape(-1, M)
        fine += _share(vals, hit, masses[sl])
        coarse += _share(vals[:, :half], hit[:, :half], masses[sl])
    interp = PARTIAL_CELL_CUBIC * cell * float(_third_differences(g, boundary).sum())
    err = (abs(fine - coarse) + boundary_mass / M + interp) / total
    return MassSplit(inside + fine, total, boundary_mass, M, err)


def _third_differences(g, mask):
    """Per masked cell, the sum over axes of the largest |third difference| touching the cell."""
    out = np.zeros(int(mask.sum()))
    for a in range(g.ndim):
        pad = [(0, 0)] * g.ndim
        pad[a] = (2, 2)
        d3 = np.abs(np.diff(np.pad(g, pad), n=3, axis=a))
        N = g.shape[a]
        left = np.take(d3, range(N), axis=a)
        right = np.take(d3, range(1, N + 1), axis=a)
        out += np.maximum(left, right)[mask]
    return out


def _share(vals, hit, masses):
    """Inside mass of cells whose point values are rescaled to the cell masses."""
    sums = vals.sum(axis=1)
    w = np.divide(masses, sums, out=np.zeros_like(sums), where=sums > 0)
    return float(np.sum((vals * hit).sum(axis=1) * w))
