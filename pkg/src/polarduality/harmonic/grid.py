"""Sampled wavefunctions and phase-space tables on centered uniform grids.

A grid with ``N`` points per axis and half-extent ``L`` has position nodes
``x_j = (j - N/2) dx`` with ``dx = 2L/N`` and momentum nodes
``p_k = (k - N/2) dp`` with ``dp = 2 pi hbar / (N dx) = pi hbar / L``.

Binary file layout (all integers little-endian)::

    bytes 0..7    ASCII magic  b"PDGRID1\\n"
    bytes 8..11   uint32       H, length of the JSON header in bytes
    next H bytes  UTF-8 JSON header, keys sorted, no whitespace
    remainder     float64 pairs (re, im), little-endian, C order over ``shape``

Header keys: ``type`` ("sampled" or "phase_space"), ``n``, ``N``, ``L``,
``hbar``, ``shape``, ``spacings`` and either ``space`` or ``kind``.
"""
from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from ..errors import DimensionError, PolarDualityError

MAGIC = b"PDGRID1\n"
SPACES = ("position", "momentum")

# desk-scale defaults: (N, L / sqrt(hbar))
DEFAULT_GRID = {1: (256, 12.0), 2: (64, 10.0)}
DEFAULT_WIGNER_GRID = {1: (256, 12.0), 2: (64, 10.0)}
MAX_WIGNER_N = {1: 4096, 2: 32}


def _check_N(N):
    if N < 4 or N & (N - 1):
        raise PolarDualityError(f"samples per axis must be a power of two >= 4, got {N}")


def default_grid(n: int, hbar: float = 1.0):
    N, ell = DEFAULT_GRID[n]
    return N, ell * math.sqrt(hbar)


def default_wigner_grid(n: int, hbar: float = 1.0):
    N, ell = DEFAULT_WIGNER_GRID[n]
    return N, ell * math.sqrt(hbar)


def centered_axis(N: int, spacing: float) -> np.ndarray:
    return (np.arange(N) - N // 2) * spacing


def grid_points(axes) -> np.ndarray:
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex samples of a function of ``n`` position (or momentum) variables."""

    values: np.ndarray
    L: float
    hbar: float = 1.0
    space: str = "position"

    def __post_init__(self):
        v = np.array(self.values, dtype=complex, copy=True)
        if v.ndim not in (1, 2) or len(set(v.shape)) != 1:
            raise DimensionError(f"values must be an N or N x N array, got shape {v.shape}")
        _check_N(v.shape[0])
        if not np.all(np.isfinite(v)):
            raise PolarDualityError("sampled values are not finite")
        if self.space not in SPACES:
            raise PolarDualityError(f"space must be one of {SPACES}, got {self.space!r}")
        if not (self.L > 0 and self.hbar > 0):
            raise PolarDualityError("L and hbar must be positive")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def n(self) -> int:
        return self.values.ndim

    @property
    def N(self) -> int:
        return self.values.shape[0]

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def dp(self) -> float:
        return math.pi * self.hbar / self.L

    @property
    def spacing(self) -> float:
        return self.dx if self.space == "position" else self.dp

    def axis(self) -> np.ndarray:
        return centered_axis(self.N, self.spacing)

    def points(self) -> np.ndarray:
        return grid_points([self.axis()] * self.n)

    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) * self.spacing**self.n)

    def evenness_defect(self) -> float:
        """``max |f(x) - f(-x)|`` over nodes whose mirror image is on the grid."""
        inner = self.values[(slice(1, None),) * self.n]
        return float(np.abs(inner - np.flip(inner)).max())

    def is_even(self, tol: float = 1e-10) -> bool:
        return self.evenness_defect() <= tol * max(np.abs(self.values).max(), 1e-300)

    @classmethod
    def from_callable(cls, func, n, N, L, hbar=1.0, space="position"):
        """Sample ``func(points)`` where ``points`` has shape ``(N**n, n)``."""
        _check_N(N)
        spacing = 2.0 * L / N if space == "position" else math.pi * hbar / L
        pts = grid_points([centered_axis(N, spacing)] * n)
        vals = np.asarray(func(pts), dtype=complex).reshape((N,) * n)
        return cls(vals, L, hbar, space)

    def header(self) -> dict:
        return {
            "type": "sampled",
            "n": self.n,
            "N": self.N,
            "L": self.L,
            "hbar": self.hbar,
            "space": self.space,
            "shape": list(self.values.shape),
            "spacings": [self.spacing] * self.n,
        }


@dataclass(frozen=True, eq=False)
class PhaseSpaceFunction:
    """Values on a centered ``2n``-dimensional grid, position axes first."""

    values: np.ndarray
    L: float
    hbar: float
    spacings: tuple
    kind: str = "wigner"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim not in (2, 4) or len(set(v.shape)) != 1:
            raise DimensionError(f"phase-space table must be N^(2n) with n in (1, 2), got {v.shape}")
        if len(self.spacings) != v.ndim:
            raise DimensionError("one spacing per axis is required")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "spacings", tuple(float(s) for s in self.spacings))

    @property
    def n(self) -> int:
        return self.values.ndim // 2

    @property
    def N(self) -> int:
        return self.values.shape[0]

    @property
    def cell(self) -> float:
        return float(np.prod(self.spacings))

    def axis(self, k: int) -> np.ndarray:
        return centered_axis(self.N, self.spacings[k])

    def points(self) -> np.ndarray:
        return grid_points([self.axis(k) for k in range(self.values.ndim)])

    def header(self) -> dict:
        return {
            "type": "phase_space",
            "n": self.n,
            "N": self.N,
            "L": self.L,
            "hbar": self.hbar,
            "kind": self.kind,
            "shape": list(self.values.shape),
            "spacings": list(self.spacings),
        }


def to_bytes(obj) -> bytes:
    header = json.dumps(obj.header(), sort_keys=True, separators=(",", ":")).encode("utf-8")
    data = np.ascontiguousarray(obj.values, dtype="<c16").tobytes()
    return MAGIC + struct.pack("<I", len(header)) + header + data


def from_bytes(blob: bytes):
    if blob[:8] != MAGIC:
        raise PolarDualityError("not a grid file (bad magic)")
    (hlen,) = struct.unpack("<I", blob[8:12])
    header = json.loads(blob[12 : 12 + hlen].decode("utf-8"))
    shape = tuple(header["shape"])
    values = np.frombuffer(blob[12 + hlen :], dtype="<c16")
    if values.size != math.prod(shape):
        raise PolarDualityError("grid file is truncated")
    values = values.reshape(shape)
    if header["type"] == "sampled":
        return SampledFunction(values, header["L"], header["hbar"], header["space"])
    if header["kind"] == "wigner":
        values = values.real
    return PhaseSpaceFunction(values, header["L"], header["hbar"], tuple(header["spacings"]), header["kind"])


def save(obj, path):
    with open(path, "wb") as fh:
        fh.write(to_bytes(obj))


def load(path):
    with open(path, "rb") as fh:
        return from_bytes(fh.read())
