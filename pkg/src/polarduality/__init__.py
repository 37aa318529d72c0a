"""Polar duality of convex bodies and its phase-space uncertainty principles.

Modules
-------
geometry
    Convex bodies, hbar-scaled polar duals, support functions, Santalo point.
volumes
    Exact and Monte Carlo volumes, Mahler volume and its bounds.
symplectic
    Symplectic form, quantum blobs, Lagrangian polar duality.
harmonic
    Sampled states, hbar-Fourier and Wigner transforms, concentration checks.
"""
from . import geometry, harmonic, symplectic, volumes
from .errors import (
    ConvergenceError,
    DimensionError,
    InvalidBodyError,
    NotInteriorError,
    PolarDualityError,
    TruncationError,
    UnsupportedError,
)
from .geometry import (
    ConvexBody,
    ball,
    box,
    ellipsoid,
    hpolytope,
    linear_image,
    make_body,
    membership,
    polar_dual,
    polar_dual_about,
    santalo_point,
    support,
    vpolytope,
)
from .volumes import bounds, check_bounds, mahler_volume, volume

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "ConvexBody",
    "DimensionError",
    "InvalidBodyError",
    "NotInteriorError",
    "PolarDualityError",
    "TruncationError",
    "UnsupportedError",
    "ball",
    "bounds",
    "box",
    "check_bounds",
    "ellipsoid",
    "geometry",
    "harmonic",
    "hpolytope",
    "linear_image",
    "mahler_volume",
    "make_body",
    "membership",
    "polar_dual",
    "polar_dual_about",
    "santalo_point",
    "support",
    "symplectic",
    "volume",
    "volumes",
    "vpolytope",
]
