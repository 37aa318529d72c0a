"""Sampled states, hbar-Fourier and Wigner transforms, and concentration checks."""
from .checks import (
    ConcentrationReport,
    concentration,
    concentration_with_error,
    donoho_stark_check,
    hardy_check,
    standard_gaussian,
    tradeoff_check,
    wigner_ball_concentration,
    wigner_fourier_relation_check,
)
from .grid import (
    PhaseSpaceFunction,
    SampledFunction,
    default_grid,
    default_wigner_grid,
    from_bytes,
    load,
    save,
    to_bytes,
)
from .quadrature import MassSplit, mass_split
from .transforms import fourier_at, gaussian_state, hbar_fourier, phase_space_fourier, wigner

__all__ = [
    "ConcentrationReport",
    "MassSplit",
    "PhaseSpaceFunction",
    "SampledFunction",
    "concentration",
    "concentration_with_error",
    "default_grid",
    "default_wigner_grid",
    "donoho_stark_check",
    "fourier_at",
    "from_bytes",
    "gaussian_state",
    "hardy_check",
    "hbar_fourier",
    "load",
    "mass_split",
    "phase_space_fourier",
    "save",
    "standard_gaussian",
    "to_bytes",
    "tradeoff_check",
    "wigner",
    "wigner_ball_concentration",
    "wigner_fourier_relation_check",
]
