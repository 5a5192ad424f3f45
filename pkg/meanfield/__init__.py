from .energy import CSSEnergy, ELResidual, css_energy, el_residual, energy_gradient
from .gauge import GaugeField2D, smeared_gradient, smeared_potential_wR, vector_potential
from .grid import ComplexField2D, Grid2D, load_field, save_field
from .inequalities import HardyCheck, hardy_check
from .minimize import (
    GammaStarEstimate,
    MinimizationResult,
    gamma_star_estimate,
    minimize_css,
    projected_descent,
)
from .nll import NLLState, PolynomialPair, nll_state
from .potential import CSSParams, PotentialSpec

__all__ = [
    "CSSEnergy",
    "CSSParams",
    "ComplexField2D",
    "ELResidual",
    "GammaStarEstimate",
    "GaugeField2D",
    "Grid2D",
    "HardyCheck",
    "MinimizationResult",
    "NLLState",
    "PolynomialPair",
    "PotentialSpec",
    "css_energy",
    "el_residual",
    "energy_gradient",
    "gamma_star_estimate",
    "hardy_check",
    "load_field",
    "minimize_css",
    "nll_state",
    "projected_descent",
    "save_field",
    "smeared_gradient",
    "smeared_potential_wR",
    "vector_potential",
]
