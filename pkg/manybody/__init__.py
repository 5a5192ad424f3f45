from .condensate import Condensate, GridCondensate, TruncatedGaussian, condensate_from_spec
from .estimators import (
    DensityEstimate,
    EnergyBreakdown,
    TermEstimate,
    estimate_density,
    estimate_energy,
    estimate_norm_ratio,
)
from .inequalities import product_inequality_holds, three_body_kernel
from .local_terms import TERMS, local_energy, local_terms
from .predictions import (
    MainTerms,
    density_bound,
    predicted_main_terms,
    predicted_norm_ratio,
    sdiag_error_scale,
)
from .quadrature import PairQuadrature, pair_quadrature_breakdown
from .sampler import ChainStats, MetropolisChain, SamplerSettings, metropolis_chain
from .wavefunction import ParticleConfig, log_weight

__all__ = [
    "TERMS",
    "ChainStats",
    "Condensate",
    "DensityEstimate",
    "EnergyBreakdown",
    "GridCondensate",
    "MainTerms",
    "MetropolisChain",
    "PairQuadrature",
    "ParticleConfig",
    "SamplerSettings",
    "TermEstimate",
    "TruncatedGaussian",
    "condensate_from_spec",
    "density_bound",
    "estimate_density",
    "estimate_energy",
    "estimate_norm_ratio",
    "local_energy",
    "local_terms",
    "log_weight",
    "metropolis_chain",
    "pair_quadrature_breakdown",
    "predicted_main_terms",
    "predicted_norm_ratio",
    "product_inequality_holds",
    "sdiag_error_scale",
    "three_body_kernel",
]
