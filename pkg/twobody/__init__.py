from .coupling import (
    ThetaOptimum,
    coupling_G,
    coupling_G_tilde,
    limit_coefficients,
    optimize_theta,
)
from .jastrow import (
    drift_ratio,
    interior_value,
    jastrow_coefficients,
    jastrow_f,
    jastrow_log_derivative,
    jastrow_norm_defect,
    theta_profile,
)
from .params import (
    AnyonPairParams,
    JastrowCoefficients,
    RadialProfile,
    ScalingSchedule,
    schedule_params,
)
from .scattering import (
    ScatteringSolution,
    energy_bracket,
    finite_coupling,
    scattering_energy_closed,
    scattering_energy_numeric,
    theta_scattering_energy,
)

__all__ = [
    "AnyonPairParams",
    "JastrowCoefficients",
    "RadialProfile",
    "ScalingSchedule",
    "ScatteringSolution",
    "ThetaOptimum",
    "coupling_G",
    "coupling_G_tilde",
    "drift_ratio",
    "energy_bracket",
    "finite_coupling",
    "interior_value",
    "jastrow_coefficients",
    "jastrow_f",
    "jastrow_log_derivative",
    "jastrow_norm_defect",
    "limit_coefficients",
    "optimize_theta",
    "scattering_energy_closed",
    "scattering_energy_numeric",
    "schedule_params",
    "theta_profile",
]
