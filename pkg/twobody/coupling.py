"""
The limiting coupling function G(s, g) and its one-parameter variational
relative G~(theta, s, g).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from config.exceptions import ParameterDomainError

from .scattering import coupling_ratio

logger = logging.getLogger(__name__)

THETA_MAX = 10.0
THETA_MIN = 1e-9


def coupling_G(s: float | np.ndarray, g: float | np.ndarray) -> np.ndarray | float:
    """G(s, g) for s in [0, inf] and g > -2; G(s, 2) = 1 and G(0, g) = g/2."""
    s_arr = np.asarray(s, dtype=float)
    g_arr = np.asarray(g, dtype=float)
    if np.any(g_arr <= -2.0):
        raise ParameterDomainError("G(s, g) is defined for g > -2")
    if np.any(s_arr < 0) or np.any(np.isnan(s_arr)):
        raise ParameterDomainError("s must be in [0, inf]")
    with np.errstate(over="ignore"):
        value = coupling_ratio(np.exp(-s_arr), g_arr)
    if value.ndim == 0:
        return float(value)
    return value


def coupling_G_tilde(theta: float, s: float, g: float) -> float:
    """theta - expm1(-s theta)/theta + g exp(-s theta); the theta -> 0 limit is s + g."""
    if theta < 0 or s < 0:
        raise ParameterDomainError("theta and s must be non-negative")
    if theta == 0.0:
        return s + g
    if math.isinf(s):
        return theta + 1.0 / theta
    return theta - math.expm1(-s * theta) / theta + g * math.exp(-s * theta)


@dataclass(frozen=True)
class ThetaOptimum:
    theta: float
    value: float


def optimize_theta(s: float, g: float, theta_max: float = THETA_MAX) -> ThetaOptimum:
    """Minimize G~(., s, g) over [0, theta_max]; theta = 0 is returned when the limit s + g wins."""
    if g < 0:
        raise ParameterDomainError("g must be non-negative")
    result = minimize_scalar(
        lambda t: coupling_G_tilde(t, s, g),
        bounds=(THETA_MIN, theta_max),
        method="bounded",
        options={"xatol": 1e-10},
    )
    best = ThetaOptimum(theta=float(result.x), value=float(result.fun))
    edge = coupling_G_tilde(0.0, s, g)
    if edge <= best.value:
        best = ThetaOptimum(theta=0.0, value=edge)
    logger.debug("G~ minimum at theta=%.6g (s=%g, g=%g): %.10g", best.theta, s, g, best.value)
    return best


def limit_coefficients(beta: float, omega: float, g: float) -> tuple[float, float]:
    """Large-N limits of (lambda1, lambda2) along the schedule R = exp(-N omega), b = N^-k."""
    if g <= -2.0 or beta < 0 or omega < 0:
        raise ParameterDomainError("need beta, omega >= 0 and g > -2")
    e = math.exp(-2.0 * beta * omega)
    D = 2.0 * (1.0 + e) + g * (1.0 - e)
    return (2.0 + g) / D, (2.0 - g) * e / D
