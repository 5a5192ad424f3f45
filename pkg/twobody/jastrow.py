"""
The Jastrow pair profile f and quantities derived from it.

Inside the annulus R <= r <= b the profile is lambda1 r^alpha + lambda2 r^-alpha.
All powers are evaluated through logarithms of r/b so that subnormal R values
coming from the scaling schedule do not overflow.
"""

from __future__ import annotations

import math

import numpy as np

from config.exceptions import ParameterDomainError

from .params import AnyonPairParams, JastrowCoefficients


def _denominator(params: AnyonPairParams) -> float:
    q = params.q
    return 2.0 * (1.0 + q) + params.g * (1.0 - q)


def _branch_weights(params: AnyonPairParams) -> tuple[float, float]:
    """Weights (A, B) with f = A (r/b)^alpha + B (b/r)^alpha on the annulus; B includes q."""
    D = _denominator(params)
    return (2.0 + params.g) / D, (2.0 - params.g) * params.q / D


def jastrow_coefficients(params: AnyonPairParams) -> JastrowCoefficients:
    if params.uniform_jastrow:
        raise ParameterDomainError("the uniform Jastrow factor has no annulus coefficients")
    if params.R_is_zero:
        raise ParameterDomainError("coefficients require R > 0")
    A, B = _branch_weights(params)
    b_alpha = params.b**params.alpha
    return JastrowCoefficients(lambda1=A / b_alpha, lambda2=B * b_alpha)


def interior_value(params: AnyonPairParams) -> float:
    """f(R), the constant value of f on B(0, R)."""
    if params.uniform_jastrow:
        return 1.0
    return 4.0 * math.sqrt(params.q) / _denominator(params)


def _annulus_parts(t: np.ndarray, params: AnyonPairParams) -> tuple[np.ndarray, np.ndarray]:
    """The two branches A (r/b)^alpha and B (b/r)^alpha at t = log(r/b)."""
    A, _ = _branch_weights(params)
    D = _denominator(params)
    a = params.alpha
    grow = A * np.exp(a * t)
    if params.q == 0.0:
        decay = np.zeros_like(t)
    else:
        decay = (2.0 - params.g) / D * np.exp(a * (2.0 * params.log_ratio - t))
    return grow, decay


def jastrow_f(r: np.ndarray | float, params: AnyonPairParams) -> np.ndarray:
    """Evaluate f(r); vectorized over r >= 0."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ParameterDomainError("radii must be non-negative")
    out = np.ones_like(r)
    if params.uniform_jastrow or params.alpha == 0.0:
        return out
    log_b = math.log(params.b)
    log_R = params.log_ratio + log_b
    with np.errstate(divide="ignore"):
        log_r = np.log(r)
    annulus = (log_r >= log_R) & (r < params.b)
    interior = log_r < log_R
    if np.any(annulus):
        grow, decay = _annulus_parts(log_r[annulus] - log_b, params)
        out[annulus] = grow + decay
    if params.R_is_zero:
        # pure exterior profile (r/b)^alpha, vanishing at the origin
        inner = r < params.b
        out[inner] = np.exp(params.alpha * (log_r[inner] - log_b))
    elif np.any(interior):
        out[interior] = interior_value(params)
    return out


def drift_ratio(r: np.ndarray, params: AnyonPairParams) -> np.ndarray:
    """(lambda1 r^a - lambda2 r^-a)/(lambda1 r^a + lambda2 r^-a) on the annulus, 0 elsewhere.

    Multiplying by x/|x|^2 gives the kernel K_{R,b}; r f'/f = alpha times this ratio.
    """
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    if params.uniform_jastrow or params.alpha == 0.0:
        return out
    log_b = math.log(params.b)
    with np.errstate(divide="ignore"):
        log_r = np.log(r)
    annulus = (log_r >= params.log_ratio + log_b) & (r < params.b) & (r > 0)
    if np.any(annulus):
        grow, decay = _annulus_parts(log_r[annulus] - log_b, params)
        out[annulus] = (grow - decay) / (grow + decay)
    return out


def jastrow_log_derivative(r: np.ndarray | float, params: AnyonPairParams) -> np.ndarray:
    """f'(r)/f(r); zero where f is constant."""
    r = np.asarray(r, dtype=float)
    ratio = drift_ratio(r, params)
    out = np.zeros_like(r)
    mask = ratio != 0
    out[mask] = params.alpha * ratio[mask] / r[mask]
    return out


def jastrow_norm_defect(params: AnyonPairParams) -> float:
    """Closed form of the integral of 1 - f^2 over the plane.

    Bounds the deviation of the squared Jastrow product from one, summed over pairs.
    """
    if params.uniform_jastrow or params.alpha == 0.0:
        return 0.0
    a = params.alpha
    b2 = params.b**2
    if params.R_is_zero:
        return math.pi * b2 * (1.0 - 1.0 / (1.0 + a))
    rho2 = math.exp(2.0 * params.log_ratio)
    A, B = _branch_weights(params)
    fR = interior_value(params)
    inner = math.pi * b2 * rho2 * (1.0 - fR**2)
    # integrals of x^(1+2a), x, x^(1-2a) over (rho, 1) after the substitution x = r/b
    grow = A**2 * (1.0 - rho2 * math.exp(2 * a * params.log_ratio)) / (2.0 + 2.0 * a)
    cross = A * B * (1.0 - rho2)
    decay = 0.0
    if B != 0.0:
        decay = (B**2 - B * (2.0 - params.g) / _denominator(params) * rho2) / (2.0 - 2.0 * a)
    annulus = math.pi * b2 * (1.0 - rho2) - 2.0 * math.pi * b2 * (grow + cross + decay)
    return inner + annulus


def theta_profile(r: np.ndarray | float, theta: float, alpha: float, b: float) -> np.ndarray:
    """The one-parameter repulsive profile (r/b)^(alpha theta), capped at 1 beyond b."""
    if theta < 0:
        raise ParameterDomainError("theta must be non-negative")
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        values = np.exp(alpha * theta * (np.log(r) - math.log(b)))
    return np.minimum(values, 1.0)
