"""
Finite-parameter main terms of the energy splitting, the norm estimate and the
density bound, for comparison with Monte Carlo measurements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from meanfield.gauge import vector_potential
from meanfield.grid import Grid2D
from meanfield.potential import PotentialSpec
from twobody import AnyonPairParams, interior_value, jastrow_coefficients, jastrow_norm_defect

from .condensate import Condensate

SDIAG_ERROR_CONSTANT = 10.0


def singular_coefficient(params: AnyonPairParams) -> float:
    """lambda1^2 (b^2a - R^2a) + lambda2^2 (R^-2a - b^-2a), the annulus integral behind S_diag."""
    if params.uniform_jastrow or params.alpha == 0.0:
        return 0.0
    c = jastrow_coefficients(params)
    a = params.alpha
    log_b = math.log(params.b)
    log_R = params.log_ratio + log_b
    grow = c.lambda1**2 * (math.exp(2 * a * log_b) - math.exp(2 * a * log_R))
    decay = c.lambda2**2 * (math.exp(-2 * a * log_R) - math.exp(-2 * a * log_b))
    return grow + decay


def default_prediction_grid(u: Condensate, n: int = 256) -> Grid2D:
    """A box whose central half holds the support of u."""
    return Grid2D(L=4.4 * u.support_radius, n=n)


@dataclass(frozen=True)
class MainTerms:
    K: float
    V: float
    W: float
    Sdiag: float
    S3body: float
    J: float

    @property
    def total(self) -> float:
        return self.K + self.V + self.W + self.Sdiag + self.S3body + self.J

    def as_dict(self) -> dict[str, float]:
        return {
            "K": self.K,
            "V": self.V,
            "W": self.W,
            "Sdiag": self.Sdiag,
            "S3body": self.S3body,
            "J": self.J,
        }


def predicted_main_terms(
    u: Condensate,
    params: AnyonPairParams,
    N: int,
    potential: PotentialSpec,
    grid: Grid2D | None = None,
) -> MainTerms:
    """Main terms with beta = alpha (N - 1); the three-body and current terms use the grid gauge field."""
    beta = params.alpha * (N - 1)
    quartic = u.power_integral(4)
    grid = grid or default_prediction_grid(u)
    field = u.to_field(grid)
    rho = field.density()
    R = 0.0 if params.R_is_zero else params.R
    A = vector_potential(rho, grid, R=R)
    gx, gy = grid.gradient(field.values)
    jx = np.imag(np.conj(field.values) * gx)
    jy = np.imag(np.conj(field.values) * gy)

    scalar = 0.0
    if params.g and not params.R_is_zero:
        scalar = math.pi * params.g * beta * interior_value(params) ** 2 * quartic
    return MainTerms(
        K=u.kinetic_integral(),
        V=u.potential_integral(potential),
        W=scalar,
        Sdiag=2.0 * math.pi * beta * singular_coefficient(params) * quartic,
        S3body=beta**2 * grid.integrate((A.ax**2 + A.ay**2) * rho),
        J=2.0 * beta * grid.integrate(A.ax * jx + A.ay * jy),
    )


def sdiag_error_scale(u: Condensate, params: AnyonPairParams, N: int) -> float:
    """The size of the S_diag remainder, with the constant set to 10."""
    beta = params.alpha * (N - 1)
    lam = singular_coefficient(params)
    b = params.b
    grad_sup, sup = u.gradient_sup_norm(), u.sup_norm()
    l4_4 = u.power_integral(4)
    l8_4 = math.sqrt(u.power_integral(8))
    first = b * beta * lam * (grad_sup * sup + b * grad_sup**2)
    second = b**2 * beta**2 * (1.0 + params.g**2) * lam * (N * l4_4 * sup**2 + math.sqrt(l4_4) * l8_4)
    return SDIAG_ERROR_CONSTANT * (first + second)


def predicted_norm_ratio(u: Condensate, params: AnyonPairParams, N: int) -> float:
    """1 - N(N-1)/2 int(1 - f^2) int|u|^4, the leading correction to ||F Phi||^2."""
    return 1.0 - 0.5 * N * (N - 1) * jastrow_norm_defect(params) * u.power_integral(4)


def density_bound(u: Condensate, params: AnyonPairParams, N: int) -> float:
    """(1 + g^2) beta N b^2 ||u||_4^4, the scale of the one-body density error."""
    beta = params.alpha * (N - 1)
    return (1.0 + params.g**2) * beta * N * params.b**2 * u.power_integral(4)
