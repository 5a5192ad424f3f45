from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gauge import vector_potential
from .grid import ComplexField2D

HARDY_CONSTANT = 1.5
HARDY_SLACK = 1e-8


@dataclass(frozen=True)
class HardyCheck:
    lhs: float
    rhs: float
    ok: bool


def gradient_modulus_squared(u: ComplexField2D) -> np.ndarray:
    """|grad |u||^2 = (Re conj(u) grad u)^2 / |u|^2, zero where u vanishes."""
    gx, gy = u.grid.gradient(u.values)
    rho = u.density()
    num = np.real(np.conj(u.values) * gx) ** 2 + np.real(np.conj(u.values) * gy) ** 2
    out = np.zeros_like(rho)
    mask = rho > 1e-300
    out[mask] = num[mask] / rho[mask]
    return out


def hardy_check(u: ComplexField2D, R: float = 0.0, padding_tolerance: float = 1e-8) -> HardyCheck:
    """int |A^R[|u|^2]|^2 |u|^2 <= 3/2 ||u||_2^4 int |grad |u||^2."""
    grid = u.grid
    rho = u.density()
    A = vector_potential(rho, grid, R=R, padding_tolerance=padding_tolerance)
    lhs = grid.integrate((A.ax**2 + A.ay**2) * rho)
    rhs = HARDY_CONSTANT * u.mass() ** 2 * grid.integrate(gradient_modulus_squared(u))
    return HardyCheck(lhs=lhs, rhs=rhs, ok=lhs <= rhs * (1.0 + HARDY_SLACK))
