"""
Self-generated gauge potential A[rho] = (grad-perp log|.|) * rho.

The convolution is evaluated on a grid padded to twice the box in each
direction, against the Fourier transform of log|x| truncated at radius
D = 1.1 L. For densities supported in the central half of the box this equals
the free-space convolution at every box node: the needed separations stay
below D and the periodic images stay beyond it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import j0, j1

from config.exceptions import PaddingError, ParameterDomainError

from .grid import Grid2D

logger = logging.getLogger(__name__)

KERNEL_RADIUS_FACTOR = 1.1


@lru_cache(maxsize=16)
def _padded_wavenumbers(grid: Grid2D) -> tuple[np.ndarray, np.ndarray]:
    m = 2 * grid.n
    k = 2.0 * np.pi * np.fft.fftfreq(m, d=grid.dx)
    k[m // 2] = 0.0
    return k[:, None] * np.ones(m)[None, :], np.ones(m)[:, None] * k[None, :]


@lru_cache(maxsize=16)
def log_kernel_hat(grid: Grid2D, R: float = 0.0) -> np.ndarray:
    """Fourier multiplier of log|x| 1(|x| < D) on the padded grid, optionally smeared over B(0, R)."""
    m = 2 * grid.n
    k1 = 2.0 * np.pi * np.fft.fftfreq(m, d=grid.dx)
    k = np.sqrt(k1[:, None] ** 2 + k1[None, :] ** 2)
    D = KERNEL_RADIUS_FACTOR * grid.L
    out = np.empty_like(k)
    zero = k == 0.0
    kk = k[~zero]
    out[~zero] = 2.0 * np.pi * (D * np.log(D) * j1(kk * D) / kk - (1.0 - j0(kk * D)) / kk**2)
    out[zero] = 2.0 * np.pi * (0.5 * D**2 * np.log(D) - 0.25 * D**2)
    if R > 0.0:
        smear = np.ones_like(k)
        smear[~zero] = 2.0 * j1(kk * R) / (kk * R)
        out = out * smear
    out.setflags(write=False)
    return out


def pad(values: np.ndarray) -> np.ndarray:
    n = values.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=values.dtype)
    out[:n, :n] = values
    return out


def restrict(values: np.ndarray, n: int) -> np.ndarray:
    return values[:n, :n]


@dataclass(frozen=True)
class GaugeField2D:
    grid: Grid2D
    ax: np.ndarray = field(repr=False)
    ay: np.ndarray = field(repr=False)
    ax_hat: np.ndarray = field(repr=False)
    ay_hat: np.ndarray = field(repr=False)

    def magnitude(self) -> np.ndarray:
        return np.hypot(self.ax, self.ay)

    def curl(self) -> np.ndarray:
        kx, ky = _padded_wavenumbers(self.grid)
        out = np.fft.ifft2(1j * kx * self.ay_hat - 1j * ky * self.ax_hat).real
        return restrict(out, self.grid.n)

    def divergence(self) -> np.ndarray:
        kx, ky = _padded_wavenumbers(self.grid)
        out = np.fft.ifft2(1j * kx * self.ax_hat + 1j * ky * self.ay_hat).real
        return restrict(out, self.grid.n)


def check_padding(rho: np.ndarray, grid: Grid2D, tolerance: float) -> float:
    tail = grid.tail_fraction(rho)
    if tail > tolerance:
        raise PaddingError(
            f"{tail:.3g} of the density lies outside the central half of the box "
            f"(tolerance {tolerance:.3g}); enlarge L"
        )
    if tail > 0.1 * tolerance:
        logger.warning("density tail %.3g is close to the padding tolerance %.3g", tail, tolerance)
    return tail


def vector_potential(
    rho: np.ndarray,
    grid: Grid2D,
    R: float = 0.0,
    padding_tolerance: float = 1e-8,
) -> GaugeField2D:
    """A[rho] (or A^R[rho] for R > 0) on the box nodes; curl A = 2 pi rho, div A = 0."""
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (grid.n, grid.n):
        raise ParameterDomainError("density does not match the grid")
    if R < 0:
        raise ParameterDomainError("smearing radius must be non-negative")
    if np.any(rho < -1e-14 * max(float(np.max(np.abs(rho))), 1.0)):
        raise ParameterDomainError("density must be non-negative")
    check_padding(rho, grid, padding_tolerance)

    kx, ky = _padded_wavenumbers(grid)
    scaled = log_kernel_hat(grid, float(R)) * np.fft.fft2(pad(rho))
    ax_hat = -1j * ky * scaled
    ay_hat = 1j * kx * scaled
    ax = restrict(np.fft.ifft2(ax_hat).real, grid.n)
    ay = restrict(np.fft.ifft2(ay_hat).real, grid.n)
    return GaugeField2D(grid=grid, ax=ax, ay=ay, ax_hat=ax_hat, ay_hat=ay_hat)


def perp_convolution_divergence(
    field_x: np.ndarray, field_y: np.ndarray, grid: Grid2D
) -> np.ndarray:
    """sum_j (d_j^perp log|.|) * X_j on the box nodes, X = (field_x, field_y) zero-padded."""
    kx, ky = _padded_wavenumbers(grid)
    hat = log_kernel_hat(grid, 0.0)
    combo = 1j * (-ky * np.fft.fft2(pad(field_x)) + kx * np.fft.fft2(pad(field_y)))
    return restrict(np.fft.ifft2(hat * combo).real, grid.n)


def smeared_potential_wR(r: np.ndarray | float, R: float) -> np.ndarray:
    """w_R(r): log R + (r^2/R^2 - 1)/2 inside B(0, R), log r outside; R = 0 gives log r."""
    if R < 0:
        raise ParameterDomainError("R must be non-negative")
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        out = np.log(r)
    if R > 0:
        inside = r <= R
        out = np.where(inside, np.log(R) + 0.5 * (r**2 / R**2 - 1.0), out)
    return out


def smeared_gradient(x: np.ndarray, y: np.ndarray, R: float) -> tuple[np.ndarray, np.ndarray]:
    """grad w_R = x / max(|x|, R)^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r2 = np.maximum(x**2 + y**2, R**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        return x / r2, y / r2
