"""
The CSS energy functional and its constrained gradient.

    E[u] = int |(-i grad + beta A[|u|^2]) u|^2 + int V |u|^2 + gamma int |u|^4

All integrals are grid sums times dx^2; derivatives are spectral. The gradient
G returned by ``energy_gradient`` is exact for this discretization:
dE = 2 dx^2 Re <du, G>.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from config.exceptions import ParameterDomainError

from .gauge import GaugeField2D, perp_convolution_divergence, vector_potential
from .grid import ComplexField2D
from .potential import CSSParams


@dataclass(frozen=True)
class CSSEnergy:
    kinetic: float
    cross: float
    quad: float
    potential: float
    quartic: float
    quartic_integral: float
    total: float

    @property
    def covariant(self) -> float:
        """int |(-i grad + beta A) u|^2 = kinetic + cross + quad."""
        return self.kinetic + self.cross + self.quad

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class _Covariant:
    du: tuple[np.ndarray, np.ndarray]
    psi: tuple[np.ndarray, np.ndarray]
    current: tuple[np.ndarray, np.ndarray]
    gauge: GaugeField2D | None
    potential: np.ndarray = field(repr=False)


def _covariant_parts(u: ComplexField2D, params: CSSParams, padding_tolerance: float) -> _Covariant:
    grid = u.grid
    du = grid.gradient(u.values)
    current = (np.imag(np.conj(u.values) * du[0]), np.imag(np.conj(u.values) * du[1]))
    gauge = None
    psi = du
    if params.beta != 0.0:
        gauge = vector_potential(u.density(), grid, padding_tolerance=padding_tolerance)
        psi = (
            du[0] + 1j * params.beta * gauge.ax * u.values,
            du[1] + 1j * params.beta * gauge.ay * u.values,
        )
    V = params.potential.evaluate(grid.X, grid.Y)
    return _Covariant(du=du, psi=psi, current=current, gauge=gauge, potential=V)


def _breakdown(u: ComplexField2D, params: CSSParams, parts: _Covariant) -> CSSEnergy:
    grid = u.grid
    rho = u.density()
    kinetic = grid.integrate(np.abs(parts.du[0]) ** 2 + np.abs(parts.du[1]) ** 2)
    cross = quad = 0.0
    if parts.gauge is not None:
        A = parts.gauge
        cross = 2.0 * params.beta * grid.integrate(A.ax * parts.current[0] + A.ay * parts.current[1])
        quad = params.beta**2 * grid.integrate((A.ax**2 + A.ay**2) * rho)
    potential = grid.integrate(parts.potential * rho)
    quartic_integral = grid.integrate(rho**2)
    quartic = params.gamma * quartic_integral
    return CSSEnergy(
        kinetic=kinetic,
        cross=cross,
        quad=quad,
        potential=potential,
        quartic=quartic,
        quartic_integral=quartic_integral,
        total=kinetic + cross + quad + potential + quartic,
    )


def css_energy(
    u: ComplexField2D, params: CSSParams, padding_tolerance: float = 1e-8
) -> CSSEnergy:
    """Grid quadrature of the CSS functional with its per-term breakdown."""
    return _breakdown(u, params, _covariant_parts(u, params, padding_tolerance))


def energy_gradient(
    u: ComplexField2D, params: CSSParams, padding_tolerance: float = 1e-8
) -> tuple[CSSEnergy, np.ndarray]:
    """Energy and G = -(D + i beta A)^2 u + V u + 2 gamma |u|^2 u - 2 beta u (grad-perp w * X).

    X = J[u] + beta A |u|^2 is the gauge-invariant current.
    """
    grid = u.grid
    parts = _covariant_parts(u, params, padding_tolerance)
    energy = _breakdown(u, params, parts)
    values = u.values
    rho = u.density()

    if parts.gauge is None:
        G = -grid.laplacian(values)
    else:
        A, beta = parts.gauge, params.beta
        px, py = parts.psi
        G = -(grid.gradient(px)[0] + 1j * beta * A.ax * px)
        G -= grid.gradient(py)[1] + 1j * beta * A.ay * py
        X_x = parts.current[0] + beta * A.ax * rho
        X_y = parts.current[1] + beta * A.ay * rho
        G -= 2.0 * beta * values * perp_convolution_divergence(X_x, X_y, grid)
    G = G + parts.potential * values + 2.0 * params.gamma * rho * values
    return energy, G


@dataclass(frozen=True)
class ELResidual:
    residual: np.ndarray = field(repr=False)
    lam: float
    gradient: np.ndarray = field(repr=False)
    energy: CSSEnergy
    norm: float


def lagrange_multiplier(energy: CSSEnergy) -> float:
    """lambda = 2E - int (|grad u|^2 + V|u|^2 - beta^2 |A|^2 |u|^2)."""
    return 2.0 * energy.total - (energy.kinetic + energy.potential - energy.quad)


def el_residual(
    u: ComplexField2D,
    params: CSSParams,
    padding_tolerance: float = 1e-8,
    mass_tolerance: float = 1e-2,
) -> ELResidual:
    """Euler-Lagrange residual r = G - lambda u of a normalized state.

    The lambda formula evaluates <u, G>, which is lambda only at unit mass; states
    truncated by the box (slowly decaying NLL fields) pass within ``mass_tolerance``.
    """
    if abs(u.mass() - 1.0) > mass_tolerance:
        raise ParameterDomainError(f"el_residual needs a normalized state, mass={u.mass():.8g}")
    energy, G = energy_gradient(u, params, padding_tolerance)
    lam = lagrange_multiplier(energy)
    residual = G - lam * u.values
    norm = float(np.sqrt(u.grid.integrate(np.abs(residual) ** 2)))
    return ELResidual(residual=residual, lam=lam, gradient=G, energy=energy, norm=norm)


def directional_derivative(gradient: np.ndarray, direction: np.ndarray, cell_area: float) -> float:
    """dE along ``direction`` given the gradient G: 2 dx^2 Re <direction, G>."""
    return 2.0 * cell_area * float(np.real(np.vdot(direction, gradient)))
