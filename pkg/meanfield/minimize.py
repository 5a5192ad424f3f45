"""
Constrained minimization on the unit sphere of L^2.

Both ``minimize_css`` and ``gamma_star_estimate`` run the same preconditioned
projected descent: the search direction is M^-1 (G - sigma u) with
M = c - Laplacian, the step comes from Barzilai-Borwein with Armijo
backtracking, and the iterate is renormalized after every step.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from config.exceptions import DivergenceError, ParameterDomainError, PolynomialPairError

from .energy import CSSEnergy, el_residual, energy_gradient
from .grid import ComplexField2D, Grid2D
from .nll import PolynomialPair, nll_state
from .potential import CSSParams, PotentialSpec

logger = logging.getLogger(__name__)

ARMIJO_C1 = 1e-4
MAX_BACKTRACKS = 40
STEP_MIN, STEP_MAX = 1e-6, 1e3
# one cell carrying a quarter of the mass means the state has collapsed to the grid scale
COLLAPSE_CELL_MASS = 0.25

Objective = Callable[[ComplexField2D], tuple[float, np.ndarray]]


@dataclass(frozen=True)
class DescentResult:
    field: ComplexField2D
    value: float
    iterations: int
    residual: float
    converged: bool
    history: list[float] = field(repr=False)


def _preconditioner(grid: Grid2D, shift: float) -> np.ndarray:
    return 1.0 / (shift + grid.KX**2 + grid.KY**2)


def _apply(multiplier: np.ndarray, values: np.ndarray) -> np.ndarray:
    return np.fft.ifft2(multiplier * np.fft.fft2(values))


def projected_descent(
    u0: ComplexField2D,
    objective: Objective,
    tol: float = 1e-6,
    max_iter: int = 2000,
    preconditioner_shift: float = 1.0,
    value_floor: float = -math.inf,
) -> DescentResult:
    """Minimize ``objective`` over normalized fields; it returns (value, G) with dvalue = 2 dx^2 Re<du, G>.

    Raises ``DivergenceError`` when the value drops below ``value_floor`` or the
    state collapses onto a single grid cell.
    """
    grid = u0.grid
    Minv = _preconditioner(grid, preconditioner_shift)
    u = u0.normalized()
    value, G = objective(u)
    history = [value]
    step = 1.0
    prev_u = prev_p = None
    residual = math.inf

    for iteration in range(1, max_iter + 1):
        lam = float(np.real(grid.inner(u.values, G)))
        residual = math.sqrt(grid.integrate(np.abs(G - lam * u.values) ** 2))
        if residual < tol:
            logger.info("descent converged in %d steps, value %.12g", iteration - 1, value)
            return DescentResult(u, value, iteration - 1, residual, True, history)

        MG = _apply(Minv, G)
        Mu = _apply(Minv, u.values)
        sigma = float(np.real(np.vdot(u.values, MG))) / float(np.real(np.vdot(u.values, Mu)))
        p = MG - sigma * Mu
        slope = 2.0 * grid.cell_area * float(np.real(np.vdot(p, G)))
        if slope <= 0.0:
            logger.warning("descent direction lost at step %d (slope %.3g)", iteration, slope)
            break

        if prev_u is not None:
            s = u.values - prev_u
            y = p - prev_p
            sy = abs(float(np.real(np.vdot(s, y))))
            if sy > 0.0:
                step = float(np.real(np.vdot(s, s))) / sy
        step = min(max(step, STEP_MIN), STEP_MAX)

        for _ in range(MAX_BACKTRACKS):
            trial = u.with_values(u.values - step * p).normalized()
            trial_value, trial_G = objective(trial)
            if trial_value <= value - ARMIJO_C1 * step * slope:
                break
            step *= 0.5
        else:
            logger.warning("line search stalled at step %d, value %.12g", iteration, value)
            break

        _check_divergence(trial, trial_value, value_floor)
        prev_u, prev_p = u.values, p
        u, value, G = trial, trial_value, trial_G
        history.append(value)
        logger.debug("step %d: value %.12g residual %.3g tau %.3g", iteration, value, residual, step)

    return DescentResult(u, value, len(history) - 1, residual, False, history)


def _check_divergence(u: ComplexField2D, value: float, floor: float) -> None:
    if value < floor:
        raise DivergenceError(
            f"objective {value:.6g} fell below {floor:.6g}; the energy is unbounded below"
        )
    peak = float(np.max(u.density())) * u.grid.cell_area
    if peak > COLLAPSE_CELL_MASS:
        raise DivergenceError(f"state collapsed onto one grid cell (cell mass {peak:.3g})")


@dataclass(frozen=True)
class MinimizationResult:
    field: ComplexField2D
    energy: CSSEnergy
    iterations: int
    residual: float
    converged: bool
    history: list[float] = field(repr=False)


def minimize_css(
    params: CSSParams,
    init: ComplexField2D,
    tol: float = 1e-6,
    max_iter: int = 2000,
    energy_floor: float = -1.0,
    padding_tolerance: float = 1e-8,
    preconditioner_shift: float = 1.0,
) -> MinimizationResult:
    """Minimize the CSS energy over normalized fields starting from ``init``.

    Energies of stable parameters are non-negative, so dropping below
    ``energy_floor`` is reported as divergence.
    """

    def objective(u: ComplexField2D) -> tuple[float, np.ndarray]:
        energy, G = energy_gradient(u, params, padding_tolerance)
        return energy.total, G

    result = projected_descent(
        init,
        objective,
        tol=tol,
        max_iter=max_iter,
        preconditioner_shift=preconditioner_shift,
        value_floor=energy_floor,
    )
    final = el_residual(result.field, params, padding_tolerance)
    if not result.converged:
        logger.warning(
            "CSS minimization stopped after %d steps with residual %.3g", result.iterations, final.norm
        )
    return MinimizationResult(
        field=result.field,
        energy=final.energy,
        iterations=result.iterations,
        residual=final.norm,
        converged=result.converged,
        history=result.history,
    )


@dataclass(frozen=True)
class GammaStarEstimate:
    beta: float
    estimate: float
    spread: float
    values: list[float]


def ratio_objective(beta: float, padding_tolerance: float) -> Objective:
    """E_{beta,0,0}[u] / int |u|^4 and its gradient (G at gamma = -ratio) / int |u|^4."""
    free = CSSParams(beta=beta, gamma=0.0, potential=PotentialSpec("zero"))

    def objective(u: ComplexField2D) -> tuple[float, np.ndarray]:
        energy, G = energy_gradient(u, free, padding_tolerance)
        quartic = energy.quartic_integral
        ratio = energy.total / quartic
        G = (G - 2.0 * ratio * u.density() * u.values) / quartic
        return ratio, G

    return objective


def random_phase_field(grid: Grid2D, rng: np.random.Generator, width: float, modes: int = 4) -> ComplexField2D:
    """Gaussian envelope with a smooth random phase and amplitude ripple."""
    X, Y = grid.X / width, grid.Y / width
    phase = np.zeros_like(X)
    ripple = np.ones_like(X)
    for _ in range(modes):
        kx, ky = rng.normal(scale=1.0, size=2)
        phase += rng.normal() * np.cos(kx * X + ky * Y + rng.uniform(0, 2 * np.pi))
        ripple += 0.2 * rng.normal() * np.sin(kx * X - ky * Y + rng.uniform(0, 2 * np.pi))
    values = ripple * np.exp(-0.5 * (X**2 + Y**2)) * np.exp(1j * phase)
    return ComplexField2D(grid, values).normalized()


def _nll_seeds(beta: float, grid: Grid2D, padding_tolerance: float) -> list[ComplexField2D]:
    if beta < 2 or not float(beta / 2).is_integer():
        return []
    d = int(beta // 2)
    seeds = []
    for scale in (1.0, 2.0):
        coefficients = [0.0] * d + [1.0 / scale**d]
        try:
            state = nll_state(
                PolynomialPair(tuple(coefficients), (1.0,)), grid,
                mass_tolerance=1e-2, resolution_tolerance=1.0,
            )
        except (ParameterDomainError, PolynomialPairError) as exc:
            logger.debug("skipping NLL seed of scale %g: %s", scale, exc)
            continue
        if grid.tail_fraction(state.field.density()) <= padding_tolerance:
            seeds.append(state.field.normalized())
    return seeds


def _solve_ratio(task: tuple) -> float:
    beta, start, tol, max_iter, padding_tolerance = task
    result = projected_descent(
        start, ratio_objective(beta, padding_tolerance), tol=tol, max_iter=max_iter
    )
    return result.value


def gamma_star_estimate(
    beta: float,
    grid: Grid2D,
    restarts: int = 8,
    seed: int | None = None,
    tol: float = 1e-6,
    max_iter: int = 1500,
    width: float | None = None,
    padding_tolerance: float = 1e-2,
    workers: int = 1,
) -> GammaStarEstimate:
    """Upper bound on gamma*(beta) from multistart minimization of E_{beta,0,0}/int|u|^4.

    Starts are ``restarts`` random-phase fields plus NLL seeds when beta is an
    even integer; the spread of the restart minima is the reported uncertainty.
    """
    if beta < 0:
        raise ParameterDomainError("beta must be non-negative")
    rng = np.random.default_rng(seed)
    width = width if width is not None else grid.L / 16.0
    starts = [random_phase_field(grid, rng, width) for _ in range(restarts)]
    starts += _nll_seeds(beta, grid, padding_tolerance)
    if not starts:
        raise ParameterDomainError("gamma_star_estimate needs at least one start")
    tasks = [(beta, s, tol, max_iter, padding_tolerance) for s in starts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_solve_ratio, tasks))
    else:
        values = [_solve_ratio(task) for task in tasks]
    best = min(values)
    spread = max(values) - best
    logger.info("gamma* estimate at beta=%g: %.8g (spread %.3g over %d starts)", beta, best, spread, len(values))
    return GammaStarEstimate(beta=beta, estimate=best, spread=spread, values=values)
