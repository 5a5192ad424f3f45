"""
Two-body scattering energies.

``scattering_energy_closed`` is the minimum of the radial functional without the
r^2/R^4 interior term. ``scattering_energy_numeric`` minimizes the full
functional over piecewise-linear profiles and checks it against the analytic
bracket [closed - 2 pi alpha^2 g^2, closed + pi alpha^2 / 2].
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from config.exceptions import BracketError, ConvergenceError, ParameterDomainError

from .params import AnyonPairParams, RadialProfile

logger = logging.getLogger(__name__)

GAUSS_NODES, GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(8)
# below this h/a the exact 1/r element integrals lose digits to cancellation
EXACT_LOG_THRESHOLD = 1e-2
# log(b/r_min) for the R = 0 mesh, limited by the double range
R_ZERO_LOG_SPAN = 690.0


def coupling_ratio(q: float | np.ndarray, g: float | np.ndarray) -> np.ndarray:
    """(1 + g/2 - (1 - g/2) q) / (1 + g/2 + (1 - g/2) q)."""
    q = np.asarray(q, dtype=float)
    g = np.asarray(g, dtype=float)
    return (1.0 + g / 2.0 - (1.0 - g / 2.0) * q) / (1.0 + g / 2.0 + (1.0 - g / 2.0) * q)


def scattering_energy_closed(params: AnyonPairParams) -> float:
    return 2.0 * math.pi * params.alpha * finite_coupling(params)


def finite_coupling(params: AnyonPairParams) -> float:
    """The finite-(R, b) ratio E_2 / (2 pi alpha); tends to G(2 beta omega, g) along a schedule."""
    if params.R_is_zero:
        return 1.0
    return float(coupling_ratio(params.q, params.g))


def theta_scattering_energy(theta: float, params: AnyonPairParams) -> float:
    """Energy of the profile (r/b)^(alpha theta): pi alpha (theta + (1 - q^theta)/theta + g q^theta)."""
    if theta <= 0:
        raise ParameterDomainError("theta must be positive")
    q_theta = math.exp(2.0 * params.alpha * theta * params.log_ratio) if params.alpha else 1.0
    return math.pi * params.alpha * (theta + (1.0 - q_theta) / theta + params.g * q_theta)


def energy_bracket(params: AnyonPairParams) -> tuple[float, float]:
    closed = scattering_energy_closed(params)
    a, g = params.alpha, params.g
    return closed - 2.0 * math.pi * a**2 * g**2, closed + 0.5 * math.pi * a**2


@dataclass(frozen=True)
class ScatteringSolution:
    energy: float
    error: float
    coarse_energy: float
    fine_energy: float
    profile: RadialProfile
    bracket: tuple[float, float]
    bracket_ok: bool


def default_mesh(params: AnyonPairParams, points: int = 400) -> np.ndarray:
    """Uniform nodes on [0, R] joined to geometric nodes on [R, b]."""
    if params.uniform_jastrow:
        raise ParameterDomainError("the radial problem needs R < b")
    b = params.b
    if params.R_is_zero:
        span = min(R_ZERO_LOG_SPAN, max(40.0, 30.0 / max(params.alpha, 1e-12)))
        outer = np.geomspace(b * math.exp(-span), b, points)
        return np.concatenate(([0.0], outer))
    R = params.R
    if R == 0.0 or not math.isfinite(math.log(R)):
        raise ParameterDomainError("R underflows; use the closed-form energy")
    inner_count = max(8, points // 4)
    inner = np.linspace(0.0, R, inner_count + 1)
    outer = np.geomspace(R, b, points + 1)
    return np.concatenate((inner[:-1], outer))


def refine_mesh(nodes: np.ndarray, R: float) -> np.ndarray:
    """Bisect every element: arithmetic midpoints inside R, geometric ones outside."""
    a, c = nodes[:-1], nodes[1:]
    mid = np.where((a >= R) & (a > 0), np.sqrt(a * c), 0.5 * (a + c))
    out = np.empty(nodes.size + mid.size)
    out[0::2] = nodes
    out[1::2] = mid
    return out


def _inverse_r_mass(a: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Element integrals of phi_i phi_j / r for the hat functions on [a, c]."""
    h = c - a
    n = a.size
    ll, rr, lr = np.empty(n), np.empty(n), np.empty(n)
    origin = a == 0.0
    ll[origin], lr[origin] = 0.0, 0.0
    rr[origin] = 0.5
    exact = (~origin) & (h / np.where(origin, 1.0, a) >= EXACT_LOG_THRESHOLD)
    if np.any(exact):
        ae, ce, he = a[exact], c[exact], h[exact]
        log_ratio = np.log(ce / ae)
        sq = 0.5 * (ce**2 - ae**2)
        ll[exact] = (ce**2 * log_ratio - 2.0 * ce * he + sq) / he**2
        rr[exact] = (ae**2 * log_ratio - 2.0 * ae * he + sq) / he**2
        lr[exact] = ((ce + ae) * he - sq - ae * ce * log_ratio) / he**2
    quad = (~origin) & (~exact)
    if np.any(quad):
        aq, cq, hq = a[quad][:, None], c[quad][:, None], h[quad][:, None]
        r = aq + 0.5 * hq * (GAUSS_NODES + 1.0)
        w = 0.5 * hq * GAUSS_WEIGHTS
        left, right = (cq - r) / hq, (r - aq) / hq
        ll[quad] = np.sum(w * left**2 / r, axis=1)
        rr[quad] = np.sum(w * right**2 / r, axis=1)
        lr[quad] = np.sum(w * left * right / r, axis=1)
    return ll, rr, lr


def _interior_mass(
    a: np.ndarray, c: np.ndarray, params: AnyonPairParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Element integrals of (alpha^2 r^2/R^4 + g alpha/R^2) phi_i phi_j r on B(0, R)."""
    h = (c - a)[:, None]
    r = a[:, None] + 0.5 * h * (GAUSS_NODES + 1.0)
    w = 0.5 * h * GAUSS_WEIGHTS
    R2 = params.R**2
    weight = (params.alpha**2 * r**2 / R2**2 + params.g * params.alpha / R2) * r
    left, right = (c[:, None] - r) / h, (r - a[:, None]) / h
    return (
        np.sum(w * weight * left**2, axis=1),
        np.sum(w * weight * right**2, axis=1),
        np.sum(w * weight * left * right, axis=1),
    )


def _assemble(nodes: np.ndarray, params: AnyonPairParams) -> np.ndarray:
    """Banded (tridiagonal) matrix of the radial energy, without the 2 pi factor."""
    a, c = nodes[:-1], nodes[1:]
    h = c - a
    stiff = 0.5 * (c**2 - a**2) / h**2
    diag_l, diag_r, off = stiff.copy(), stiff.copy(), -stiff.copy()

    R = 0.0 if params.R_is_zero else params.R
    outer = a >= R * (1.0 - 1e-12)
    if params.R_is_zero:
        outer = np.ones_like(a, dtype=bool)
    alpha2 = params.alpha**2
    if np.any(outer):
        ll, rr, lr = _inverse_r_mass(a[outer], c[outer])
        diag_l[outer] += alpha2 * ll
        diag_r[outer] += alpha2 * rr
        off[outer] += alpha2 * lr
    inner = ~outer
    if np.any(inner):
        ll, rr, lr = _interior_mass(a[inner], c[inner], params)
        diag_l[inner] += ll
        diag_r[inner] += rr
        off[inner] += lr

    n = nodes.size
    banded = np.zeros((3, n))
    banded[1, :-1] += diag_l
    banded[1, 1:] += diag_r
    banded[0, 1:] = off
    banded[2, :-1] = off
    return banded


def _solve_mesh(nodes: np.ndarray, params: AnyonPairParams) -> tuple[float, np.ndarray]:
    banded = _assemble(nodes, params)
    n = nodes.size
    pin_origin = params.R_is_zero and params.alpha > 0
    start = 1 if pin_origin else 0
    # unknowns start..n-2, with f(b) = 1 (and f(0) = 0 when pinned)
    sub = banded[:, start : n - 1].copy()
    rhs = np.zeros(n - 1 - start)
    rhs[-1] = -banded[0, n - 1]
    sub[0, 0] = 0.0
    sub[2, -1] = 0.0
    try:
        interior = solve_banded((1, 1), sub, rhs)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceError(f"radial solve failed: {exc}") from exc
    if not np.all(np.isfinite(interior)):
        raise ConvergenceError("radial solve returned non-finite values")
    f = np.zeros(n)
    f[start : n - 1] = interior
    f[-1] = 1.0
    # f^T K f from the banded storage
    quad = banded[1] * f**2
    quad[1:] += 2.0 * banded[0, 1:] * f[:-1] * f[1:]
    return 2.0 * math.pi * float(np.sum(quad)), f


def scattering_energy_numeric(
    params: AnyonPairParams,
    mesh: RadialProfile | np.ndarray | None = None,
    mesh_points: int = 400,
    strict: bool = False,
) -> ScatteringSolution:
    """Minimize the full radial two-body functional with f(b) = 1.

    The mesh is bisected once; Richardson extrapolation of the O(h^2) energy
    error gives the returned energy and its error estimate. With ``strict``
    a bracket violation raises ``BracketError``.
    """
    if mesh is None:
        nodes = default_mesh(params, mesh_points)
    else:
        nodes = mesh.nodes if isinstance(mesh, RadialProfile) else np.asarray(mesh, float)
        if nodes[0] != 0.0 or not math.isclose(nodes[-1], params.b, rel_tol=1e-12):
            raise ParameterDomainError("mesh must span [0, b]")
        if not params.R_is_zero and not np.any(np.isclose(nodes, params.R, rtol=1e-12)):
            raise ParameterDomainError("mesh must contain a node at R")

    R = 0.0 if params.R_is_zero else params.R
    coarse, _ = _solve_mesh(nodes, params)
    fine_nodes = refine_mesh(nodes, R)
    fine, profile = _solve_mesh(fine_nodes, params)
    error = abs(coarse - fine) / 3.0
    energy = fine - (coarse - fine) / 3.0

    lo, hi = energy_bracket(params)
    bracket_ok = lo - error <= energy <= hi + error
    logger.debug(
        "radial energy %.12g (coarse %.12g, error %.3g) bracket [%.12g, %.12g]",
        energy, coarse, error, lo, hi,
    )
    if not bracket_ok:
        message = f"two-body energy {energy:.12g} outside bracket [{lo:.12g}, {hi:.12g}]"
        if strict:
            raise BracketError(message)
        logger.warning(message)
    return ScatteringSolution(
        energy=energy,
        error=error,
        coarse_energy=coarse,
        fine_energy=fine,
        profile=RadialProfile(fine_nodes, profile),
        bracket=(lo, hi),
        bracket_ok=bracket_ok,
    )
