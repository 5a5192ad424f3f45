"""
Per-configuration weights of the energy splitting

    N^-1 <F Phi | H_N | F Phi> = K + V + W + S_diag + S_3body + J.

With a_i = grad u / u (x_i), the smeared pair potential
A_ij = (x_i - x_j)^perp / max(|x_i - x_j|, R)^2 and the Jastrow drift
K_ij = (x_i - x_j) / |x_i - x_j|^2 * ratio(|x_i - x_j|):

    |a_i + i alpha sum_j A_ij + alpha sum_j K_ij|^2 + V(x_i) + W_i

summed over i and divided by N equals the sum of the six terms below.
"""

from __future__ import annotations

import math

import numpy as np

from config.exceptions import ParameterDomainError
from meanfield.potential import PotentialSpec
from twobody import AnyonPairParams, drift_ratio, jastrow_f

from .condensate import Condensate
from .wavefunction import pair_separations

TERMS = ("K", "V", "W", "Sdiag", "S3body", "J")

RADIAL_NODES = 24
ANGULAR_NODES = 32


def _pair_fields(
    positions: np.ndarray, params: AnyonPairParams
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(A_ij, K_ij, r_ij) with zero diagonal; positions of shape (P, N, 2)."""
    d, r = pair_separations(positions)
    N = positions.shape[-2]
    diag = np.eye(N, dtype=bool)
    r_safe = np.where(diag, 1.0, r)
    ratio = drift_ratio(r, params)
    K = d * (ratio / r_safe**2)[..., None]
    denom = np.maximum(r_safe, params.R) ** 2
    A = np.stack([-d[..., 1], d[..., 0]], axis=-1) / denom[..., None]
    A[..., diag, :] = 0.0
    K[..., diag, :] = 0.0
    return A, K, r


def _singular_weight(r: np.ndarray, params: AnyonPairParams) -> np.ndarray:
    """alpha^2 (|A(r)|^2 + |K(r)|^2) as a function of the pair distance."""
    r = np.asarray(r, dtype=float)
    r_safe = np.where(r > 0, r, 1.0)
    A2 = r**2 / np.maximum(r_safe, params.R) ** 4
    K2 = (drift_ratio(r, params) / r_safe) ** 2
    return np.where(r > 0, params.alpha**2 * (A2 + K2), 0.0)


def _scalar_weight(r: np.ndarray, params: AnyonPairParams) -> np.ndarray:
    """g alpha / R^2 inside B(0, R)."""
    r = np.asarray(r, dtype=float)
    if params.R == 0.0 or params.g == 0.0:
        return np.zeros_like(r)
    return np.where(r < params.R, params.g * params.alpha / params.R**2, 0.0)


def local_terms(
    positions: np.ndarray,
    u: Condensate,
    params: AnyonPairParams,
    potential: PotentialSpec,
    rao_blackwell: bool = False,
) -> dict[str, np.ndarray]:
    """Weights of the six terms for each configuration in ``positions`` (shape (P, N, 2))."""
    positions = np.asarray(positions, dtype=float)
    if positions.ndim == 2:
        positions = positions[None]
    N = positions.shape[-2]
    alpha = params.alpha

    a = u.drift(positions)
    A, K, r = _pair_fields(positions, params)
    kappa = alpha * K.sum(axis=-2)
    A_tot = alpha * A.sum(axis=-2)

    terms: dict[str, np.ndarray] = {}
    terms["K"] = np.sum(np.abs(a) ** 2, axis=(-2, -1)) / N
    terms["V"] = np.sum(potential(positions), axis=-1) / N
    off = ~np.eye(N, dtype=bool)
    terms["W"] = np.sum(_scalar_weight(r, params) * off, axis=(-2, -1)) / N
    s_diag = alpha**2 * np.sum(A**2 + K**2, axis=(-3, -2, -1)) / N
    total_s = np.sum(kappa**2 + A_tot**2, axis=(-2, -1)) / N
    terms["Sdiag"] = s_diag
    terms["S3body"] = total_s - s_diag
    terms["J"] = 2.0 * np.sum(a.real * kappa + a.imag * A_tot, axis=(-2, -1)) / N

    if rao_blackwell:
        w_rb, s_rb = rao_blackwell_terms(positions, u, params, r)
        terms["W"] = w_rb
        terms["Sdiag"] = s_rb
    return terms


def local_energy(
    positions: np.ndarray, u: Condensate, params: AnyonPairParams, potential: PotentialSpec
) -> np.ndarray:
    """N^-1 sum_i |a_i + i A_i + kappa_i|^2 + V + W, computed without the splitting."""
    positions = np.asarray(positions, dtype=float)
    if positions.ndim == 2:
        positions = positions[None]
    N = positions.shape[-2]
    a = u.drift(positions)
    A, K, r = _pair_fields(positions, params)
    vec = a + 1j * params.alpha * A.sum(axis=-2) + params.alpha * K.sum(axis=-2)
    off = ~np.eye(N, dtype=bool)
    scalar = np.sum(_scalar_weight(r, params) * off, axis=(-2, -1))
    return (np.sum(np.abs(vec) ** 2, axis=(-2, -1)) + np.sum(potential(positions), axis=-1) + scalar) / N


def radial_rule(
    params: AnyonPairParams, outer: float, nodes: int = RADIAL_NODES
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for int_0^outer h(r) dr split at R and b.

    Gauss-Legendre in r on [0, R] and in log r beyond, where the pair weights
    behave like powers of 1/r.
    """
    if params.alpha > 0 and not params.uniform_jastrow and params.R == 0.0:
        raise ParameterDomainError("pair quadrature needs R > 0")
    x, w = np.polynomial.legendre.leggauss(nodes)
    breaks = sorted({b for b in (params.R, params.b) if 0.0 < b < outer} | {outer})
    r_parts, w_parts = [], []
    lo = 0.0
    for hi in breaks:
        if lo == 0.0:
            r_parts.append(0.5 * hi * (x + 1.0))
            w_parts.append(0.5 * hi * w)
        else:
            t = 0.5 * (math.log(hi) - math.log(lo)) * (x + 1.0) + math.log(lo)
            rr = np.exp(t)
            r_parts.append(rr)
            w_parts.append(0.5 * (math.log(hi) - math.log(lo)) * w * rr)
        lo = hi
    return np.concatenate(r_parts), np.concatenate(w_parts)


def rao_blackwell_terms(
    positions: np.ndarray,
    u: Condensate,
    params: AnyonPairParams,
    r: np.ndarray | None = None,
    chunk: int = 32,
) -> tuple[np.ndarray, np.ndarray]:
    """W and S_diag with the within-radius pair sums replaced by conditional averages.

    For each particle i the pairs closer than rho = max(b, R) are replaced by
    (N - 1) int_{|y|<rho} w f^2 |u(x_i + y)|^2 dy / Z(x_i), the average over a
    partner drawn from f^2 |u|^2 around x_i; farther pairs keep their sample
    values. At N = 2 this is the exact conditional expectation.
    """
    if r is None:
        _, r = pair_separations(positions)
    P, N = positions.shape[0], positions.shape[-2]
    rho = max(params.b, params.R)
    radii, weights = radial_rule(params, rho)
    theta = 2.0 * np.pi * np.arange(ANGULAR_NODES) / ANGULAR_NODES
    ring = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    offsets = radii[:, None, None] * ring[None, :, :]

    f2 = jastrow_f(radii, params) ** 2
    ws = _singular_weight(radii, params)
    ww = _scalar_weight(radii, params)
    rw = weights * radii

    off = ~np.eye(N, dtype=bool)
    far = (r >= rho) & off
    s_far = np.sum(_singular_weight(np.where(far, r, 0.0), params) * far, axis=(-2, -1))
    w_far = np.sum(_scalar_weight(np.where(far, r, 0.0), params) * far, axis=(-2, -1))

    s_near = np.empty(P)
    w_near = np.empty(P)
    for start in range(0, P, chunk):
        block = positions[start : start + chunk]
        pts = block[:, :, None, None, :] + offsets[None, None]
        ring_avg = u.density(pts).mean(axis=-1) * 2.0 * np.pi
        Z = 1.0 - ring_avg @ (rw * (1.0 - f2))
        s_int = ring_avg @ (rw * f2 * ws)
        w_int = ring_avg @ (rw * f2 * ww)
        with np.errstate(divide="ignore", invalid="ignore"):
            s_near[start : start + chunk] = (N - 1) * np.sum(np.where(Z > 0, s_int / Z, 0.0), axis=-1)
            w_near[start : start + chunk] = (N - 1) * np.sum(np.where(Z > 0, w_int / Z, 0.0), axis=-1)
    return (w_near + w_far) / N, (s_near + s_far) / N
