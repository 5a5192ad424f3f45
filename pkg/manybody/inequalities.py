"""
Pointwise inequalities used by the energy bounds, evaluated on batches.
"""

from __future__ import annotations

import numpy as np

from twobody import AnyonPairParams, jastrow_f

from .wavefunction import pair_separations, upper_pairs

PRODUCT_SLACK = 1e-12


def product_inequality_holds(positions: np.ndarray, params: AnyonPairParams) -> np.ndarray:
    """1 >= F^2 >= 1 - sum_{i<j} (1 - f_ij^2) for each configuration of shape (..., N, 2)."""
    positions = np.asarray(positions, dtype=float)
    _, r = pair_separations(positions)
    iu, ju = upper_pairs(positions.shape[-2])
    f2 = jastrow_f(r[..., iu, ju], params) ** 2
    F2 = np.prod(f2, axis=-1)
    lower = 1.0 - np.sum(1.0 - f2, axis=-1)
    return (F2 >= lower - PRODUCT_SLACK) & (F2 <= 1.0 + PRODUCT_SLACK)


def _smeared_inverse(d: np.ndarray, R: float) -> np.ndarray:
    """d / max(|d|, R)^2, zero at d = 0."""
    r2 = np.sum(d**2, axis=-1)
    denom = np.maximum(r2, R**2)
    safe = np.where(denom > 0, denom, 1.0)
    return np.where((denom > 0)[..., None], d / safe[..., None], 0.0)


def three_body_kernel(x: np.ndarray, y: np.ndarray, z: np.ndarray, R: float = 0.0) -> np.ndarray:
    """Cyclic sum of (x - y)/|x - y|_R^2 . (x - z)/|x - z|_R^2 over (x, y, z); points have shape (..., 2)."""
    x, y, z = (np.asarray(p, dtype=float) for p in (x, y, z))
    total = 0.0
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        total = total + np.sum(_smeared_inverse(a - b, R) * _smeared_inverse(a - c, R), axis=-1)
    return total
