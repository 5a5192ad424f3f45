"""
The trial state Psi = F Phi with Phi = prod u(x_i) and F = prod_{i<j} f(|x_i - x_j|).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from config.exceptions import ParameterDomainError
from twobody import AnyonPairParams, jastrow_f

from .condensate import Condensate


@dataclass(frozen=True)
class ParticleConfig:
    positions: np.ndarray

    def __post_init__(self) -> None:
        positions = np.asarray(self.positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise ParameterDomainError("positions must have shape (N, 2)")
        if positions.shape[0] < 2:
            raise ParameterDomainError("a configuration needs N >= 2 particles")
        if not np.all(np.isfinite(positions)):
            raise ParameterDomainError("positions must be finite")
        object.__setattr__(self, "positions", positions)

    @property
    def N(self) -> int:
        return self.positions.shape[0]


def _positions(config: ParticleConfig | np.ndarray) -> np.ndarray:
    if isinstance(config, ParticleConfig):
        return config.positions
    return np.asarray(config, dtype=float)


def pair_separations(positions: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """d[..., i, j, :] = x_i - x_j and its length, for positions of shape (..., N, 2)."""
    d = positions[..., :, None, :] - positions[..., None, :, :]
    return d, np.hypot(d[..., 0], d[..., 1])


def upper_pairs(N: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(N, k=1)


def log_jastrow(positions: np.ndarray, params: AnyonPairParams) -> np.ndarray:
    """2 sum_{i<j} log f(|x_i - x_j|); -inf when some f vanishes."""
    positions = _positions(positions)
    _, r = pair_separations(positions)
    iu, ju = upper_pairs(positions.shape[-2])
    f = jastrow_f(r[..., iu, ju], params)
    with np.errstate(divide="ignore"):
        return 2.0 * np.sum(np.log(f), axis=-1)


def log_weight(
    config: ParticleConfig | np.ndarray, u: Condensate, params: AnyonPairParams
) -> np.ndarray | float:
    """log |Psi|^2 = 2 sum log|u(x_i)| + 2 sum_{i<j} log f; vectorized over leading axes."""
    positions = _positions(config)
    value = 2.0 * np.sum(u.log_abs(positions), axis=-1) + log_jastrow(positions, params)
    if np.ndim(value) == 0:
        return float(value)
    return value


def jastrow_squared(positions: np.ndarray, params: AnyonPairParams) -> np.ndarray:
    """F^2 for configurations of shape (..., N, 2)."""
    return np.exp(log_jastrow(positions, params))
