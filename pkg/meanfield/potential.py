"""
Trapping potentials and the CSS parameter set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from config.exceptions import ParameterDomainError

POTENTIAL_KINDS = ("harmonic", "power", "zero")


@dataclass(frozen=True)
class PotentialSpec:
    """V(x) = coefficient * |x|^exponent; ``harmonic`` fixes the exponent at 2."""

    kind: str = "harmonic"
    coefficient: float = 1.0
    exponent: float = 2.0

    def __post_init__(self) -> None:
        if self.kind not in POTENTIAL_KINDS:
            raise ParameterDomainError(f"unknown potential kind {self.kind!r}")
        if not math.isfinite(self.coefficient) or self.coefficient < 0:
            raise ParameterDomainError("potential coefficient must be finite and non-negative")
        if self.kind == "harmonic" and self.exponent != 2.0:
            raise ParameterDomainError("harmonic potential has exponent 2")
        if not math.isfinite(self.exponent) or self.exponent <= 0:
            raise ParameterDomainError("potential exponent must be positive")

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero" or self.coefficient == 0.0

    def evaluate(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.is_zero:
            return np.zeros(np.broadcast(x, y).shape)
        r2 = x**2 + y**2
        if self.exponent == 2.0:
            return self.coefficient * r2
        return self.coefficient * r2 ** (0.5 * self.exponent)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """V at points of shape (..., 2)."""
        points = np.asarray(points, dtype=float)
        return self.evaluate(points[..., 0], points[..., 1])


@dataclass(frozen=True)
class CSSParams:
    beta: float
    gamma: float
    potential: PotentialSpec = field(default_factory=lambda: PotentialSpec("zero"))

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and math.isfinite(self.gamma)):
            raise ParameterDomainError("beta and gamma must be finite")

    def with_gamma(self, gamma: float) -> CSSParams:
        return CSSParams(beta=self.beta, gamma=gamma, potential=self.potential)
