"""
Parameter types for the two-body problem and the N-dependent scaling schedule.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from config.exceptions import ParameterDomainError, ScheduleRegimeWarning

logger = logging.getLogger(__name__)

ALPHA_MAX = 0.25


@dataclass(frozen=True)
class AnyonPairParams:
    """Microscopic parameters (alpha, R, b, g) of the extended-anyon pair.

    ``log_R`` carries log R when R itself underflows (R = exp(-N omega) for
    large N). ``uniform_jastrow`` selects f = 1, the only admissible choice
    once R >= b.
    """

    alpha: float
    R: float
    b: float
    g: float
    log_R: float | None = None
    uniform_jastrow: bool = False

    def __post_init__(self) -> None:
        for name in ("alpha", "R", "b", "g"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ParameterDomainError(f"{name} must be finite, got {value}")
        if not 0.0 <= self.alpha < ALPHA_MAX:
            raise ParameterDomainError(
                f"alpha must satisfy 0 <= alpha < 1/4, got {self.alpha}"
            )
        if self.g < 0:
            raise ParameterDomainError(f"g must be non-negative, got {self.g}")
        if self.b <= 0:
            raise ParameterDomainError(f"b must be positive, got {self.b}")
        if self.R < 0:
            raise ParameterDomainError(f"R must be non-negative, got {self.R}")
        if not self.uniform_jastrow and self.log_ratio >= 0.0:
            raise ParameterDomainError(f"R must be smaller than b (R={self.R}, b={self.b})")
        if self.R_is_zero and self.g != 0:
            raise ParameterDomainError("R = 0 is only admissible for g = 0")

    @property
    def R_is_zero(self) -> bool:
        return self.R == 0.0 and self.log_R is None

    @property
    def log_ratio(self) -> float:
        """log(R/b), -inf when R = 0."""
        if self.log_R is not None:
            return self.log_R - math.log(self.b)
        if self.R == 0.0:
            return -math.inf
        return math.log(self.R) - math.log(self.b)

    @property
    def q(self) -> float:
        """(R/b)^(2 alpha), evaluated in log space."""
        if self.uniform_jastrow or self.alpha == 0.0:
            return 1.0
        return math.exp(2.0 * self.alpha * self.log_ratio)

    @property
    def q_underflow(self) -> bool:
        """True when (R/b)^(2 alpha) is below the smallest double and reads as 0."""
        return self.q == 0.0 and not self.R_is_zero

    def with_alpha(self, alpha: float) -> AnyonPairParams:
        return AnyonPairParams(
            alpha=alpha,
            R=self.R,
            b=self.b,
            g=self.g,
            log_R=self.log_R,
            uniform_jastrow=self.uniform_jastrow,
        )


@dataclass(frozen=True)
class JastrowCoefficients:
    lambda1: float
    lambda2: float


@dataclass(frozen=True)
class ScalingSchedule:
    """N-dependent parameters: alpha = beta/(N-1), R = exp(-N omega), b = N^(-b_exponent).

    ``b`` overrides the power law for desk-scale runs at moderate b.
    """

    N: int
    beta: float
    omega: float
    g: float = 0.0
    b_exponent: float = 2.5
    b: float | None = None

    @property
    def alpha(self) -> float:
        return self.beta / (self.N - 1)

    @property
    def log_R(self) -> float:
        return -self.N * self.omega

    @property
    def b_value(self) -> float:
        if self.b is not None:
            return self.b
        return float(self.N) ** (-self.b_exponent)

    @property
    def s(self) -> float:
        """Limit argument 2 beta omega of the coupling function G."""
        return 2.0 * self.beta * self.omega


@dataclass(frozen=True)
class RadialProfile:
    nodes: np.ndarray
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape:
            raise ParameterDomainError("nodes and values must be 1-D arrays of equal length")
        if nodes.size < 2 or np.any(np.diff(nodes) <= 0):
            raise ParameterDomainError("profile nodes must be strictly increasing")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(values))):
            raise ParameterDomainError("profile nodes and values must be finite")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    def __call__(self, r: np.ndarray | float) -> np.ndarray:
        return np.interp(r, self.nodes, self.values)


def schedule_params(schedule: ScalingSchedule) -> AnyonPairParams:
    """Map a scaling schedule to pair parameters at its particle number.

    Schedules with R >= b (always the case for omega = 0) fall back to the
    uniform Jastrow factor f = 1 and are flagged with ``ScheduleRegimeWarning``.
    """
    if schedule.N < 2:
        raise ParameterDomainError(f"schedule needs N >= 2, got {schedule.N}")
    if schedule.beta < 0 or schedule.omega < 0:
        raise ParameterDomainError("beta and omega must be non-negative")
    alpha = schedule.alpha
    if alpha >= ALPHA_MAX:
        raise ParameterDomainError(
            f"alpha = beta/(N-1) = {alpha:.4g} violates alpha < 1/4 at N={schedule.N}"
        )
    if schedule.b is None and schedule.b_exponent <= 2:
        _flag(f"b exponent {schedule.b_exponent} <= 2: N^2 b_N does not vanish")

    log_R = schedule.log_R
    b = schedule.b_value
    R = math.exp(log_R)
    uniform = log_R >= math.log(b)
    if uniform:
        _flag(
            f"R = exp({log_R:.4g}) >= b = {b:.4g} at N={schedule.N}; using f = 1"
        )
    return AnyonPairParams(
        alpha=alpha,
        R=R,
        b=b,
        g=schedule.g,
        log_R=log_R,
        uniform_jastrow=uniform,
    )


def _flag(message: str) -> None:
    logger.warning(message)
    warnings.warn(message, ScheduleRegimeWarning, stacklevel=3)
