"""
Project-wide exception hierarchy.

Numerical packages raise these; the harness management commands translate
them into ``CommandError`` with a non-zero exit status.
"""


class AnyonLabError(Exception):
    """Base class for every error raised by the laboratory."""


class ParameterDomainError(AnyonLabError, ValueError):
    """Parameters or inputs outside the domain where the formulas are defined."""


class ConvergenceError(AnyonLabError):
    """A linear solve, minimizer or iterative estimate did not converge."""


class BracketError(ConvergenceError):
    """The numerical two-body energy fell outside its analytic bracket."""


class SamplerError(AnyonLabError):
    """Metropolis initialization or step-size tuning failed."""


class PaddingError(AnyonLabError):
    """A density reaches into the zero-padding margin of the spectral grid."""


class DivergenceError(ConvergenceError):
    """The CSS energy decreases without bound (collapse regime)."""


class PolynomialPairError(ParameterDomainError):
    """Polynomial pair is not coprime or not linearly independent."""


class ScheduleRegimeWarning(UserWarning):
    """A scaling schedule left the regime covered by the limit theorem."""
