"""Exception taxonomy.

Every numerical failure mode surfaces as a distinct exception type instead of
a NaN or a silently inaccurate number.  The CLI maps these onto exit codes.
"""


class SingTunnelError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SingTunnelError):
    """Input outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested at (or within tolerance of) a pole."""


class GuardBandError(DomainError):
    """Input falls inside a refused guard band next to a pole or regime edge."""


class ConvergenceError(SingTunnelError):
    """An iterative representation failed to converge within its cap."""


class NoRootError(SingTunnelError):
    """A bracketing root search could not establish a sign change."""


class DegenerateError(SingTunnelError):
    """A linear solve hit a (near-)vanishing pivot the model does not define."""


class ResolutionError(SingTunnelError):
    """Grid parameters violate the resolution or domain-size requirements."""
