"""Transmission through power-law singular potentials.

Scattering on V(x) = V0/|x|^alpha in one dimension, solved by matching
probability currents of exact interior solutions -- no cutoff regularization.
An independent Numerov integrator over cutoff-regularized potentials provides
the cross-check.
"""

from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    GuardBandError,
    NoRootError,
    PoleError,
    ResolutionError,
    SingTunnelError,
)
from .results import ScatteringResult, Status

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DegenerateError",
    "DomainError",
    "GuardBandError",
    "NoRootError",
    "PoleError",
    "ResolutionError",
    "ScatteringResult",
    "SingTunnelError",
    "Status",
    "__version__",
]
