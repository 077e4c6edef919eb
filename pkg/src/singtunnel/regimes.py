"""Exponent classification and the single transmission entry point.

The five analytic regimes of V = V0/|x|^alpha behave qualitatively
differently, and the integer boundaries alpha = 1, 2 are their own worlds;
inputs within 1e-12 of an integer snap onto it so that binary floats meaning
"1" land on the 1/|x| treatment.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import coulomb, highorder, mild
from .errors import DomainError
from .results import ScatteringResult, Status

INTEGER_SNAP = 1e-12


class Regime(enum.Enum):
    MILDLY_SINGULAR = "mildly_singular"  # 0 < alpha < 1
    COULOMB = "coulomb"  # alpha = 1
    INTERMEDIATE = "intermediate"  # 1 < alpha < 2
    INVERSE_SQUARE = "inverse_square"  # alpha = 2
    EXTRA_SINGULAR = "extra_singular"  # alpha > 2


@dataclass(frozen=True)
class PotentialSpec:
    """Potential strength u0 and exponent alpha (V = u0 / |z|^alpha)."""

    u0: float
    alpha: float

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise DomainError(f"exponent must be positive, got {self.alpha}")

    @property
    def regime(self) -> Regime:
        return classify(self.alpha)


def classify(alpha: float) -> Regime:
    if alpha <= 0.0:
        raise DomainError(f"exponent must be positive, got {alpha}")
    if abs(alpha - 1.0) <= INTEGER_SNAP:
        return Regime.COULOMB
    if abs(alpha - 2.0) <= INTEGER_SNAP:
        return Regime.INVERSE_SQUARE
    if alpha < 1.0:
        return Regime.MILDLY_SINGULAR
    if alpha < 2.0:
        return Regime.INTERMEDIATE
    return Regime.EXTRA_SINGULAR


def transmission_any(spec: PotentialSpec, epsilon: float) -> ScatteringResult:
    """Transmission/reflection for any exponent, dispatched by regime.

    ForcedZero marks analytically-forced impenetrability (no numerics ran);
    Undetermined marks strengths where no self-adjoint scattering problem
    exists to solve.
    """
    if epsilon <= 0.0:
        raise DomainError(f"energy must be positive, got {epsilon}")
    if spec.u0 == 0.0:
        return ScatteringResult(T=1.0, R=0.0, status=Status.COMPUTED)
    regime = classify(spec.alpha)
    if regime is Regime.MILDLY_SINGULAR:
        return mild.transmission(epsilon, spec.u0, spec.alpha)
    if regime is Regime.COULOMB:
        return coulomb.transmission(coulomb.CoulombParams(epsilon, spec.u0))
    if regime is Regime.INTERMEDIATE:
        return highorder.intermediate_transmission(spec.u0, spec.alpha, epsilon)
    if regime is Regime.INVERSE_SQUARE:
        return highorder.inverse_square_transmission(spec.u0, epsilon)
    return highorder.extra_singular_transmission(spec.u0, spec.alpha, epsilon)
