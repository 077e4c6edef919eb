"""Weakly singular exponents, 0 < alpha < 1.

The scattering solution is written as exp(h(z) +/- i sqrt(eps) z) with an
envelope exponent h that carries the whole effect of the potential.  Its
derivative has a closed form in the upper incomplete gamma function, and the
transmitted/reflected amplitudes collapse to

    t = X + 1/2,   r = X - 1/2,
    X = A / (2 conj A),
    A = 2 eps - (2i)^alpha eps^(alpha/2) Gamma(1-alpha) u0.

Because numerator and denominator core are complex conjugates, |X| = 1/2 and
|t|^2 + |r|^2 = 1 hold structurally, not just numerically.

Total reflection: for u0 > 0 the real part of A crosses zero at one energy,
where r = -1.  Found by bisection here; the closed form of the root serves as
the independent check in the tests.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from . import specfun
from .errors import DomainError, GuardBandError, NoRootError
from .results import ScatteringResult, Side, Status

# alpha this close to 1 runs into the Gamma(1-alpha) pole; refuse rather
# than return blown-up intermediates.
ALPHA_GUARD_BAND = 1e-6


class WaveBranch(enum.Enum):
    """Sign of the oscillatory factor exp(+/- i sqrt(eps) z)."""

    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class MildAmplitudes:
    t: complex
    r: complex

    @property
    def T(self) -> float:
        return abs(self.t) ** 2

    @property
    def R(self) -> float:
        return abs(self.r) ** 2


def _validate(epsilon: float, alpha: float) -> None:
    if epsilon <= 0.0:
        raise DomainError(f"energy must be positive, got {epsilon}")
    if alpha <= 0.0 or alpha >= 1.0:
        raise DomainError(f"mild regime needs 0 < alpha < 1, got {alpha}")
    if alpha > 1.0 - ALPHA_GUARD_BAND:
        raise GuardBandError(
            f"alpha = {alpha} is inside the Gamma(1-alpha) pole guard band"
        )


def core_amplitude(epsilon: float, u0: float, alpha: float) -> complex:
    """A = 2 eps - (2i)^alpha eps^(alpha/2) Gamma(1-alpha) u0."""
    _validate(epsilon, alpha)
    g = specfun.complex_gamma(1.0 - alpha).real
    return (
        2.0 * epsilon
        - specfun.principal_power(2j, alpha) * epsilon ** (0.5 * alpha) * g * u0
    )


def core_ratio(epsilon: float, u0: float, alpha: float) -> complex:
    """X = A / (2 conj A); |X| = 1/2 up to roundoff."""
    if u0 == 0.0:
        raise DomainError("u0 = 0 is free propagation, not a scattering problem")
    a = core_amplitude(epsilon, u0, alpha)
    return a / (2.0 * a.conjugate())


def amplitudes(epsilon: float, u0: float, alpha: float) -> MildAmplitudes:
    x = core_ratio(epsilon, u0, alpha)
    return MildAmplitudes(t=x + 0.5, r=x - 0.5)


def transmission(epsilon: float, u0: float, alpha: float) -> ScatteringResult:
    amp = amplitudes(epsilon, u0, alpha)
    return ScatteringResult(T=amp.T, R=amp.R, status=Status.COMPUTED)


def total_reflection_energy(u0: float, alpha: float) -> float:
    """The energy where reflection reaches 1 (Re A = 0), for u0 > 0.

    Bracketed bisection: geometric expansion of the bracket from eps = 1e-6,
    then 50 halvings.
    """
    if u0 <= 0.0:
        raise DomainError("total reflection exists only for repulsive u0 > 0")
    _validate(1.0, alpha)

    def f(eps: float) -> float:
        return core_amplitude(eps, u0, alpha).real

    lo = 1e-6
    expansions = 0
    while f(lo) >= 0.0:
        lo *= 0.25
        expansions += 1
        if expansions > 200 or lo == 0.0:
            raise NoRootError("no sign change found while shrinking the bracket")
    hi = max(2e-6, lo * 4.0)
    expansions = 0
    while f(hi) <= 0.0:
        hi *= 2.0
        expansions += 1
        if expansions > 200:
            raise NoRootError("no sign change found while expanding the bracket")
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * mid:
            break
    return 0.5 * (lo + hi)


def _oscillation_rate(branch: WaveBranch, epsilon: float) -> complex:
    # The envelope ODE h'' - w h' = u0 |z|^-alpha integrates against
    # exp(w z) with w = -/+ 2i sqrt(eps) for the +/- branch.
    return -branch.value * 2j * math.sqrt(epsilon)


def h_prime(
    z: float,
    side: Side,
    branch: WaveBranch,
    epsilon: float,
    u0: float,
    alpha: float,
) -> complex:
    """Envelope derivative h'(z) on one side of the singularity.

    Decays like |z|^-alpha far out; tends to a finite constant at the origin.
    """
    _validate(epsilon, alpha)
    if z == 0.0:
        raise DomainError("h' is evaluated away from the singular point")
    if (z > 0.0) != (side is Side.RIGHT):
        raise DomainError(f"z = {z} is not on the {side.name} side")
    if u0 == 0.0:
        return 0.0 + 0.0j
    w = _oscillation_rate(branch, epsilon)
    arg = w * z
    tail = specfun.upper_incomplete_gamma(1.0 - alpha, arg)
    if side is Side.RIGHT:
        return -u0 * specfun.principal_power(w, alpha - 1.0) * cmath.exp(arg) * tail
    return u0 * specfun.principal_power(-w, alpha - 1.0) * cmath.exp(arg) * tail


def h_value(
    z: float,
    side: Side,
    branch: WaveBranch,
    epsilon: float,
    u0: float,
    alpha: float,
) -> complex:
    """Envelope exponent h(z), normalized so h -> 0 at the origin."""
    _validate(epsilon, alpha)
    if z == 0.0:
        raise DomainError("h is evaluated away from the singular point")
    if (z > 0.0) != (side is Side.RIGHT):
        raise DomainError(f"z = {z} is not on the {side.name} side")
    if u0 == 0.0:
        return 0.0 + 0.0j
    w = _oscillation_rate(branch, epsilon)
    base = w if side is Side.RIGHT else -w
    c = -u0 * specfun.principal_power(base, alpha - 2.0) / (1.0 - alpha)
    g2 = specfun.complex_gamma(2.0 - alpha).real
    arg = w * z
    return c * (cmath.exp(arg) * specfun.upper_incomplete_gamma(2.0 - alpha, arg) - g2)
