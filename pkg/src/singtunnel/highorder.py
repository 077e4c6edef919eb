"""Steeper-than-1/|x| singularities: forced results plus executable checks.

For exponents above 1 the origin stops acting like a point the wave can
cross: matching currents across it forces zero transmission for every
barrier (and for 1 < alpha < 2 wells too), while wells at alpha >= 2 leave
the problem without a unique answer.  Nothing here integrates an ODE; the
functions return the forced results with honest statuses and provide the
numerical consistency checks backing them.

A caution on the amplitude algebra at 1 < alpha < 2.  The displayed
constraint set -- continuity a_l_plus + a_l_minus = a_r_plus together with
current equality |a_l_plus|^2 - |a_l_minus|^2 = |a_r_plus|^2 -- reduces to
the single real condition Re[(a_l_plus + a_l_minus) conj(a_l_minus)] = 0,
whose solution manifold also contains transmitting points such as
(a_l_plus, a_l_minus) = (1, 0).  Only the stronger closure that drives the
combined amplitude itself to zero pins down the antisymmetric solution
a_l_minus = -a_l_plus; intermediate_compatibility_check solves that closed
system and reports the result, and current_equality_residual exposes the
raw constraint so the wider manifold stays visible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError
from .results import ScatteringResult, Status

AMPLITUDE_TOL = 1e-8  # invariant enforcement on stored amplitude sets
RNG_SEED = 20260823


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InverseSquareBasis:
    """Order of the sqrt(z)-weighted Bessel pair solving the alpha = 2 case."""

    u0: float

    def __post_init__(self):
        if self.u0 <= -0.25:
            raise DomainError(
                f"inverse-square strength must exceed -1/4, got {self.u0}"
            )

    @property
    def nu(self) -> float:
        return math.sqrt(0.25 + self.u0)


@dataclass(frozen=True)
class IntermediateAmplitudes:
    """Wave coefficients on both sides for 1 < alpha < 2.

    Stored sets must satisfy the matching relations: no incoming wave from
    the right, continuity across the origin, and equality of the left and
    right probability currents.
    """

    a_l_plus: complex
    a_l_minus: complex
    a_r_plus: complex
    a_r_minus: complex

    def __post_init__(self):
        scale = max(
            abs(self.a_l_plus), abs(self.a_l_minus), abs(self.a_r_plus), 1.0
        )
        if abs(self.a_r_minus) > AMPLITUDE_TOL * scale:
            raise ValueError("right side must be outgoing-only")
        gap = self.a_l_plus + self.a_l_minus - self.a_r_plus
        if abs(gap) > AMPLITUDE_TOL * scale:
            raise ValueError("amplitudes violate continuity across the origin")
        current_gap = (
            abs(self.a_l_plus) ** 2
            - abs(self.a_l_minus) ** 2
            - abs(self.a_r_plus) ** 2
        )
        if abs(current_gap) > AMPLITUDE_TOL * scale * scale:
            raise ValueError("amplitudes violate current equality")


@dataclass(frozen=True)
class CompatibilityReport:
    samples: int
    converged: int
    max_right_amplitude: float
    max_constraint_residual: float
    antisymmetric_fraction: float


# ---------------------------------------------------------------------------
# forced transmission results
# ---------------------------------------------------------------------------


def _require_energy(epsilon: float) -> None:
    if epsilon <= 0.0:
        raise DomainError(f"energy must be positive, got {epsilon}")


def _require_strength(u0: float) -> None:
    if u0 == 0.0:
        raise DomainError("zero strength is the free particle, not this regime")


def intermediate_transmission(
    u0: float, alpha: float, epsilon: float
) -> ScatteringResult:
    """T/R for 1 < alpha < 2: zero transmission regardless of sign of u0.

    The sqrt(|z|)-modulated wave pair carries currents whose matching
    across the origin annihilates the transmitted component; the result
    holds at every energy, so no number is actually computed.
    """
    if not 1.0 < alpha < 2.0:
        raise DomainError(f"exponent must lie in (1, 2), got {alpha}")
    _require_strength(u0)
    _require_energy(epsilon)
    return ScatteringResult(T=0.0, R=1.0, status=Status.FORCED_ZERO)


def inverse_square_transmission(u0: float, epsilon: float) -> ScatteringResult:
    """T/R at alpha = 2: barriers are opaque, wells have no unique answer.

    Strengths at or below -1/4 put the Bessel order off the real axis
    (collapse territory) and are rejected outright.
    """
    InverseSquareBasis(u0)
    _require_strength(u0)
    _require_energy(epsilon)
    if u0 > 0.0:
        return ScatteringResult(T=0.0, R=1.0, status=Status.FORCED_ZERO)
    return ScatteringResult(T=None, R=None, status=Status.UNDETERMINED)


def extra_singular_transmission(
    u0: float, alpha: float, epsilon: float
) -> ScatteringResult:
    """T/R for alpha > 2: same conclusions as the inverse-square case."""
    if alpha <= 2.0:
        raise DomainError(f"exponent must exceed 2, got {alpha}")
    _require_strength(u0)
    _require_energy(epsilon)
    if u0 > 0.0:
        return ScatteringResult(T=0.0, R=1.0, status=Status.FORCED_ZERO)
    return ScatteringResult(T=None, R=None, status=Status.UNDETERMINED)


# ---------------------------------------------------------------------------
# consistency checks: 1 < alpha < 2
# ---------------------------------------------------------------------------


def near_origin_h(z: float, u0: float, alpha: float) -> complex:
    """Leading behavior of the envelope phase integral near the origin.

    h(z) ~ u0 |z|^(2-alpha) / ((1-alpha)(2-alpha)) -> 0, which is what makes
    plain continuity of the wave function the right matching condition.
    Valid only close in; |z| is capped at 0.1.
    """
    if not 1.0 < alpha < 2.0:
        raise DomainError(f"exponent must lie in (1, 2), got {alpha}")
    if not 0.0 < abs(z) <= 0.1:
        raise DomainError(f"need 0 < |z| <= 0.1, got {z}")
    return u0 * abs(z) ** (2.0 - alpha) / ((1.0 - alpha) * (2.0 - alpha))


def current_equality_residual(a_l_plus: complex, a_l_minus: complex) -> float:
    """|current difference| when a_r_plus is taken from continuity.

    Zero on the full constraint manifold Re[(a_l_plus + a_l_minus)
    conj(a_l_minus)] = 0, which includes transmitting points with
    a_l_minus = 0; see the module docstring.
    """
    a_r_plus = a_l_plus + a_l_minus
    return abs(
        abs(a_l_plus) ** 2 - abs(a_l_minus) ** 2 - abs(a_r_plus) ** 2
    )


def _gauss_newton_pair(x0: np.ndarray, max_iter: int = 200):
    """Drive (current difference, |combined amplitude|^2) to zero.

    x = (Re a_l_plus, Im a_l_plus, Re a_l_minus, Im a_l_minus).
    Returns (x, residual_norm).
    """

    def residuals(x):
        d = x[0] ** 2 + x[1] ** 2 - x[2] ** 2 - x[3] ** 2
        s = (x[0] + x[2]) ** 2 + (x[1] + x[3]) ** 2
        return np.array([d, s])

    def measure(r):
        # per-residual scales: d bottoms out at its ~1e-16 roundoff floor,
        # while s bounds |a_r_plus|^2 and must be driven much further down
        return max(abs(r[0]) / 1e-12, r[1] / 1e-20)

    x = x0.astype(float)
    r = residuals(x)
    for _ in range(max_iter):
        if measure(r) <= 1.0:
            break
        jac = np.array(
            [
                [2.0 * x[0], 2.0 * x[1], -2.0 * x[2], -2.0 * x[3]],
                [
                    2.0 * (x[0] + x[2]),
                    2.0 * (x[1] + x[3]),
                    2.0 * (x[0] + x[2]),
                    2.0 * (x[1] + x[3]),
                ],
            ]
        )
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        lam = 1.0
        for _ in range(25):
            trial = x + lam * step
            r_trial = residuals(trial)
            if measure(r_trial) < measure(r):
                x, r = trial, r_trial
                break
            lam *= 0.5
        else:
            break
    return x, float(np.hypot(r[0], r[1]))


def intermediate_compatibility_check(samples: int) -> CompatibilityReport:
    """Solve the closed matching system from random starts; report extremes.

    Each start is driven to the system {left-right current difference = 0,
    combined left amplitude = 0}; every converged solution has
    a_l_minus = -a_l_plus and hence zero transmitted amplitude.  The report
    carries the largest |a_r_plus| seen so the claim is checkable, plus the
    worst raw-constraint residual as a solver health number.
    """
    if samples < 1:
        raise DomainError(f"need at least one sample, got {samples}")
    rng = np.random.default_rng(RNG_SEED)
    converged = 0
    antisym = 0
    max_right = 0.0
    max_resid = 0.0
    for _ in range(samples):
        x0 = rng.uniform(-1.0, 1.0, size=4)
        x, norm = _gauss_newton_pair(x0)
        if norm > 1e-10:
            continue  # counts as non-converged, not as a counterexample
        converged += 1
        a_l_plus = complex(x[0], x[1])
        a_l_minus = complex(x[2], x[3])
        max_right = max(max_right, abs(a_l_plus + a_l_minus))
        max_resid = max(
            max_resid, current_equality_residual(a_l_plus, a_l_minus)
        )
        scale = max(abs(a_l_plus), 1e-30)
        if abs(a_l_plus + a_l_minus) <= 1e-8 * max(scale, 1.0):
            antisym += 1
    return CompatibilityReport(
        samples=samples,
        converged=converged,
        max_right_amplitude=max_right,
        max_constraint_residual=max_resid,
        antisymmetric_fraction=antisym / max(converged, 1),
    )


# ---------------------------------------------------------------------------
# consistency checks: alpha = 2
# ---------------------------------------------------------------------------


def outgoing_combination_check(
    u0: float, epsilon: float, z_far: float, ratio: complex = -1j
) -> float:
    """Incoming-wave contamination of the selected far-field combination.

    The alpha = 2 solutions are sqrt(z) J_nu(kz) and sqrt(z) Y_nu(kz); the
    coefficient choice a_1 = ratio * a_2 with ratio = -i makes the
    combination proportional to J_nu + i Y_nu, a pure outgoing wave at
    large kz.  Projects C = ratio*J + Y onto the incoming Hankel mode via
    Wronskians and returns |incoming| / |outgoing|; ratio = +i flips the
    roles and returns ~1 (the built-in sanity contrast).
    """
    if u0 <= 0.0:
        raise DomainError(f"check applies to barriers, got u0 = {u0}")
    _require_energy(epsilon)
    k = math.sqrt(epsilon)
    if z_far < 50.0 / k:
        raise DomainError(
            f"need z_far >= {50.0 / k:.6g} at this energy, got {z_far}"
        )
    nu = InverseSquareBasis(u0).nu
    x = k * z_far
    j, y, jp, yp = specfun.bessel_jy(nu, x)
    c = ratio * j + y
    cp = ratio * jp + yp
    h_out = j + 1j * y
    h_out_p = jp + 1j * yp
    # Wronskian of (incoming, outgoing) Hankel pair is 4i/(pi x)
    w = math.pi * x / 4j
    incoming = w * (c * h_out_p - cp * h_out)
    outgoing = -w * (c * h_out_p.conjugate() - cp * h_out.conjugate())
    return abs(incoming) / math.hypot(abs(incoming), abs(outgoing))


def half_integer_outgoing_residual(x: float) -> complex:
    """Deviation of J_{1/2} + i Y_{1/2} from -i sqrt(2/(pi x)) e^{ix}.

    The half-integer order is the u0 = 0 corner of the basis; the exact
    elementary form anchors the outgoing identification above.
    """
    if x <= 0.0:
        raise DomainError(f"need x > 0, got {x}")
    j, y, _, _ = specfun.bessel_jy(0.5, x)
    return complex(j, y) - (-1j) * math.sqrt(2.0 / (math.pi * x)) * cmath.exp(
        1j * x
    )
