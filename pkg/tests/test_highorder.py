"""Steep-singularity regimes: forced results and their consistency checks."""

import math

import pytest

from singtunnel import highorder, specfun
from singtunnel.errors import ConvergenceError, DomainError
from singtunnel.highorder import (
    IntermediateAmplitudes,
    InverseSquareBasis,
    current_equality_residual,
)
from singtunnel.results import Status


# ---------------------------------------------------------------------------
# forced transmission results
# ---------------------------------------------------------------------------


def test_intermediate_forced_zero():
    for u0, alpha, eps in ((1.0, 1.5, 2.0), (-1.0, 1.5, 2.0), (1.0, 1.5, 1e6)):
        res = highorder.intermediate_transmission(u0, alpha, eps)
        assert res.status is Status.FORCED_ZERO
        assert res.T == 0.0 and res.R == 1.0


def test_intermediate_domain():
    for bad_alpha in (1.0, 2.0, 0.5, 2.5):
        with pytest.raises(DomainError):
            highorder.intermediate_transmission(1.0, bad_alpha, 1.0)
    with pytest.raises(DomainError):
        highorder.intermediate_transmission(0.0, 1.5, 1.0)
    with pytest.raises(DomainError):
        highorder.intermediate_transmission(1.0, 1.5, 0.0)


def test_inverse_square_barrier_and_shallow_well():
    res = highorder.inverse_square_transmission(0.5, 1.0)
    assert res.status is Status.FORCED_ZERO and res.T == 0.0
    res = highorder.inverse_square_transmission(-0.1, 1.0)
    assert res.status is Status.UNDETERMINED
    assert res.T is None and res.R is None


def test_inverse_square_domain():
    for bad in (-0.3, -0.25, -1.0):
        with pytest.raises(DomainError):
            highorder.inverse_square_transmission(bad, 1.0)
    with pytest.raises(DomainError):
        highorder.inverse_square_transmission(0.0, 1.0)
    with pytest.raises(DomainError):
        highorder.inverse_square_transmission(0.5, -1.0)


def test_extra_singular():
    res = highorder.extra_singular_transmission(1.0, 3.0, 1.0)
    assert res.status is Status.FORCED_ZERO and res.T == 0.0
    res = highorder.extra_singular_transmission(1.0, 2.001, 1.0)
    assert res.status is Status.FORCED_ZERO and res.T == 0.0
    res = highorder.extra_singular_transmission(-1.0, 3.0, 1.0)
    assert res.status is Status.UNDETERMINED
    with pytest.raises(DomainError):
        highorder.extra_singular_transmission(1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        highorder.extra_singular_transmission(0.0, 3.0, 1.0)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


def test_inverse_square_basis_order():
    assert InverseSquareBasis(0.0).nu == 0.5
    assert abs(InverseSquareBasis(0.5).nu - math.sqrt(0.75)) < 1e-15
    assert InverseSquareBasis(2.0).nu == 1.5
    for bad in (-0.25, -0.3):
        with pytest.raises(DomainError):
            InverseSquareBasis(bad)


def test_amplitude_invariant_enforcement():
    # the forced antisymmetric solution
    IntermediateAmplitudes(1.0, -1.0, 0.0, 0.0)
    IntermediateAmplitudes(1j, -1j, 0.0, 0.0)
    with pytest.raises(ValueError):
        IntermediateAmplitudes(1.0, -1.0, 0.0, 0.5)  # incoming from right
    with pytest.raises(ValueError):
        IntermediateAmplitudes(1.0, -1.0, 0.7, 0.0)  # continuity broken
    with pytest.raises(ValueError):
        IntermediateAmplitudes(1.0, -0.5, 0.5, 0.0)  # currents unequal


def test_raw_constraints_admit_transmission():
    # (a_l_plus, a_l_minus) = (1, 0) satisfies continuity and current
    # equality exactly, with a unit transmitted amplitude: the displayed
    # constraint pair alone does not force opacity
    assert current_equality_residual(1.0, 0.0) == 0.0
    amps = IntermediateAmplitudes(1.0, 0.0, 1.0, 0.0)
    assert amps.a_r_plus == 1.0


def test_constraint_manifold_shape():
    # residual vanishes exactly on Re[(p + m) conj(m)] = 0 and not off it;
    # (3 - i, i) is a manifold point that is neither antisymmetric nor
    # reflection-free
    assert current_equality_residual(1.0, -1.0) == 0.0
    assert current_equality_residual(1j, -1j) == 0.0
    assert current_equality_residual(3.0 - 1j, 1j) < 1e-12
    assert current_equality_residual(1.0, 0.5) > 0.1


# ---------------------------------------------------------------------------
# compatibility solver
# ---------------------------------------------------------------------------


def test_compatibility_check_forces_antisymmetry():
    rep = highorder.intermediate_compatibility_check(300)
    assert rep.samples == 300
    assert rep.converged == 300
    assert rep.max_right_amplitude <= 1e-8
    assert rep.max_constraint_residual <= 1e-10
    assert rep.antisymmetric_fraction == 1.0


def test_compatibility_check_validates_samples():
    with pytest.raises(DomainError):
        highorder.intermediate_compatibility_check(0)


# ---------------------------------------------------------------------------
# near-origin envelope
# ---------------------------------------------------------------------------


def test_near_origin_h_direct_value():
    got = highorder.near_origin_h(1e-6, 1.0, 1.5)
    assert abs(got - (-4.0e-3)) < 1e-15


def test_near_origin_h_vanishes_monotonically():
    vals = [abs(highorder.near_origin_h(z, 1.0, 1.5)) for z in (1e-2, 1e-4, 1e-6)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-2


def test_near_origin_h_alpha_near_two_stays_finite():
    got = highorder.near_origin_h(1e-3, 1.0, 1.99)
    assert math.isfinite(abs(got))
    # the 1/(2 - alpha) growth is visible but bounded
    assert abs(got) > abs(highorder.near_origin_h(1e-3, 1.0, 1.5))


def test_near_origin_h_domain():
    with pytest.raises(DomainError):
        highorder.near_origin_h(0.0, 1.0, 1.5)
    with pytest.raises(DomainError):
        highorder.near_origin_h(0.2, 1.0, 1.5)
    with pytest.raises(DomainError):
        highorder.near_origin_h(1e-3, 1.0, 2.0)


# ---------------------------------------------------------------------------
# outgoing-wave identification at alpha = 2
# ---------------------------------------------------------------------------


def test_outgoing_combination_grid():
    for u0 in (0.25, 0.5, 0.74):
        for eps in (0.5, 1.0, 4.0):
            resid = highorder.outgoing_combination_check(u0, eps, 100.0)
            assert resid <= 1e-6


def test_outgoing_combination_contrast():
    # the conjugate combination is purely incoming
    resid = highorder.outgoing_combination_check(0.5, 1.0, 100.0, ratio=+1j)
    assert resid > 0.99


def test_outgoing_combination_domain():
    with pytest.raises(DomainError):
        highorder.outgoing_combination_check(0.5, 1.0, 49.0)
    with pytest.raises(DomainError):
        highorder.outgoing_combination_check(0.0, 1.0, 100.0)
    with pytest.raises(DomainError):
        highorder.outgoing_combination_check(-0.1, 1.0, 100.0)


def test_outgoing_combination_propagates_bessel_refusal():
    # nu ~ 100 at x ~ 100: the large-argument expansion cannot deliver
    with pytest.raises(ConvergenceError):
        highorder.outgoing_combination_check(1e4, 1.0, 100.0)


def test_half_integer_closed_form():
    for x in (25.0, 77.3, 300.0):
        assert abs(highorder.half_integer_outgoing_residual(x)) < 1e-12
    with pytest.raises(DomainError):
        highorder.half_integer_outgoing_residual(0.0)


def test_half_integer_small_argument_branch():
    # below the machinery switch the same identity holds through the
    # steep-order route
    x = 7.5
    j, y, _, _ = specfun.bessel_jy(0.5, x)
    want = math.sqrt(2.0 / (math.pi * x))
    assert abs(complex(j, y) - complex(want * math.sin(x), -want * math.cos(x))) < 1e-12
