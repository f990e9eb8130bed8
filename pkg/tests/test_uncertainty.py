"""Tests for variances, the two uncertainty bounds, and the pair reports."""

import math

import numpy as np
import pytest

from phasegeo.bundle import DensityOperator, inertia_inner, standard_lift
from phasegeo.observables import Observable, spin_half, xi_field, xi_perp
from phasegeo.sampling import make_rng, sample_density, sample_hermitian, sample_spectrum
from phasegeo.uncertainty import (
    analyze_pair,
    cauchy_schwarz_check,
    geometric_bound,
    rs_bound,
    variance,
    variance_bound_check,
)

SX, SY, SZ = spin_half(1.0)
RHO = DensityOperator(np.diag([0.75, 0.25]).astype(complex))
RHO_DEG = DensityOperator(np.diag([0.5, 0.5]).astype(complex))
IDENTITY2 = Observable(np.eye(2, dtype=complex))


def _random_case(dim, rng, rank=None):
    if rank is None:
        rank = int(rng.integers(1, dim + 1))
    spectrum, _ = sample_spectrum(rank, rng)
    rho = sample_density(spectrum, dim, rng)
    return rho, sample_hermitian(dim, rng), sample_hermitian(dim, rng)


class TestVariance:
    def test_spin_x_on_mixed_state(self):
        assert variance(SX, RHO) == pytest.approx(0.25)

    def test_eigenstate_has_zero_variance(self):
        up = DensityOperator(np.diag([1.0, 0.0]).astype(complex))
        assert variance(SZ, up) == 0.0

    def test_identity_observable(self):
        assert variance(IDENTITY2, RHO) == 0.0

    def test_matches_geometric_covariance(self):
        from phasegeo.observables import sym_covariance

        rng = make_rng(50)
        for _ in range(20):
            dim = int(rng.integers(2, 6))
            rho, a, _ = _random_case(dim, rng)
            assert variance(a, rho) == pytest.approx(
                sym_covariance(a, a, rho), rel=1e-9, abs=1e-9
            )


class TestVarianceBound:
    def test_equality_for_horizontal_field(self):
        check = variance_bound_check(SX, RHO)
        assert check.lhs == pytest.approx(0.25)
        assert check.rhs == pytest.approx(0.25, abs=1e-13)
        assert check.gap == pytest.approx(0.0, abs=1e-13)

    def test_vertical_field_gives_positive_gap(self):
        """For Sz the whole variance is gauge slack: gap = p1 p2."""
        check = variance_bound_check(SZ, RHO)
        assert check.lhs == pytest.approx(0.1875)
        assert check.rhs == pytest.approx(0.0, abs=1e-13)
        assert check.gap == pytest.approx(0.1875, abs=1e-13)

    def test_pure_state_gap_vanishes(self):
        rng = make_rng(51)
        rho, a, _ = _random_case(4, rng, rank=1)
        check = variance_bound_check(a, rho)
        assert check.gap == pytest.approx(0.0, abs=1e-10 * max(1.0, check.lhs))

    def test_gap_is_perpendicular_norm(self):
        """Slack of the variance bound equals (hbar/2)|xi_perp|^2."""
        rng = make_rng(52)
        for _ in range(20):
            dim = int(rng.integers(2, 6))
            rho, a, _ = _random_case(dim, rng)
            lift = standard_lift(rho)
            check = variance_bound_check(a, rho, lift=lift)
            perp = xi_perp(xi_field(a, lift), lift.spectrum, 1.0)
            expected = 0.5 * inertia_inner(perp, perp, lift.spectrum, 1.0)
            assert check.gap == pytest.approx(
                expected, rel=1e-9, abs=1e-9 * max(1.0, check.lhs)
            )


class TestCauchySchwarz:
    def test_spin_pair_values(self):
        check = cauchy_schwarz_check(SX, SY, RHO)
        assert check.lhs == pytest.approx(0.25, abs=1e-13)
        assert check.rhs == pytest.approx(0.0625, abs=1e-13)

    def test_equal_observables_saturate(self):
        check = cauchy_schwarz_check(SX, SX, RHO)
        assert check.lhs == pytest.approx(check.rhs, rel=1e-12, abs=1e-12)

    def test_identity_second_argument(self):
        check = cauchy_schwarz_check(SX, IDENTITY2, RHO)
        assert check.lhs == pytest.approx(0.0, abs=1e-13)
        assert check.rhs == pytest.approx(0.0, abs=1e-13)

    def test_holds_on_random_samples(self):
        rng = make_rng(53)
        for _ in range(40):
            dim = int(rng.integers(2, 6))
            rho, a, b = _random_case(dim, rng)
            check = cauchy_schwarz_check(a, b, rho)
            assert check.lhs >= check.rhs - 1e-9 * max(1.0, check.lhs)


class TestBounds:
    def test_geometric_bound_spin_pair(self):
        assert geometric_bound(SX, SY, RHO) == pytest.approx(0.125, abs=1e-13)

    def test_geometric_bound_degenerate(self):
        assert geometric_bound(SX, SY, RHO_DEG) == pytest.approx(0.0, abs=1e-13)

    def test_geometric_self_pair(self):
        from phasegeo.observables import brackets

        pair = brackets(SZ, SZ, RHO)
        assert geometric_bound(SZ, SZ, RHO) == pytest.approx(
            0.5 * abs(pair.riemann), abs=1e-13
        )

    def test_rs_bound_spin_pair(self):
        assert rs_bound(SX, SY, RHO) == pytest.approx(0.125, abs=1e-13)

    def test_rs_bound_self_pair_is_variance(self):
        rng = make_rng(54)
        rho, a, _ = _random_case(3, rng)
        assert rs_bound(a, a, rho) == pytest.approx(variance(a, rho), rel=1e-12)

    def test_rs_bound_degenerate_spin_pair(self):
        assert rs_bound(SX, SY, RHO_DEG) == pytest.approx(0.0, abs=1e-13)


class TestAnalyzePair:
    def test_spin_pair_report(self):
        rep = analyze_pair(SX, SY, RHO)
        assert rep.delta_a == pytest.approx(0.5)
        assert rep.delta_b == pytest.approx(0.5)
        assert rep.product == pytest.approx(0.25)
        assert rep.geometric_bound == pytest.approx(0.125, abs=1e-13)
        assert rep.rs_bound == pytest.approx(0.125, abs=1e-13)
        assert rep.bound_winner == "tie"

    def test_degenerate_report(self):
        rep = analyze_pair(SX, SY, RHO_DEG)
        assert rep.product == pytest.approx(0.25)
        assert rep.geometric_bound == pytest.approx(0.0, abs=1e-13)
        assert rep.rs_bound == pytest.approx(0.0, abs=1e-13)
        assert rep.bound_winner == "tie"

    def test_identity_pair_report(self):
        rep = analyze_pair(SZ, IDENTITY2, RHO)
        assert rep.product == 0.0
        assert rep.geometric_bound == pytest.approx(0.0, abs=1e-13)
        assert rep.rs_bound == pytest.approx(0.0, abs=1e-13)

    def test_report_internal_consistency(self):
        rng = make_rng(55)
        for _ in range(30):
            dim = int(rng.integers(2, 6))
            rho, a, b = _random_case(dim, rng)
            rep = analyze_pair(a, b, rho)
            assert rep.product == pytest.approx(rep.delta_a * rep.delta_b, abs=1e-12)
            assert rep.geometric_bound == pytest.approx(
                0.5 * math.hypot(rep.riemann, rep.poisson), abs=1e-12
            )
            assert rep.slack_geometric >= -1e-9
            assert rep.slack_rs >= -1e-9

    def test_scaling_is_linear(self):
        """c*A scales spread and both bounds by c."""
        rng = make_rng(56)
        rho, a, b = _random_case(4, rng)
        base = analyze_pair(a, b, rho)
        c = 3.7
        scaled = analyze_pair(Observable(c * a.matrix), b, rho)
        assert scaled.delta_a == pytest.approx(c * base.delta_a, rel=1e-10)
        assert scaled.geometric_bound == pytest.approx(c * base.geometric_bound, rel=1e-10)
        assert scaled.rs_bound == pytest.approx(c * base.rs_bound, rel=1e-10)

    def test_pure_state_bounds_coincide(self):
        rng = make_rng(57)
        for _ in range(20):
            dim = int(rng.integers(2, 6))
            rho, a, b = _random_case(dim, rng, rank=1)
            rep = analyze_pair(a, b, rho)
            assert rep.geometric_bound == pytest.approx(
                rep.rs_bound, rel=1e-9, abs=1e-9
            )
