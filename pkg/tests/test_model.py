"""Checks of the dimensionless model quantities against closed forms.

Fractions like 6/16 and 5040/(256*36) come from integer factorials; energy
landmarks are either exact rationals or values frozen from a 30-digit
independent evaluation of the same printed formulas.
"""

import math

import numpy as np
import pytest

from morse_gpe import (
    AnsatzParams,
    DimensionlessSystem,
    constrained_beta,
    constrained_energy,
    constrained_energy_slope,
    density,
    energy,
    ln_gamma,
    morse_potential,
    peak_location,
    quartic_overlap,
    stationarity_lhs,
    stationarity_rhs,
)

SQRT2 = math.sqrt(2.0)
EULER_GAMMA = 0.5772156649015329


class TestSystemValidation:
    def test_accepts_boundary_k(self):
        DimensionlessSystem(2.0, 0.0)

    def test_rejects_small_k(self):
        with pytest.raises(ValueError, match="validity bound"):
            DimensionlessSystem(1.5, 0.1)

    def test_rejects_negative_coupling(self):
        with pytest.raises(ValueError):
            DimensionlessSystem(3.0, -0.1)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            DimensionlessSystem(float("nan"), 0.0)

    def test_params_must_be_positive(self):
        with pytest.raises(ValueError):
            AnsatzParams(0.0, 0.5)
        with pytest.raises(ValueError):
            AnsatzParams(1.0, -0.5)


class TestMorsePotential:
    def test_minimum_at_origin(self):
        assert morse_potential(0.0, 3.0) == pytest.approx(-1.0, abs=1e-15)

    def test_flat_at_large_distance(self):
        v = morse_potential(200.0, 3.0)
        assert -1e-6 < v < 0.0

    def test_zero_crossing(self):
        # exp(-u/k) = 2 at u = -k ln 2 makes the two terms cancel.
        assert morse_potential(-3.0 * math.log(2.0), 3.0) == pytest.approx(0.0, abs=1e-12)

    def test_vectorized(self):
        u = np.linspace(-2.0, 10.0, 50)
        v = morse_potential(u, 4.0)
        assert v.shape == u.shape
        assert np.all(v >= -1.0)


class TestQuarticOverlap:
    @pytest.mark.parametrize(
        "alpha,expected",
        [(1.0, 6.0 / 16.0), (2.0, 5040.0 / (256.0 * 36.0)), (0.5, 0.25)],
    )
    def test_factorial_values(self, alpha, expected):
        assert quartic_overlap(alpha) == pytest.approx(expected, rel=1e-12)

    def test_two_form_agreement(self):
        # Same ratio via the gamma duplication identity, on a separate path.
        alphas = np.linspace(0.05, 50.0, 500)
        direct = quartic_overlap(alphas)
        dup = np.exp(
            ln_gamma(2.0 * alphas + 0.5)
            - math.log(2.0 * math.sqrt(math.pi))
            - ln_gamma(2.0 * alphas)
        )
        assert np.max(np.abs(direct / dup - 1.0)) <= 1e-12

    def test_no_overflow_at_large_alpha(self):
        assert np.isfinite(quartic_overlap(50.0))

    def test_domain_error(self):
        with pytest.raises(ValueError):
            quartic_overlap(0.0)


class TestStationarityFactors:
    def test_lhs_zero_at_noninteracting_exponent(self):
        for k in (2.0, 3.0, 4.5, 7.0):
            assert abs(stationarity_lhs((k - 1.0) / 2.0, k)) <= 1e-15

    def test_lhs_value(self):
        assert stationarity_lhs(2.0, 3.0) == pytest.approx(0.64, abs=1e-15)

    def test_lhs_asymptote(self):
        assert 0.999 < stationarity_lhs(1e4, 3.0) < 1.0

    def test_rhs_exact_digamma_combination_k3(self):
        # psi(4) = 11/6 - g, psi(8) = 363/140 - g: the bracket collapses to
        # 451/420 + 4 ln 2 - g.
        bracket = 451.0 / 420.0 + 4.0 * math.log(2.0) - EULER_GAMMA
        expected = (3.0 / SQRT2) * 0.546875 * bracket
        assert stationarity_rhs(2.0, 3.0) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(3.7926, abs=1e-4)

    def test_rhs_exact_digamma_combination_k2(self):
        bracket = 1.0 / 6.0 + 4.0 * math.log(2.0) - EULER_GAMMA
        expected = SQRT2 * 0.375 * bracket
        assert stationarity_rhs(1.0, 2.0) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(1.2527, abs=1e-4)

    def test_rhs_negative_at_small_alpha(self):
        # Small-alpha limit is finite and negative, -3k/(4 sqrt 2).
        value = stationarity_rhs(1e-3, 3.0)
        assert value < 0.0
        assert value == pytest.approx(-3.0 * 3.0 / (4.0 * SQRT2), abs=1e-2)


class TestEnergy:
    def test_noninteracting_landmark(self):
        bd = energy(AnsatzParams(1.0, 0.5), DimensionlessSystem(3.0, 0.0))
        assert bd.total == pytest.approx(-4.0 / 9.0, abs=1e-14)
        assert bd.interaction_part == 0.0

    def test_breakdown_at_critical_landmark(self):
        bd = energy(AnsatzParams(2.0, 5.0 / 6.0), DimensionlessSystem(3.0, 0.1688))
        assert bd.oscillator_part == pytest.approx(-16.0 / 45.0, abs=1e-12)
        expected_inter = 0.546875 * 3.0 * 0.1688 / (2.0 * SQRT2)
        assert bd.interaction_part == pytest.approx(expected_inter, rel=1e-12)
        assert bd.total == pytest.approx(-0.2576, abs=1e-3)

    def test_lower_root_landmark(self):
        bd = energy(AnsatzParams(1.2, 17.0 / 30.0), DimensionlessSystem(3.0, 0.1))
        # frozen from a 30-digit evaluation of the same expression
        assert bd.total == pytest.approx(-0.395199392953114, abs=1e-12)
        assert bd.total == pytest.approx(-0.395, abs=1e-3)

    def test_total_is_exact_sum(self):
        bd = energy(AnsatzParams(1.7, 0.9), DimensionlessSystem(4.0, 0.3))
        assert bd.total == bd.oscillator_part + bd.interaction_part

    def test_interaction_sign(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            a, b = rng.uniform(0.1, 10.0, 2)
            g = rng.uniform(0.0, 2.0)
            bd = energy(AnsatzParams(a, b), DimensionlessSystem(3.0, g))
            if g == 0.0:
                assert bd.interaction_part == 0.0
            else:
                assert bd.interaction_part > 0.0


class TestConstrainedEnergy:
    def test_reduction_landmarks(self):
        assert constrained_energy(1.0, DimensionlessSystem(3.0, 0.0)) == pytest.approx(
            -4.0 / 9.0, abs=1e-14
        )
        expected = (2.0 * 6.2 / 9.0) * (1.0 - 9.0 / 13.4)
        assert constrained_energy(6.2, DimensionlessSystem(3.0, 0.0)) == pytest.approx(
            expected, abs=1e-12
        )
        assert expected == pytest.approx(0.4524, abs=1e-4)

    def test_identity_with_two_parameter_energy(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            k = rng.uniform(2.0, 8.0)
            g = rng.uniform(0.0, 1.0)
            a = rng.uniform(0.05, 20.0)
            system = DimensionlessSystem(k, g)
            full = energy(AnsatzParams(a, constrained_beta(a, k)), system).total
            assert abs(constrained_energy(a, system) - full) <= 1e-12

    def test_g0_line_minimum_via_grid_scan(self):
        for k in (2.0, 3.0, 5.0):
            system = DimensionlessSystem(k, 0.0)
            alphas = np.linspace(0.05, 4.0 * k, 4001)
            values = constrained_energy(alphas, system)
            i = int(np.argmin(values))
            assert alphas[i] == pytest.approx((k - 1.0) / 2.0, abs=alphas[1] - alphas[0])
            assert values[i] == pytest.approx(-(((k - 1.0) / k) ** 2), abs=1e-4)

    def test_slope_vanishes_only_at_line_minimum_when_free(self):
        system = DimensionlessSystem(3.0, 0.0)
        assert constrained_energy_slope(1.0, system) == pytest.approx(0.0, abs=1e-14)
        assert constrained_energy_slope(0.6, system) < 0.0
        assert constrained_energy_slope(1.4, system) > 0.0


class TestDensity:
    def test_normalization_in_mass_measure(self):
        y = np.linspace(1e-9, 60.0, 200001)
        prof = density(AnsatzParams(1.2, 0.56), y)
        mass = np.trapezoid(prof.d_values / y, y)
        assert mass == pytest.approx(1.0, abs=1e-6)

    def test_normalization_other_params(self):
        # Graded grid: for alpha < 1 the dy/y integrand has a steep edge at
        # small y, so refine geometrically there.
        y = np.concatenate(
            [np.geomspace(1e-12, 1.0, 60000), np.linspace(1.0, 80.0, 200001)[1:]]
        )
        for a, b in ((0.7, 0.5), (3.0, 1.2), (5.0, 0.8)):
            prof = density(AnsatzParams(a, b), y)
            assert np.trapezoid(prof.d_values / y, y) == pytest.approx(1.0, abs=1e-6)

    def test_peak_positions_for_free_solutions(self):
        y = np.linspace(1e-3, 30.0, 30000)
        prof3 = density(AnsatzParams(1.0, 0.5), y)
        assert y[np.argmax(prof3.d_values)] == pytest.approx(2.0, abs=2e-3)
        prof5 = density(AnsatzParams(2.0, 0.5), y)
        assert y[np.argmax(prof5.d_values)] == pytest.approx(4.0, abs=2e-3)

    def test_rejects_bad_grids(self):
        params = AnsatzParams(1.0, 0.5)
        with pytest.raises(ValueError):
            density(params, np.array([]))
        with pytest.raises(ValueError):
            density(params, np.array([-1.0, 1.0]))
        with pytest.raises(ValueError):
            density(params, np.array([1.0, 0.5]))


class TestPeakLocation:
    @pytest.mark.parametrize(
        "a,b,expected", [(1.0, 0.5, 2.0), (2.0, 0.5, 4.0), (3.0, 3.0, 1.0)]
    )
    def test_mode_is_alpha_over_beta(self, a, b, expected):
        assert peak_location(AnsatzParams(a, b)) == pytest.approx(expected, abs=1e-15)
