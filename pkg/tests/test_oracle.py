"""Oracle tests: brute-force grid scan and imaginary-time relaxation.

The grid scan arbitrates the consistent-mode solver; the relaxation provides
the variational upper-bound check. Frozen minima come from 30-digit
independent minimizations of the same constrained energies.
"""

import numpy as np
import pytest

from morse_gpe import (
    ConvergenceError,
    DimensionlessSystem,
    derived_constrained_energy,
    grid_minimize,
    imaginary_time_ground_state,
    stationary_points,
)
from morse_gpe.oracle import interaction_lambda

K3_G01 = DimensionlessSystem(3.0, 0.1)


class TestGridMinimize:
    def test_free_case_recovers_closed_form(self):
        res = grid_minimize(DimensionlessSystem(3.0, 0.0), (0.2, 8.0), "constrained", 800)
        assert res.best_alpha == pytest.approx(1.0, abs=1e-6)
        assert res.best_beta == pytest.approx(0.5, abs=1e-6)
        assert res.best_energy == pytest.approx(-4.0 / 9.0, abs=1e-10)

    def test_interacting_constrained_minimum(self):
        res = grid_minimize(K3_G01, (0.2, 8.0), "constrained", 800)
        # frozen 30-digit minimum of the constrained energy
        assert res.best_alpha == pytest.approx(0.927235100468, abs=1e-6)
        assert res.best_energy == pytest.approx(-0.405501484350, abs=1e-9)
        # coarse landmarks
        assert res.best_energy == pytest.approx(-0.405, abs=1e-3)
        assert res.best_alpha == pytest.approx(0.93, abs=0.01)

    def test_refined_value_never_above_best_node(self):
        res = grid_minimize(K3_G01, (0.2, 8.0), "constrained", 800)
        assert res.best_energy <= res.node_energy + 1e-15

    def test_solver_minimum_within_one_cell_and_energy_band(self):
        res = grid_minimize(K3_G01, (0.2, 8.0), "constrained", 800)
        pt = stationary_points(K3_G01, "consistent")[0]
        assert abs(pt.alpha - res.node_alpha) <= res.grid_spec["cell_alpha"]
        assert abs(pt.energy.total - res.best_energy) <= 1e-4

    def test_full_box_scan_agrees_with_constrained(self):
        cons = grid_minimize(K3_G01, (0.2, 8.0), "constrained", 800)
        box = grid_minimize(K3_G01, (0.2, 8.0), (0.1, 4.0), 500)
        assert abs(box.best_energy - cons.best_energy) <= 1e-4
        assert abs(box.best_alpha - cons.best_alpha) <= 2.0 * box.grid_spec["cell_alpha"]
        # the beta line is the exact minimizer for every alpha
        assert abs(box.best_beta - (box.best_alpha + 0.5) / 3.0) <= 2.0 * box.grid_spec["cell_beta"]

    def test_resolution_floor_enforced(self):
        with pytest.raises(ValueError):
            grid_minimize(K3_G01, (0.2, 8.0), "constrained", 400)

    def test_degenerate_range_rejected(self):
        with pytest.raises(ValueError):
            grid_minimize(K3_G01, (8.0, 0.2), "constrained", 800)
        with pytest.raises(ValueError):
            grid_minimize(K3_G01, (0.2, 8.0), (4.0, 0.1), 800)


class TestInteractionLambda:
    def test_conventions(self):
        assert interaction_lambda(K3_G01, "derived") == pytest.approx(
            2.0 * np.sqrt(2.0) * 0.1 / 3.0, rel=1e-15
        )
        assert interaction_lambda(K3_G01, "paper") == pytest.approx(
            3.0 * 0.1 / np.sqrt(2.0), rel=1e-15
        )
        # the two differ by k**2/4 and coincide at k = 2
        k2 = DimensionlessSystem(2.0, 0.3)
        assert interaction_lambda(k2, "derived") == pytest.approx(
            interaction_lambda(k2, "paper"), rel=1e-15
        )

    def test_unknown_convention(self):
        with pytest.raises(ValueError):
            interaction_lambda(K3_G01, "other")


class TestImaginaryTime:
    def test_free_ground_state_energy(self, pde_ground_k3_g0):
        assert pde_ground_k3_g0.energy_over_ND == pytest.approx(-4.0 / 9.0, abs=1e-3)

    def test_norm_conservation(self, pde_ground_k3_g0):
        state = pde_ground_k3_g0
        dx = state.x_grid[1] - state.x_grid[0]
        assert np.sum(state.density) * dx == pytest.approx(1.0, abs=1e-12)
        assert np.all(state.density >= 0.0)

    def test_energy_trace_monotone(self, pde_ground_k3_g0):
        diffs = np.diff(pde_ground_k3_g0.energy_trace)
        assert np.max(diffs) <= 1e-12

    def test_converged_metadata(self, pde_ground_k3_g0):
        state = pde_ground_k3_g0
        assert state.residual < 1e-11
        assert state.iterations < 10**6
        assert state.interaction_convention == "derived"

    def test_upper_bound_matching_convention_published_coefficient(self):
        state = imaginary_time_ground_state(
            K3_G01, "paper", n_points=1024, tol=1e-9
        )
        var_min = grid_minimize(K3_G01, (0.2, 8.0), "constrained", 800).best_energy
        assert state.energy_over_ND <= var_min + 1e-6

    def test_upper_bound_matching_convention_derived_coefficient(self):
        system = DimensionlessSystem(3.0, 0.05)
        state = imaginary_time_ground_state(system, "derived", n_points=1024, tol=1e-9)
        # frozen 30-digit minimum of the derived-coefficient constrained energy
        var_min = -0.435646977523
        assert state.energy_over_ND <= var_min + 1e-6
        alphas = np.linspace(0.2, 8.0, 2000)
        assert var_min == pytest.approx(
            float(np.min(derived_constrained_energy(alphas, system))), abs=1e-5
        )

    def test_domain_doubling_is_inert_for_bound_states(self):
        system = DimensionlessSystem(3.0, 0.05)
        small = imaginary_time_ground_state(
            system, "derived", domain=(-3.0, 30.0), n_points=1024, tol=1e-11
        )
        # doubled span with 2n+1 points keeps dx identical
        big = imaginary_time_ground_state(
            system, "derived", domain=(-3.0, 63.0), n_points=2049, tol=1e-11
        )
        assert abs(small.energy_over_ND - big.energy_over_ND) <= 1e-6

    def test_bound_state_well_beyond_published_critical_coupling(self):
        # At three times the published critical coupling the true relaxed
        # ground state is still firmly localized; the published loss of the
        # bound state at g'_c is a property of the printed balance, not of
        # the energy functional.
        system = DimensionlessSystem(3.0, 3.0 * 0.16875)
        state = imaginary_time_ground_state(system, "derived", n_points=1024, tol=1e-8)
        assert not state.delocalized
        assert state.tail_mass_fraction < 0.01
        assert state.energy_over_ND < -0.3

    def test_delocalization_flag_at_strong_coupling(self):
        system = DimensionlessSystem(3.0, 4.0)
        state = imaginary_time_ground_state(
            system, "paper", domain=(-3.0, 40.0), n_points=1024, tol=1e-8
        )
        assert state.delocalized
        assert state.tail_mass_fraction > 0.3

    def test_preconditions(self):
        with pytest.raises(ValueError):
            imaginary_time_ground_state(K3_G01, "derived", domain=(-1.0, 30.0))
        with pytest.raises(ValueError):
            imaginary_time_ground_state(K3_G01, "derived", domain=(-3.0, 20.0))
        with pytest.raises(ValueError):
            imaginary_time_ground_state(K3_G01, "derived", n_points=512)
        with pytest.raises(ValueError):
            imaginary_time_ground_state(K3_G01, "derived", dtau=0.0)
        with pytest.raises(ValueError):
            imaginary_time_ground_state(K3_G01, "bogus")

    def test_nonconvergence_raises_with_residual(self):
        with pytest.raises(ConvergenceError) as err:
            imaginary_time_ground_state(
                K3_G01, "derived", n_points=1024, tol=1e-14, max_iter=10
            )
        assert np.isfinite(err.value.residual)
