"""Closed-form zero-coupling solution and the exact Morse ground level."""

import numpy as np
import pytest

from morse_gpe import exact_morse_ground_energy, noninteracting_solution


@pytest.mark.parametrize(
    "k,alpha,energy",
    [(3.0, 1.0, -4.0 / 9.0), (2.0, 0.5, -0.25), (5.0, 2.0, -16.0 / 25.0)],
)
def test_closed_form_solutions(k, alpha, energy):
    sol = noninteracting_solution(k)
    assert sol.alpha == pytest.approx(alpha, abs=1e-15)
    assert sol.beta == 0.5
    assert sol.energy_over_ND == pytest.approx(energy, abs=1e-15)


def test_exact_ground_level_values():
    assert exact_morse_ground_energy(3.0) == pytest.approx(-4.0 / 9.0, abs=1e-15)
    assert exact_morse_ground_energy(2.0) == pytest.approx(-0.25, abs=1e-15)


def test_deep_well_limit_approaches_bottom():
    assert exact_morse_ground_energy(1e6) == pytest.approx(-1.0, abs=1e-5)


def test_variational_family_contains_exact_ground_state():
    for k in np.linspace(2.0, 30.0, 57):
        assert noninteracting_solution(k).energy_over_ND == pytest.approx(
            exact_morse_ground_energy(k), abs=1e-15
        )


@pytest.mark.parametrize("k", [1.0, 1.999, 0.0, -3.0])
def test_validity_bound_rejected(k):
    with pytest.raises(ValueError):
        noninteracting_solution(k)
    with pytest.raises(ValueError):
        exact_morse_ground_energy(k)
