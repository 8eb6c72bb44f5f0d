"""Shared fixtures for the expensive solver/oracle computations."""

import pytest

from morse_gpe import critical_coupling, imaginary_time_ground_state
from morse_gpe.model import DimensionlessSystem


@pytest.fixture(scope="session")
def paper_criticals():
    """Critical points in paper mode for the four published k values."""
    return {k: critical_coupling(float(k), "paper") for k in (2, 3, 4, 5)}


@pytest.fixture(scope="session")
def pde_ground_k3_g0():
    return imaginary_time_ground_state(
        DimensionlessSystem(3.0, 0.0), "derived", n_points=1024, tol=1e-11
    )
