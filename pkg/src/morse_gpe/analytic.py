"""Closed-form noninteracting (g' = 0) solution.

At zero coupling the variational family contains the exact single-particle
Morse ground state: beta = 1/2 independent of k, alpha = (k-1)/2, and energy
-((k-1)/k)**2 in units of N*D. This doubles as ground truth for the solvers
and the grid/relaxation oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "NoninteractingSolution",
    "noninteracting_solution",
    "exact_morse_ground_energy",
]


@dataclass(frozen=True)
class NoninteractingSolution:
    alpha: float
    beta: float
    energy_over_ND: float


def _check_k(k: float) -> None:
    if not np.isfinite(k):
        raise ValueError("k must be finite")
    if k < 2.0:
        # At k = 1 the exponent alpha degenerates to 0 and the trial form
        # stops being normalizable; fail loudly instead of extrapolating.
        raise ValueError(f"k={k} is below the validity bound k >= 2")


def noninteracting_solution(k: float) -> NoninteractingSolution:
    """Exact g'=0 minimizer: alpha = (k-1)/2, beta = 1/2, E = -((k-1)/k)**2."""
    _check_k(k)
    return NoninteractingSolution(
        alpha=(k - 1.0) / 2.0,
        beta=0.5,
        energy_over_ND=-(((k - 1.0) / k) ** 2),
    )


def exact_morse_ground_energy(k: float) -> float:
    """Lowest single-particle level of the Morse well, -(1 - 1/k)**2 in units of D."""
    _check_k(k)
    return -((1.0 - 1.0 / k) ** 2)
