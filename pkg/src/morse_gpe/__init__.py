"""Variational ground state of the 1D Gross-Pitaevskii equation in a Morse well.

The library solves the two-parameter trial-state problem in the dimensionless
(k, g') system: stationary points of the energy, their classification, the
critical coupling where the bound state disappears, density profiles, and two
independent oracles (brute-force scan and imaginary-time relaxation) that
arbitrate the published numbers. The `morse-gpe` CLI wraps everything and can
emit a side-by-side comparison report with figures.
"""

from .analytic import (
    NoninteractingSolution,
    exact_morse_ground_energy,
    noninteracting_solution,
)
from .model import (
    AnsatzParams,
    DensityProfile,
    DimensionlessSystem,
    EnergyBreakdown,
    constrained_beta,
    constrained_energy,
    constrained_energy_slope,
    density,
    energy,
    morse_potential,
    peak_location,
    quartic_overlap,
    stationarity_lhs,
    stationarity_rhs,
)
from .oracle import (
    ConvergenceError,
    GridSearchResult,
    PdeGroundState,
    derived_constrained_energy,
    grid_minimize,
    imaginary_time_ground_state,
)
from .solver import (
    CriticalPoint,
    SolveMode,
    StationaryPoint,
    SweepGRow,
    SweepKResult,
    critical_coupling,
    find_roots,
    hessian_fd,
    ratio_extremum,
    stationary_pair_fold,
    stationary_points,
    sweep_g,
    sweep_k,
)
from .specfun import digamma, ln_gamma

__version__ = "0.1.0"
