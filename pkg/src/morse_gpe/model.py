"""Dimensionless problem definition.

The trap is a Morse well of depth D whose shape is controlled by a single
dimensionless number k (large k = soft, wide well; the treatment is valid for
k >= 2). The repulsive contact interaction enters through the dimensionless
coupling g'. The trial ground state is psi(y) ~ y**alpha * exp(-beta*y) in the
transformed coordinate y = k*exp(-a*x), and all energies are reported in units
of N*D.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specfun import digamma, ln_gamma

__all__ = [
    "DimensionlessSystem",
    "AnsatzParams",
    "EnergyBreakdown",
    "DensityProfile",
    "morse_potential",
    "quartic_overlap",
    "quartic_overlap_log_derivative",
    "stationarity_lhs",
    "stationarity_rhs",
    "constrained_beta",
    "energy",
    "constrained_energy",
    "constrained_energy_slope",
    "density",
    "peak_location",
]

_SQRT2 = np.sqrt(2.0)
_LN2 = np.log(2.0)


@dataclass(frozen=True)
class DimensionlessSystem:
    """A problem instance: well parameter k (k >= 2) and coupling g' (>= 0)."""

    k: float
    gprime: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.k) and np.isfinite(self.gprime)):
            raise ValueError("k and gprime must be finite")
        if self.k < 2.0:
            raise ValueError(
                f"well parameter k={self.k} is below the validity bound k >= 2"
            )
        if self.gprime < 0.0:
            raise ValueError("coupling gprime must be non-negative (repulsive)")


@dataclass(frozen=True)
class AnsatzParams:
    """Variational pair (alpha, beta), both strictly positive."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > 0.0 and np.isfinite(self.alpha)):
            raise ValueError("alpha must be positive and finite")
        if not (self.beta > 0.0 and np.isfinite(self.beta)):
            raise ValueError("beta must be positive and finite")


@dataclass(frozen=True)
class EnergyBreakdown:
    """Trap+kinetic part and interaction part of the energy, in units of N*D."""

    oscillator_part: float
    interaction_part: float

    @property
    def total(self) -> float:
        return self.oscillator_part + self.interaction_part


@dataclass(frozen=True)
class DensityProfile:
    """Dimensionless density d(y) sampled on a y grid; integrates to 1 in dy/y."""

    y_values: np.ndarray
    d_values: np.ndarray


def morse_potential(u, k: float):
    """Morse well profile exp(-2u/k) - 2*exp(-u/k) in units of D, u = b*x."""
    u = np.asarray(u, dtype=float)
    out = np.exp(-2.0 * u / k) - 2.0 * np.exp(-u / k)
    return float(out) if out.ndim == 0 else out


def quartic_overlap(alpha):
    """Gamma(4a) / (2**(4a) * Gamma(2a)**2), the quartic self-overlap of the
    unit-normalized ansatz.

    Evaluated in log space; the direct ratio overflows near alpha ~ 40.
    """
    a = np.asarray(alpha, dtype=float)
    if np.any(a <= 0.0) or not np.all(np.isfinite(a)):
        raise ValueError("quartic_overlap requires alpha > 0")
    out = np.exp(ln_gamma(4.0 * a) - 4.0 * a * _LN2 - 2.0 * ln_gamma(2.0 * a))
    return float(out) if out.ndim == 0 else out


def quartic_overlap_log_derivative(alpha):
    """d/d(alpha) of log(quartic_overlap): 4*(psi(4a) - ln 2 - psi(2a))."""
    a = np.asarray(alpha, dtype=float)
    out = 4.0 * (digamma(4.0 * a) - _LN2 - digamma(2.0 * a))
    return float(out) if out.ndim == 0 else out


def stationarity_lhs(alpha, k: float):
    """Trap-side factor 1 - k**2/(2a+1)**2 of the printed stationarity balance.

    Vanishes at the noninteracting exponent alpha = (k-1)/2 and tends to 1
    from below as alpha grows.
    """
    a = np.asarray(alpha, dtype=float)
    out = 1.0 - k**2 / (2.0 * a + 1.0) ** 2
    return float(out) if out.ndim == 0 else out


def stationarity_rhs(alpha, k: float):
    """Interaction-side factor of the printed stationarity balance.

    (k/sqrt(2)) * quartic_overlap(a) * (2*psi(2a) + 4*ln2 - psi(4a)); the
    balance reads stationarity_lhs(a) = g' * stationarity_rhs(a).
    """
    a = np.asarray(alpha, dtype=float)
    bracket = 2.0 * digamma(2.0 * a) + 4.0 * _LN2 - digamma(4.0 * a)
    out = (k / _SQRT2) * quartic_overlap(a) * bracket
    return float(out) if out.ndim == 0 else out


def constrained_beta(alpha, k: float):
    """beta on the beta-stationarity line: beta = (alpha + 1/2)/k."""
    a = np.asarray(alpha, dtype=float)
    out = (a + 0.5) / k
    return float(out) if out.ndim == 0 else out


def _oscillator_bracket(alpha, beta, k: float):
    return (
        alpha / 2.0
        + alpha**2 / (4.0 * beta**2)
        + alpha / (8.0 * beta**2)
        - alpha * k / (2.0 * beta)
    )


def energy(params: AnsatzParams, system: DimensionlessSystem) -> EnergyBreakdown:
    """Variational energy at (alpha, beta) in units of N*D.

    Oscillator part: (4/k**2) * (a/2 + a**2/(4b**2) + a/(8b**2) - a*k/(2b)).
    Interaction part: quartic_overlap(a) * k * g' / (2*sqrt(2)).
    """
    a, b, k = params.alpha, params.beta, system.k
    osc = (4.0 / k**2) * _oscillator_bracket(a, b, k)
    inter = quartic_overlap(a) * k * system.gprime / (2.0 * _SQRT2)
    return EnergyBreakdown(oscillator_part=float(osc), interaction_part=float(inter))


def constrained_energy(alpha, system: DimensionlessSystem):
    """Energy along the line beta = (alpha + 1/2)/k, in units of N*D.

    Algebraic reduction of the two-parameter energy:
    (2a/k**2) * (1 - k**2/(2a+1)) + quartic_overlap(a) * k * g' / (2*sqrt(2)).
    """
    a = np.asarray(alpha, dtype=float)
    k, g = system.k, system.gprime
    osc = (2.0 * a / k**2) * (1.0 - k**2 / (2.0 * a + 1.0))
    out = osc + quartic_overlap(a) * k * g / (2.0 * _SQRT2)
    return float(out) if out.ndim == 0 else out


def constrained_energy_slope(alpha, system: DimensionlessSystem):
    """Exact d/d(alpha) of constrained_energy.

    (2/k**2) * stationarity_lhs(a) plus the interaction derivative
    quartic_overlap'(a) * k * g' / (2*sqrt(2)). Zeros of this slope are the
    true stationary points of the energy restricted to the beta line (the
    beta direction is exactly stationary there by construction).
    """
    a = np.asarray(alpha, dtype=float)
    k, g = system.k, system.gprime
    c_prime = quartic_overlap(a) * quartic_overlap_log_derivative(a)
    out = (2.0 / k**2) * stationarity_lhs(a, k) + c_prime * k * g / (2.0 * _SQRT2)
    return float(out) if out.ndim == 0 else out


def density(params: AnsatzParams, y_grid) -> DensityProfile:
    """Dimensionless density d(y) = (2b)**(2a) * y**(2a) * exp(-2b*y) / Gamma(2a).

    Computed in log space. The mass measure is dy/y: the analytic integral of
    d(y)/y over (0, inf) is exactly 1 for any valid (alpha, beta).
    """
    y = np.asarray(y_grid, dtype=float)
    if y.size == 0:
        raise ValueError("density requires a non-empty y grid")
    if np.any(y <= 0.0):
        raise ValueError("density requires strictly positive y values")
    if y.ndim != 1 or (y.size > 1 and np.any(np.diff(y) <= 0.0)):
        raise ValueError("density requires a 1-D strictly increasing y grid")
    a, b = params.alpha, params.beta
    log_d = (
        2.0 * a * np.log(2.0 * b)
        + 2.0 * a * np.log(y)
        - 2.0 * b * y
        - ln_gamma(2.0 * a)
    )
    return DensityProfile(y_values=y, d_values=np.exp(log_d))


def peak_location(params: AnsatzParams) -> float:
    """Mode of d(y): alpha/beta."""
    return params.alpha / params.beta
