"""Stationary points, classification, and critical-coupling tracing.

Two solve modes are supported:

* ``paper``      -- roots of the printed transcendental balance
                    stationarity_lhs(a) = g' * stationarity_rhs(a). These are
                    the published stationary conditions; they are *not* exact
                    stationary points of the energy surface (the residual
                    gradient is reported, never hidden).
* ``consistent`` -- zeros of the exact slope of the energy restricted to the
                    beta = (a + 1/2)/k line, i.e. true stationary points of
                    the two-parameter energy surface.

The critical coupling is traced by bisection on the root-count transition;
in paper mode it is a saddle-node (two balance roots merge and vanish), in
consistent mode the search tracks the disappearance of the negative-energy
interior minimum and reports how it terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import (
    AnsatzParams,
    DimensionlessSystem,
    EnergyBreakdown,
    constrained_beta,
    constrained_energy,
    constrained_energy_slope,
    energy,
    stationarity_lhs,
    stationarity_rhs,
)

__all__ = [
    "SolveMode",
    "StationaryPoint",
    "CriticalPoint",
    "SweepGRow",
    "SweepKResult",
    "find_roots",
    "stationary_points",
    "hessian_fd",
    "classify_hessian",
    "bracket_beta_curvature",
    "critical_coupling",
    "ratio_extremum",
    "stationary_pair_fold",
    "sweep_g",
    "sweep_k",
]

DEFAULT_ALPHA_RANGE = (0.02, 40.0)
DEFAULT_SCAN_POINTS = 2000
ROOT_XTOL = 1e-10
# Refined roots closer than this are treated as one (noise near tangency).
ROOT_MERGE_TOL = 1e-6
# |det H| below this fraction of the squared Frobenius norm counts as degenerate.
DEGENERACY_FRACTION = 1e-6
GRAD_STEP = 1e-6


class SolveMode(str, Enum):
    PAPER = "paper"
    CONSISTENT = "consistent"


@dataclass(frozen=True)
class StationaryPoint:
    alpha: float
    beta: float
    energy: EnergyBreakdown
    grad_norm: float
    d2_alpha: float
    d2_cross: float
    d2_beta: float
    classification: str

    @property
    def hessian(self) -> np.ndarray:
        return np.array(
            [[self.d2_alpha, self.d2_cross], [self.d2_cross, self.d2_beta]]
        )


@dataclass(frozen=True)
class CriticalPoint:
    gprime_c: float
    alpha_star: float
    energy_at_critical: float
    mode: str
    # "saddle_node": a root pair merges and annihilates at gprime_c.
    # "unbinding":   the interior minimum persists but its energy crosses zero.
    mechanism: str


@dataclass(frozen=True)
class SweepGRow:
    gprime: float
    points: tuple[StationaryPoint, ...]


@dataclass(frozen=True)
class SweepKResult:
    rows: tuple[CriticalPoint, ...]
    gprime_c_strictly_decreasing: bool


def _mode(mode) -> SolveMode:
    return SolveMode(mode)


def residual(alpha, system: DimensionlessSystem, mode="paper"):
    """Scan function whose zeros are the mode's solution set."""
    if _mode(mode) is SolveMode.PAPER:
        a = np.asarray(alpha, dtype=float)
        out = stationarity_lhs(a, system.k) - system.gprime * stationarity_rhs(
            a, system.k
        )
        return float(out) if np.ndim(alpha) == 0 else out
    return constrained_energy_slope(alpha, system)


def _bisect(f, lo: float, hi: float, flo: float) -> float:
    for _ in range(200):
        if hi - lo <= ROOT_XTOL:
            break
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0.0) == (fmid < 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_roots(
    system: DimensionlessSystem,
    mode="paper",
    alpha_range=DEFAULT_ALPHA_RANGE,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> list[float]:
    """All roots of the mode's balance on a uniform scan, refined by bisection.

    Sign changes are bracketed on the scan grid and bisected to 1e-10 in
    alpha. Roots closer than 1e-6 are merged; in paper mode, if noise near a
    tangency still leaves more than two, the two outermost are kept. An empty
    result is a valid outcome (no bound-state balance beyond the critical
    coupling), not an error.
    """
    lo, hi = float(alpha_range[0]), float(alpha_range[1])
    if not (0.0 < lo < hi and np.isfinite(hi)):
        raise ValueError(f"invalid alpha_range {alpha_range!r}")
    if scan_points < 100:
        raise ValueError("scan_points must be at least 100")
    mode = _mode(mode)
    grid = np.linspace(lo, hi, int(scan_points))
    values = residual(grid, system, mode)

    roots: list[float] = []
    scalar = lambda a: residual(a, system, mode)
    for i in range(len(grid) - 1):
        v0, v1 = values[i], values[i + 1]
        if v0 == 0.0:
            roots.append(float(grid[i]))
        elif (v0 < 0.0) != (v1 < 0.0):
            roots.append(_bisect(scalar, grid[i], grid[i + 1], v0))
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))

    roots.sort()
    merged: list[float] = []
    for r in roots:
        if merged and r - merged[-1] < ROOT_MERGE_TOL:
            merged[-1] = 0.5 * (merged[-1] + r)
        else:
            merged.append(r)
    if mode is SolveMode.PAPER and len(merged) > 2:
        merged = [merged[0], merged[-1]]
    return [float(r) for r in merged]


def hessian_fd(
    params: AnsatzParams, system: DimensionlessSystem, h: float = 1e-4
) -> tuple[float, float, float]:
    """Central second differences (d2_alpha, d2_cross, d2_beta) of the energy.

    One Richardson step (h and h/2) removes the leading O(h^2) error. The
    acceptance contract on these numbers is sign-pattern classification, so
    closed-form second derivatives are not needed.
    """
    if not (1e-6 <= h <= 1e-2):
        raise ValueError("hessian step h must lie in [1e-6, 1e-2]")
    a, b = params.alpha, params.beta
    if a <= 2.0 * h or b <= 2.0 * h:
        raise ValueError("params too close to the domain boundary for the step h")

    def f(x, y):
        return energy(AnsatzParams(x, y), system).total

    def entries(step):
        f0 = f(a, b)
        daa = (f(a + step, b) - 2.0 * f0 + f(a - step, b)) / step**2
        dbb = (f(a, b + step) - 2.0 * f0 + f(a, b - step)) / step**2
        dab = (
            f(a + step, b + step)
            - f(a + step, b - step)
            - f(a - step, b + step)
            + f(a - step, b - step)
        ) / (4.0 * step**2)
        return np.array([daa, dab, dbb])

    coarse = entries(h)
    fine = entries(h / 2.0)
    daa, dab, dbb = (4.0 * fine - coarse) / 3.0
    return float(daa), float(dab), float(dbb)


def classify_hessian(d2_alpha: float, d2_cross: float, d2_beta: float) -> str:
    """Sign-pattern classification: local_min, saddle, or degenerate."""
    det = d2_alpha * d2_beta - d2_cross**2
    fro2 = d2_alpha**2 + 2.0 * d2_cross**2 + d2_beta**2
    if abs(det) < DEGENERACY_FRACTION * fro2:
        return "degenerate"
    if det < 0.0:
        return "saddle"
    return "local_min" if d2_alpha + d2_beta > 0.0 else "local_max"


def bracket_beta_curvature(params: AnsatzParams, k: float) -> float:
    """Second beta-derivative of the bare oscillator bracket (no 4/k**2 factor).

    Diagnostic used when comparing against published curvature entries, which
    track this convention rather than the N*D-scaled surface:
    (1.5*a**2 + 0.75*a)/b**4 - a*k/b**3.
    """
    a, b = params.alpha, params.beta
    return (1.5 * a**2 + 0.75 * a) / b**4 - a * k / b**3


def _grad_norm(params: AnsatzParams, system: DimensionlessSystem) -> float:
    a, b, h = params.alpha, params.beta, GRAD_STEP

    def f(x, y):
        return energy(AnsatzParams(x, y), system).total

    ga = (f(a + h, b) - f(a - h, b)) / (2.0 * h)
    gb = (f(a, b + h) - f(a, b - h)) / (2.0 * h)
    return max(abs(ga), abs(gb))


def stationary_points(
    system: DimensionlessSystem,
    mode="paper",
    alpha_range=DEFAULT_ALPHA_RANGE,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> list[StationaryPoint]:
    """Solved (alpha, beta) pairs with energy, gradient norm, and classification.

    Beta always comes from the constraint line beta = (alpha + 1/2)/k. In
    consistent mode the finite-difference gradient must vanish (enforced to
    1e-6); in paper mode the residual gradient is reported as a diagnostic,
    since the printed balance does not solve the exact stationarity problem.
    """
    mode = _mode(mode)
    out = []
    for alpha in find_roots(system, mode, alpha_range, scan_points):
        params = AnsatzParams(alpha, constrained_beta(alpha, system.k))
        grad = _grad_norm(params, system)
        if mode is SolveMode.CONSISTENT and grad > 1e-6:
            raise RuntimeError(
                f"consistent-mode point alpha={alpha:.9g} failed the gradient "
                f"check: |grad| = {grad:.3e} > 1e-6"
            )
        daa, dab, dbb = hessian_fd(params, system)
        out.append(
            StationaryPoint(
                alpha=alpha,
                beta=params.beta,
                energy=energy(params, system),
                grad_norm=grad,
                d2_alpha=daa,
                d2_cross=dab,
                d2_beta=dbb,
                classification=classify_hessian(daa, dab, dbb),
            )
        )
    return out


def _golden_max(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Argmax of a unimodal scalar function by golden-section search."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def ratio_extremum(k: float, alpha_max: float = 40.0) -> tuple[float, float]:
    """Stationary value of lhs/rhs on the branch where both are positive.

    Returns (gprime, alpha) at the extremum. This is the tangency condition:
    the balance lhs = g'*rhs loses its root pair exactly where the ratio is
    stationary, so the value cross-checks the bisection-traced critical
    coupling.
    """
    DimensionlessSystem(k, 0.0)  # validates k
    lo = (k - 1.0) / 2.0 + 1e-9

    def ratio(a):
        # Coarse guard: the maximum lives where both factors are positive.
        num = stationarity_lhs(a, k)
        den = stationarity_rhs(a, k)
        return num / den if den > 0.0 else -np.inf

    # Seed the golden search from a coarse scan so the bracket is unimodal.
    grid = np.linspace(lo, alpha_max, 4000)
    vals = np.array([ratio(a) for a in grid])
    i = int(np.argmax(vals))
    a_lo = grid[max(i - 1, 0)]
    a_hi = grid[min(i + 1, len(grid) - 1)]
    alpha_star = _golden_max(ratio, a_lo, a_hi)
    return float(ratio(alpha_star)), float(alpha_star)


def _consistent_window(k: float) -> tuple[tuple[float, float], int]:
    # Consistent-mode stationary points live at alpha < (k-1)/2 and the
    # min/max pair near termination sits at very small alpha, so scan a fine
    # low window.
    return (1e-5, max(3.0, (k - 1.0) / 2.0 + 1.0)), 6000


def _consistent_minima(system: DimensionlessSystem) -> list[tuple[float, float]]:
    """(alpha, energy) of interior local minima of the constrained energy."""
    window, points = _consistent_window(system.k)
    mins = []
    h = 1e-6
    for alpha in find_roots(system, SolveMode.CONSISTENT, window, points):
        curv = (
            constrained_energy_slope(alpha + h, system)
            - constrained_energy_slope(alpha - h, system)
        ) / (2.0 * h)
        if curv > 0.0:
            mins.append((alpha, float(constrained_energy(alpha, system))))
    return mins


def _bisect_coupling(predicate, g_lo, g_hi, resolution):
    """Largest coupling satisfying predicate, bracketed in [g_lo, g_hi]."""
    while g_hi - g_lo > resolution:
        mid = 0.5 * (g_lo + g_hi)
        if predicate(mid):
            g_lo = mid
        else:
            g_hi = mid
    return g_lo, g_hi


def critical_coupling(k: float, mode="paper", resolution: float = 1e-5) -> CriticalPoint:
    """Critical coupling where the mode's bound-state solution disappears.

    Paper mode: bisection on the root-count transition of the printed balance
    (pair of roots below, none above), with a zoomed second pass so the
    near-tangent pair stays resolvable; alpha* is the merged double root.

    Consistent mode: bisection on the existence of a negative-energy interior
    minimum of the constrained energy. The mechanism field records how the
    bound state terminates: "unbinding" if the minimum persists with its
    energy crossing zero, "saddle_node" if the stationary pair annihilates
    while still negative.
    """
    DimensionlessSystem(k, 0.0)
    mode = _mode(mode)
    if mode is SolveMode.PAPER:
        return _critical_paper(k, resolution)
    return _critical_consistent(k, resolution)


def _critical_paper(k: float, resolution: float) -> CriticalPoint:
    def roots_at(g, window=DEFAULT_ALPHA_RANGE, points=DEFAULT_SCAN_POINTS):
        return find_roots(DimensionlessSystem(k, g), SolveMode.PAPER, window, points)

    g_hi = 0.5
    for _ in range(20):
        if not roots_at(g_hi):
            break
        g_hi *= 2.0
    else:
        raise RuntimeError(f"could not bracket the critical coupling above for k={k}")
    g_lo = g_hi / 2.0
    for _ in range(80):
        if roots_at(g_lo):
            break
        g_lo /= 2.0
    else:
        raise RuntimeError(f"no balance roots found at any coupling for k={k}")

    g_lo, g_hi = _bisect_coupling(lambda g: bool(roots_at(g)), g_lo, g_hi, resolution)

    # Sharp folds hide the near-tangent pair between default scan nodes and
    # bias the transition low, so re-run the bisection with a zoomed window
    # around the surviving pair, re-expanding the upper bracket first.
    final = roots_at(g_lo)
    center = float(np.mean(final))
    spread = max(final[-1] - final[0], 0.5) if len(final) > 1 else 0.5
    window = (max(DEFAULT_ALPHA_RANGE[0], center - 2.0 * spread), center + 2.0 * spread)

    def count_fine(g):
        return bool(roots_at(g, window, 2000))

    for _ in range(100):
        if not count_fine(g_hi):
            break
        g_hi += 64.0 * resolution
    g_lo, g_hi = _bisect_coupling(count_fine, g_lo, g_hi, resolution)
    final = roots_at(g_lo, window, 2000)
    alpha_star = float(np.mean(final))
    gprime_c = 0.5 * (g_lo + g_hi)
    system = DimensionlessSystem(k, gprime_c)
    e_star = energy(AnsatzParams(alpha_star, constrained_beta(alpha_star, k)), system)
    return CriticalPoint(
        gprime_c=gprime_c,
        alpha_star=alpha_star,
        energy_at_critical=e_star.total,
        mode="paper",
        mechanism="saddle_node",
    )


def _critical_consistent(k: float, resolution: float) -> CriticalPoint:
    def bound_min(g):
        mins = _consistent_minima(DimensionlessSystem(k, g))
        return [m for m in mins if m[1] < 0.0]

    g_lo = 0.5
    for _ in range(80):
        if bound_min(g_lo):
            break
        g_lo /= 2.0
    else:
        raise RuntimeError(f"no negative-energy minimum found at any coupling for k={k}")
    g_hi = g_lo * 2.0
    for _ in range(20):
        if not bound_min(g_hi):
            break
        g_hi *= 2.0
    else:
        raise RuntimeError(f"negative-energy minimum persists beyond bracket for k={k}")

    g_lo, g_hi = _bisect_coupling(lambda g: bool(bound_min(g)), g_lo, g_hi, resolution)
    last = bound_min(g_lo)
    alpha_star, e_star = min(last, key=lambda m: m[1])
    survives_above = bool(_consistent_minima(DimensionlessSystem(k, g_hi)))
    return CriticalPoint(
        gprime_c=0.5 * (g_lo + g_hi),
        alpha_star=float(alpha_star),
        energy_at_critical=float(e_star),
        mode="consistent",
        mechanism="unbinding" if survives_above else "saddle_node",
    )


def stationary_pair_fold(k: float, resolution: float = 1e-5) -> CriticalPoint:
    """Coupling at which consistent-mode stationary points vanish entirely.

    Beyond the unbinding coupling the constrained energy briefly keeps a
    (positive-energy) minimum/maximum pair; this traces the fold where that
    pair annihilates, i.e. where the constrained curvature degenerates.
    """
    DimensionlessSystem(k, 0.0)
    window, points = _consistent_window(k)

    def roots_at(g):
        return find_roots(DimensionlessSystem(k, g), SolveMode.CONSISTENT, window, points)

    g_lo = 0.5
    for _ in range(80):
        if roots_at(g_lo):
            break
        g_lo /= 2.0
    g_hi = g_lo * 2.0
    for _ in range(20):
        if not roots_at(g_hi):
            break
        g_hi *= 2.0

    g_lo, g_hi = _bisect_coupling(lambda g: bool(roots_at(g)), g_lo, g_hi, resolution)
    final = roots_at(g_lo)
    alpha_star = float(np.mean(final)) if len(final) > 1 else float(final[0])
    gprime = 0.5 * (g_lo + g_hi)
    e_star = constrained_energy(alpha_star, DimensionlessSystem(k, gprime))
    return CriticalPoint(
        gprime_c=gprime,
        alpha_star=alpha_star,
        energy_at_critical=float(e_star),
        mode="consistent",
        mechanism="saddle_node",
    )


def sweep_g(k: float, gprime_list, mode="paper") -> list[SweepGRow]:
    """One row of stationary points per requested coupling, in input order."""
    gprime_list = list(gprime_list)
    if not gprime_list:
        raise ValueError("gprime_list must be non-empty")
    rows = []
    for g in gprime_list:
        pts = stationary_points(DimensionlessSystem(k, float(g)), mode)
        rows.append(SweepGRow(gprime=float(g), points=tuple(pts)))
    return rows


def sweep_k(k_list, mode="paper", resolution: float = 1e-5) -> SweepKResult:
    """Critical point per k plus a monotonicity flag for g'_c."""
    k_list = list(k_list)
    if not k_list:
        raise ValueError("k_list must be non-empty")
    rows = tuple(critical_coupling(float(k), mode, resolution) for k in k_list)
    gcs = [r.gprime_c for r in rows]
    decreasing = all(b < a for a, b in zip(gcs, gcs[1:]))
    return SweepKResult(rows=rows, gprime_c_strictly_decreasing=decreasing)
