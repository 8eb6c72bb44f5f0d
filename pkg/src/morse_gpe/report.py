"""Side-by-side comparison of published values against recomputed ones.

The report recomputes every entry of the published tables (critical couplings
per k, root energies versus coupling at k = 3, curvature entries at the two
k = 3 roots), flags each against its tolerance, and collects diagnostics that
the published account leaves ambiguous: both interaction-coefficient
conventions, both oracle energies, the peak trajectory of the density, and
the consistent-mode termination of the bound state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import reference
from .model import (
    AnsatzParams,
    DimensionlessSystem,
    constrained_beta,
    density,
    energy,
    peak_location,
)
from .oracle import (
    derived_constrained_energy,
    grid_minimize,
    imaginary_time_ground_state,
)
from .solver import (
    bracket_beta_curvature,
    critical_coupling,
    hessian_fd,
    ratio_extremum,
    stationary_pair_fold,
    stationary_points,
    sweep_k,
)

__all__ = ["ReportEntry", "ComparisonReport", "build_report", "render_markdown"]

# Tolerances used for flagging. Critical couplings are a hard reproduction
# target; energies are only expected to land within the known discrepancy
# band of the published tables; curvatures are compared in the bare-bracket
# convention the published beta entries follow.
TOL_GPRIME_C = 0.005
TOL_ENERGY = 0.1
TOL_CURVATURE = 0.2


@dataclass(frozen=True)
class ReportEntry:
    quantity: str
    published: float
    computed: float
    abs_diff: float
    tolerance: float
    within_tolerance: bool
    notes: str = ""


@dataclass
class ComparisonReport:
    entries: list[ReportEntry]
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "entries": [vars(e) for e in self.entries],
            "diagnostics": self.diagnostics,
        }


def _entry(quantity, published, computed, tolerance, notes="") -> ReportEntry:
    diff = abs(computed - published)
    return ReportEntry(
        quantity=quantity,
        published=float(published),
        computed=float(computed),
        abs_diff=float(diff),
        tolerance=float(tolerance),
        within_tolerance=bool(diff <= tolerance),
        notes=notes,
    )


def _critical_entries(k_list, entries, diagnostics):
    criticals = {}
    rows = [r for r in reference.CRITICAL_TABLE if r["k"] in k_list]
    for row in rows:
        k = row["k"]
        cp = critical_coupling(k, "paper")
        criticals[k] = cp
        g_ratio, a_ratio = ratio_extremum(k)
        entries.append(
            _entry(
                f"critical coupling g'_c (k={k})",
                row["gprime_c"],
                cp.gprime_c,
                TOL_GPRIME_C,
                notes=f"tangency cross-check {g_ratio:.6f} at alpha={a_ratio:.4f}",
            )
        )
        derived_e = derived_constrained_energy(
            cp.alpha_star, DimensionlessSystem(k, cp.gprime_c)
        )
        entries.append(
            _entry(
                f"energy at critical point (k={k})",
                row["energy"],
                cp.energy_at_critical,
                TOL_ENERGY,
                notes=(
                    f"alpha*={cp.alpha_star:.4f}; derived-coefficient value "
                    f"{derived_e:.4f} tracks the published number more closely"
                ),
            )
        )
    diagnostics["critical_points_paper_mode"] = {
        str(k): {
            "gprime_c": cp.gprime_c,
            "alpha_star": cp.alpha_star,
            "energy": cp.energy_at_critical,
        }
        for k, cp in criticals.items()
    }
    return criticals


def _energy_sweep_entries(entries, diagnostics, critical_k3):
    sweep_diag = []
    for row in reference.ENERGY_SWEEP_K3:
        if row["is_critical"]:
            cp = critical_k3
            computed = {"E1": cp.energy_at_critical, "E2": cp.energy_at_critical}
            label = f"g'={row['gprime']} (published critical row, computed at g'_c={cp.gprime_c:.5f})"
            alphas = {"E1": cp.alpha_star, "E2": cp.alpha_star}
            system = DimensionlessSystem(3.0, cp.gprime_c)
        else:
            system = DimensionlessSystem(3.0, row["gprime"])
            pts = stationary_points(system, "paper")
            label = f"g'={row['gprime']}"
            computed = {}
            alphas = {}
            for name, pt in zip(("E1", "E2"), pts):
                computed[name] = pt.energy.total
                alphas[name] = pt.alpha
        for name in ("E1", "E2"):
            if name not in computed:
                continue
            alt = derived_constrained_energy(alphas[name], system)
            entries.append(
                _entry(
                    f"{name} at {label} (k=3)",
                    row[name],
                    computed[name],
                    TOL_ENERGY,
                    notes=(
                        f"alpha={alphas[name]:.4f}; derived-coefficient value "
                        f"{alt:.4f}"
                    ),
                )
            )
        sweep_diag.append(
            {
                "gprime": row["gprime"],
                "computed": computed,
                "derived_coefficient": {
                    n: float(derived_constrained_energy(alphas[n], system))
                    for n in alphas
                },
            }
        )
    diagnostics["energy_sweep_k3"] = sweep_diag


def _curvature_entries(entries, diagnostics):
    system = DimensionlessSystem(3.0, 0.1)
    scale = system.k**2 / 4.0  # bare-bracket units relative to N*D units
    diag = {}
    for tag, published in (
        ("lower", reference.CURVATURES_MIN),
        ("upper", reference.CURVATURES_SADDLE),
    ):
        pt = reference.CURVATURE_POINTS[tag]
        params = AnsatzParams(pt["alpha"], pt["beta"])
        daa, dab, dbb = hessian_fd(params, system)
        bracket_bb = bracket_beta_curvature(params, system.k)
        computed = {
            "d2_beta": bracket_bb,
            "d2_alpha": scale * daa,
            "d2_cross": scale * dab,
        }
        diag[tag] = {
            "surface_units_ND": {"d2_alpha": daa, "d2_cross": dab, "d2_beta": dbb},
            "bare_bracket_units": computed,
        }
        for name in ("d2_beta", "d2_alpha", "d2_cross"):
            note = (
                f"bare-bracket convention at (alpha={pt['alpha']}, beta={pt['beta']}); "
                f"energy-surface value {daa if name == 'd2_alpha' else dab if name == 'd2_cross' else dbb:.4f} in N*D units"
            )
            if tag == "upper" and name == "d2_alpha":
                note += "; published magnitude not reproduced by any convention"
            entries.append(
                _entry(
                    f"curvature {name} at {tag} root (k=3, g'=0.1)",
                    published[name],
                    computed[name],
                    TOL_CURVATURE,
                    notes=note,
                )
            )
    diagnostics["curvatures"] = diag


def _root_entries(entries):
    pts = stationary_points(DimensionlessSystem(3.0, 0.1), "paper")
    for pub, pt, tag in zip(reference.REPORTED_ROOTS_K3_G01, pts, ("lower", "upper")):
        entries.append(
            _entry(
                f"balance root alpha ({tag}, k=3, g'=0.1)",
                pub,
                pt.alpha,
                0.15,
                notes=f"classified {pt.classification}, residual gradient {pt.grad_norm:.3g}",
            )
        )


def _stationary_diagnostics(diagnostics):
    system = DimensionlessSystem(3.0, 0.1)
    pts = stationary_points(system, "paper")
    diagnostics["stationary_points_k3_g01"] = [
        {
            "alpha": p.alpha,
            "beta": p.beta,
            "energy": p.energy.total,
            "grad_norm": p.grad_norm,
            "classification": p.classification,
            "hessian_det": p.d2_alpha * p.d2_beta - p.d2_cross**2,
        }
        for p in pts
    ]
    grid = grid_minimize(system, (0.2, 8.0), "constrained", 800)
    cons = stationary_points(system, "consistent")
    diagnostics["consistent_minimum_k3_g01"] = {
        "solver_alpha": cons[0].alpha if cons else None,
        "solver_energy": cons[0].energy.total if cons else None,
        "grid_alpha": grid.best_alpha,
        "grid_energy": grid.best_energy,
    }
    cp = critical_coupling(3.0, "consistent")
    fold = stationary_pair_fold(3.0)
    diagnostics["consistent_termination_k3"] = {
        "gprime_unbind": cp.gprime_c,
        "alpha_at_unbind": cp.alpha_star,
        "energy_at_unbind": cp.energy_at_critical,
        "mechanism": cp.mechanism,
        "gprime_fold": fold.gprime_c,
        "alpha_at_fold": fold.alpha_star,
        "energy_at_fold": fold.energy_at_critical,
    }


def _peak_and_width_diagnostics(diagnostics, criticals):
    trajectory = []
    for g in (0.0, 0.05, 0.1, 0.15):
        system = DimensionlessSystem(3.0, g)
        row = {"gprime": g}
        if g == 0.0:
            row["paper_peak"] = peak_location(AnsatzParams(1.0, 0.5))
            row["consistent_peak"] = row["paper_peak"]
        else:
            paper_pts = stationary_points(system, "paper")
            cons_pts = stationary_points(system, "consistent")
            row["paper_peak"] = (
                peak_location(AnsatzParams(paper_pts[0].alpha, paper_pts[0].beta))
                if paper_pts
                else None
            )
            row["consistent_peak"] = (
                peak_location(AnsatzParams(cons_pts[0].alpha, cons_pts[0].beta))
                if cons_pts
                else None
            )
        trajectory.append(row)
    diagnostics["peak_trajectory_k3"] = trajectory

    widths = {}
    for k, cp in criticals.items():
        params = AnsatzParams(cp.alpha_star, constrained_beta(cp.alpha_star, k))
        widths[str(k)] = _mass_iqr(params)
    diagnostics["critical_density_iqr"] = widths


def _mass_iqr(params: AnsatzParams) -> float:
    """Interquartile range of the d(y) dy/y mass distribution."""
    y_hi = 8.0 * (params.alpha + 1.0) / params.beta
    y = np.linspace(1e-9, y_hi, 20001)
    prof = density(params, y)
    w = prof.d_values / y
    cdf = np.concatenate(([0.0], np.cumsum(0.5 * (w[1:] + w[:-1]) * np.diff(y))))
    cdf /= cdf[-1]
    q25 = float(np.interp(0.25, cdf, y))
    q75 = float(np.interp(0.75, cdf, y))
    return q75 - q25


def _pde_diagnostics(diagnostics, pde_options):
    opts = {"n_points": 2048, "dtau": 1e-3, "tol": 1e-10}
    opts.update(pde_options or {})
    system = DimensionlessSystem(3.0, 0.1)
    runs = {}
    for convention in ("derived", "paper"):
        state = imaginary_time_ground_state(system, convention, **opts)
        runs[convention] = {
            "energy": state.energy_over_ND,
            "iterations": state.iterations,
            "residual": state.residual,
            "tail_mass_fraction": state.tail_mass_fraction,
            "delocalized": state.delocalized,
        }
    grid = grid_minimize(system, (0.2, 8.0), "constrained", 800)
    runs["variational_minimum_published_coefficient"] = grid.best_energy
    diagnostics["pde_ground_state_k3_g01"] = runs


def build_report(
    k_list=(2, 3, 4, 5), include_pde: bool = True, pde_options: dict | None = None
) -> ComparisonReport:
    """Recompute every published entry and assemble the comparison report."""
    k_list = sorted(set(int(k) for k in k_list))
    if any(k < 2 or k > 6 for k in k_list):
        raise ValueError("report k_list must lie within [2, 6]")

    entries: list[ReportEntry] = []
    diagnostics: dict = {}

    criticals = _critical_entries(k_list, entries, diagnostics)
    critical_k3 = criticals.get(3) or critical_coupling(3.0, "paper")
    _energy_sweep_entries(entries, diagnostics, critical_k3)
    _curvature_entries(entries, diagnostics)
    _root_entries(entries)
    _stationary_diagnostics(diagnostics)
    if 3 not in criticals:
        criticals[3] = critical_k3
    _peak_and_width_diagnostics(diagnostics, criticals)

    swept = sweep_k(sorted(criticals), "paper")
    diagnostics["gprime_c_strictly_decreasing"] = swept.gprime_c_strictly_decreasing

    if include_pde:
        _pde_diagnostics(diagnostics, pde_options)

    return ComparisonReport(entries=entries, diagnostics=diagnostics)


def render_markdown(report: ComparisonReport, figure_files=()) -> str:
    lines = [
        "# Comparison against published values",
        "",
        "Computed values come from the printed stationarity balance and the",
        "dimensionless energy; every published entry appears exactly once.",
        "Flags mark |computed - published| against the per-quantity tolerance;",
        "mismatches are reported, never absorbed.",
        "",
        "| quantity | published | computed | abs diff | tol | ok | notes |",
        "|---|---|---|---|---|---|---|",
    ]
    for e in report.entries:
        ok = "yes" if e.within_tolerance else "**NO**"
        lines.append(
            f"| {e.quantity} | {e.published:.6g} | {e.computed:.6g} "
            f"| {e.abs_diff:.3g} | {e.tolerance:.3g} | {ok} | {e.notes} |"
        )
    lines.append("")
    lines.append("## Diagnostics")
    lines.append("")
    for key, value in report.diagnostics.items():
        lines.append(f"### {key}")
        lines.append("")
        lines.append("```")
        lines.append(_pretty(value))
        lines.append("```")
        lines.append("")
    if figure_files:
        lines.append("## Figures")
        lines.append("")
        for f in figure_files:
            lines.append(f"- `{f}`")
        lines.append("")
    return "\n".join(lines) + "\n"


def _pretty(value, indent=0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        return "\n".join(
            f"{pad}{k}: "
            + (("\n" + _pretty(v, indent + 1)) if isinstance(v, (dict, list)) else _fmt(v))
            for k, v in value.items()
        )
    if isinstance(value, list):
        return "\n".join(
            (("\n".join([f"{pad}-", _pretty(v, indent + 1)])) if isinstance(v, (dict, list)) else f"{pad}- {_fmt(v)}")
            for v in value
        )
    return f"{pad}{_fmt(value)}"


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)
