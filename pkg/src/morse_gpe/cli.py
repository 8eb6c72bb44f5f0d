"""Command-line front end.

Subcommands: potential, solve, critical, sweep-g, sweep-k, density,
oracle-grid, oracle-pde, report. Numeric ranges use start:stop:step syntax;
CSV output carries 12 significant digits; JSON uses a stable (sorted) key
order. Every emitted CSV/JSON file can be re-read with --from-file and is
re-emitted bit-identically. Exit codes: 0 success, 2 argument/validity
error, 3 convergence error.

Files are only ever written inside the output directory (--output-path,
else the MORSE_GPE_OUT environment variable, else the current directory).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from .analytic import noninteracting_solution
from .model import (
    AnsatzParams,
    DimensionlessSystem,
    constrained_beta,
    density,
    morse_potential,
    peak_location,
)
from .oracle import (
    ConvergenceError,
    grid_minimize,
    imaginary_time_ground_state,
)
from .report import build_report, render_markdown
from .solver import (
    CriticalPoint,
    StationaryPoint,
    critical_coupling,
    ratio_extremum,
    stationary_points,
    sweep_g,
    sweep_k,
)

__all__ = ["main"]


# ----------------------------------------------------------------------------
# serialization helpers
# ----------------------------------------------------------------------------

def _fmt_cell(v) -> str:
    if v is None or v == "":
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_cell(v) for v in row])


def _to_builtin(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(payload, indent=2, sort_keys=True, default=_to_builtin))
        fh.write("\n")


def _reemit(src: Path, outdir: Path, stem: str) -> Path:
    """Re-read a previously emitted file and re-emit it bit-identically."""
    suffix = src.suffix.lower()
    if suffix == ".json":
        with open(src, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        dest = outdir / f"{stem}.json"
        write_json(dest, payload)
    elif suffix == ".csv":
        with open(src, "r", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        dest = outdir / f"{stem}.csv"
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerows(rows)
    else:
        raise ValueError(f"--from-file expects a .csv or .json file, got {src}")
    return dest


def _point_dict(pt: StationaryPoint) -> dict:
    return {
        "alpha": pt.alpha,
        "beta": pt.beta,
        "energy": {
            "oscillator_part": pt.energy.oscillator_part,
            "interaction_part": pt.energy.interaction_part,
            "total": pt.energy.total,
        },
        "grad_norm": pt.grad_norm,
        "hessian": {
            "d2_alpha": pt.d2_alpha,
            "d2_cross": pt.d2_cross,
            "d2_beta": pt.d2_beta,
        },
        "classification": pt.classification,
    }


def _critical_dict(cp: CriticalPoint) -> dict:
    return {
        "gprime_c": cp.gprime_c,
        "alpha_star": cp.alpha_star,
        "energy_at_critical": cp.energy_at_critical,
        "mode": cp.mode,
        "mechanism": cp.mechanism,
    }


# ----------------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------------

def _parse_range(text: str) -> np.ndarray:
    """start:stop:step, inclusive of stop up to rounding."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range {text!r} must be start:stop:step")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"range {text!r} must have stop >= start and step > 0")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _parse_values(text: str) -> list[float]:
    """Either a comma list or a start:stop:step range."""
    if ":" in text:
        return [float(v) for v in _parse_range(text)]
    return [float(v) for v in text.split(",") if v.strip() != ""]


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"interval {text!r} must be lo:hi")
    return float(parts[0]), float(parts[1])


def _outdir(args) -> Path:
    base = args.output_path or os.environ.get("MORSE_GPE_OUT") or "."
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _add_common(sub, with_format=True, default_format="csv"):
    sub.add_argument(
        "-o",
        "--output-path",
        default=None,
        help="output directory (default: $MORSE_GPE_OUT or the current directory)",
    )
    if with_format:
        sub.add_argument(
            "--format",
            choices=("csv", "json"),
            default=default_format,
            help=f"output file format (default {default_format})",
        )
    sub.add_argument(
        "--from-file",
        default=None,
        help="re-emit a previously written CSV/JSON file instead of computing",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morse-gpe",
        description=(
            "Variational ground state of the 1D Gross-Pitaevskii equation in "
            "a Morse well: stationary points, critical couplings, density "
            "profiles, oracle checks, and the published-value comparison report."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("potential", help="well profile V(bx)/D on a u grid")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--u-range", default="-3:15:0.01", help="start:stop:step in u = b*x")
    _add_common(p)

    p = subs.add_parser("solve", help="stationary points at one (k, g')")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--gprime", type=float, required=True)
    p.add_argument("--mode", choices=("paper", "consistent"), default="paper")
    _add_common(p, default_format="json")

    p = subs.add_parser("critical", help="critical coupling for one k")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--mode", choices=("paper", "consistent"), default="paper")
    p.add_argument("--resolution", type=float, default=1e-5)
    _add_common(p, default_format="json")

    p = subs.add_parser("sweep-g", help="stationary points across couplings")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--gprime", required=True, help="comma list or start:stop:step")
    p.add_argument("--mode", choices=("paper", "consistent"), default="paper")
    _add_common(p)

    p = subs.add_parser("sweep-k", help="critical point per k")
    p.add_argument("--k-list", required=True, help="comma list or start:stop:step")
    p.add_argument("--mode", choices=("paper", "consistent"), default="paper")
    p.add_argument("--resolution", type=float, default=1e-5)
    _add_common(p)

    p = subs.add_parser("density", help="dimensionless density d(y) of the bound state")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--gprime", type=float, default=0.0)
    p.add_argument("--mode", choices=("paper", "consistent"), default="paper")
    p.add_argument("--alpha", type=float, default=None, help="override the solved alpha")
    p.add_argument("--beta", type=float, default=None, help="override the solved beta")
    p.add_argument("--y-range", default=None, help="start:stop:step (default 1e-3 to 8k)")
    _add_common(p)

    p = subs.add_parser("oracle-grid", help="brute-force scan of the trial energy")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--gprime", type=float, required=True)
    p.add_argument("--alpha-range", default="0.2:8", help="lo:hi")
    p.add_argument("--beta-range", default=None, help="lo:hi for a 2-D box scan")
    p.add_argument("--resolution", type=int, default=800)
    _add_common(p, default_format="json")

    p = subs.add_parser("oracle-pde", help="imaginary-time ground state on a grid")
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--gprime", type=float, required=True)
    p.add_argument("--convention", choices=("derived", "paper"), default="derived")
    p.add_argument("--domain", default=None, help="xmin:xmax (default -3 to 10k)")
    p.add_argument("--n-points", type=int, default=2048)
    p.add_argument("--dtau", type=float, default=1e-3)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=10**6)
    _add_common(p, default_format="json")

    p = subs.add_parser("report", help="published-value comparison report with figures")
    p.add_argument("--k-list", default="2,3,4,5", help="comma list within [2, 6]")
    p.add_argument("--skip-pde", action="store_true", help="omit the relaxation oracle")
    p.add_argument("--no-figures", action="store_true", help="omit PNG figures")
    p.add_argument("--pde-points", type=int, default=2048)
    p.add_argument("--pde-dtau", type=float, default=1e-3)
    p.add_argument("--pde-tol", type=float, default=1e-10)
    _add_common(p, with_format=False)

    return parser


# ----------------------------------------------------------------------------
# subcommand implementations
# ----------------------------------------------------------------------------

def _emit(args, outdir: Path, stem: str, header, rows, payload) -> Path:
    if args.format == "csv":
        dest = outdir / f"{stem}.csv"
        write_csv(dest, header, rows)
    else:
        dest = outdir / f"{stem}.json"
        write_json(dest, payload)
    return dest


def _cmd_potential(args) -> int:
    outdir = _outdir(args)
    if args.from_file:
        dest = _reemit(Path(args.from_file), outdir, "potential")
        print(f"wrote {dest}")
        return 0
    DimensionlessSystem(args.k, 0.0)
    u = _parse_range(args.u_range)
    v = morse_potential(u, args.k)
    payload = {"k": args.k, "u": list(u), "V_over_D": list(v)}
    dest = _emit(args, outdir, "potential", ["u", "V_over_D"], zip(u, v), payload)
    print(f"wrote {dest}")
    return 0


def _solve_header():
    return [
        "alpha",
        "beta",
        "E_total",
        "E_oscillator",
        "E_interaction",
        "grad_norm",
        "d2_alpha",
        "d2_cross",
        "d2_beta",
        "classification",
    ]


def _cmd_solve(args) -> int:
    outdir = _outdir(args)
    if args.from_file:
        dest = _reemit(Path(args.from_file), outdir, "solve")
        print(f"wrote {dest}")
        return 0
    system = DimensionlessSystem(args.k, args.gprime)
    pts = stationary_points(system, args.mode)
    payload = {
        "k": args.k,
        "gprime": args.gprime,
        "mode": args.mode,
        "points": [_point_dict(p) for p in pts],
    }
    rows = [
        [
            p.alpha,
            p.beta,
            p.energy.total,
            p.energy.oscillator_part,
            p.energy.interaction_part,
            p.grad_norm,
            p.d2_alpha,
            p.d2_cross,
            p.d2_beta,
            p.classification,
        ]
        for p in pts
    ]
    dest = _emit(args, outdir, "solve", _solve_header(), rows, payload)
    print(json.dumps(payload, indent=2, sort_keys=True))
    print(f"wrote {dest}")
    return 0


def _cmd_critical(args) -> int:
    outdir = _outdir(args)
    if args.from_file:
        dest = _reemit(Path(args.from_file), outdir, "critical")
        print(f"wrote {dest}")
        return 0
    cp = critical_coupling(args.k, args.mode, args.resolution)
    payload = {"k": args.k, **_critical_dict(cp)}
    if args.mode == "paper":
        g_ratio, a_ratio = ratio_extremum(args.k)
        payload["tangency_cross_check"] = {"gprime": g_ratio, "alpha": a_ratio}
    rows = [[args.k, cp.gprime_c, cp.alpha_star, cp.energy_at_critical, cp.mechanism]]
    dest = _emit(
        args,
        outdir,
        "critical",
        ["k", "gprime_c", "alpha_star", "E_at_critical", "mechanism"],
        rows,
        payload,
    )
    print(json.dumps(payload, indent=2, sort_keys=True))
    print(f"wrote {dest}")
    return 0


def _cmd_sweep_g(args) -> int:
    outdir = _outdir(args)
    if args.from_file:
        dest = _reemit(Path(args.from_file), outdir, "sweep_g")
        print(f"wrote {dest}")
        return 0
    gprimes = _parse_values(args.gprime)
    rows_raw = sweep_g(args.k, gprimes, args.mode)
    header = ["gprime", "alpha1", "beta1", "E1", "alpha2", "beta2", "E2"]
    rows = []
    for row in rows_raw:
        cells = [row.gprime]
        for i in range(2):
            if i < len(row.points):
                p = row.points[i]
                cells += [p.alpha, p.beta, p.energy.total]
            else:
                cells += [None, None, None]
        rows.append(cells)
    payload = {
        "k": args.k,
        "mode": args.mode,
        "rows": [
            {"gprime": r.gprime, "points": [_point_dict(p) for p in r.points]}
            for r in rows_raw
        ],
    }
    dest = _emit(args, outdir, "sweep_g", header, rows, payload)
    print(f"wrote {dest}")
    return 0


def _cmd_sweep_k(args) -> int:
    outdir = _outdir(args)
    if args.from_file:
        dest = _reemit(Path(args.from_file), outdir, "sweep_k")
        print(f"wrote {dest}")
        return 0
    k_list = _parse_values(args.k_list)
    result = sweep_k(k_list, args.mode, args.resolution)
    header = ["k", "gprime_c", "alpha_star", "E_at_critical", "mechanism"]
    rows = [
        [k, r.gprime_c, r.alpha_star, r.energy_at_critical, r.mechanism]
        for k, r in zip(k_list, result.rows)
    ]
    payload = {
        "mode": args.mode,
        "rows": [
            {"k": k, **_critical_dict(r)} for k, r in zip(k_list, result.rows)
        ],
        "gprime_c_strictly_decreasing": result.gprime_c_strictly_decreasing,
    }
    dest = _emit(args, outdir, "sweep_k", header, rows, payload)
    print(f"gprime_c strictly decreasing: {result.gprime_c_strictly_decreasing}")
    print(f"wrote {dest}")
    return 0


def _cmd_density(args) -> int:
    outdir = _outdir(args)
    if args.from_file:
        dest = _reemit(Path(args.from_file), outdir, "density")
        print(f"wrote {dest}")
        return 0
    system = DimensionlessSystem(args.k, args.gprime)
    if (args.alpha is None) != (args.beta is None):
        raise ValueError("--alpha and --beta must be given together")
    if args.alpha is not None:
        params = AnsatzParams(args.alpha, args.beta)
    elif args.gprime == 0.0:
        sol = noninteracting_solution(args.k)
        params = AnsatzParams(sol.alpha, sol.beta)
    else:
        pts = stationary_points(system, args.mode)
        bound = [p for p in pts if p.classification == "local_min"]
        if not bound:
            raise ValueError(
                f"no bound-state solution at k={args.k}, g'={args.gprime} in "
                f"{args.mode} mode; pass --alpha/--beta explicitly"
            )
        best = min(bound, key=lambda p: p.energy.total)
        params = AnsatzParams(best.alpha, best.beta)
    if args.y_range:
        y = _parse_range(args.y_range)
    else:
        y = np.linspace(1e-3, 8.0 * args.k, 2000)
    prof = density(params, y)
    payload = {
        "k": args.k,
        "gprime": args.gprime,
        "alpha": params.alpha,
        "beta": params.beta,
        "peak_location": peak_location(params),
        "y": list(prof.y_values),
        "d": list(prof.d_values),
    }
    dest = _emit(
        args, outdir, "density", ["y", "d"], zip(prof.y_values, prof.d_values), payload
    )
    print(
        f"alpha={params.alpha:.9g} beta={params.beta:.9g} "
        f"peak_y={peak_location(params):.9g}"
    )
    print(f"wrote {dest}")
    return 0


def _cmd_oracle_grid(args) -> int:
    outdir = _outdir(args)
    if args.from_file:
        dest = _reemit(Path(args.from_file), outdir, "oracle_grid")
        print(f"wrote {dest}")
        return 0
    system = DimensionlessSystem(args.k, args.gprime)
    beta_choice = (
        "constrained" if args.beta_range is None else _parse_interval(args.beta_range)
    )
    result = grid_minimize(
        system, _parse_interval(args.alpha_range), beta_choice, args.resolution
    )
    payload = {
        "k": args.k,
        "gprime": args.gprime,
        "best_alpha": result.best_alpha,
        "best_beta": result.best_beta,
        "best_energy": result.best_energy,
        "node_alpha": result.node_alpha,
        "node_beta": result.node_beta,
        "node_energy": result.node_energy,
        "grid_spec": result.grid_spec,
    }
    rows = [[result.best_alpha, result.best_beta, result.best_energy,
             result.node_alpha, result.node_beta, result.node_energy]]
    dest = _emit(
        args,
        outdir,
        "oracle_grid",
        ["best_alpha", "best_beta", "best_energy", "node_alpha", "node_beta", "node_energy"],
        rows,
        payload,
    )
    print(json.dumps(payload, indent=2, sort_keys=True))
    print(f"wrote {dest}")
    return 0


def _cmd_oracle_pde(args) -> int:
    outdir = _outdir(args)
    if args.from_file:
        dest = _reemit(Path(args.from_file), outdir, "oracle_pde")
        print(f"wrote {dest}")
        return 0
    system = DimensionlessSystem(args.k, args.gprime)
    domain = _parse_interval(args.domain) if args.domain else (-3.0, None)
    state = imaginary_time_ground_state(
        system,
        convention=args.convention,
        domain=domain,
        n_points=args.n_points,
        dtau=args.dtau,
        tol=args.tol,
        max_iter=args.max_iter,
    )
    summary = {
        "k": args.k,
        "gprime": args.gprime,
        "interaction_convention": state.interaction_convention,
        "energy_over_ND": state.energy_over_ND,
        "iterations": state.iterations,
        "residual": state.residual,
        "tail_mass_fraction": state.tail_mass_fraction,
        "delocalized": state.delocalized,
    }
    if args.format == "csv":
        dest = outdir / "oracle_pde.csv"
        write_csv(dest, ["x", "density"], zip(state.x_grid, state.density))
    else:
        dest = outdir / "oracle_pde.json"
        write_json(
            dest,
            {**summary, "x": list(state.x_grid), "density": list(state.density)},
        )
    print(json.dumps(summary, indent=2, sort_keys=True))
    print(f"wrote {dest}")
    return 0


def _cmd_report(args) -> int:
    outdir = _outdir(args)
    k_list = [int(v) for v in _parse_values(args.k_list)]
    report = build_report(
        k_list,
        include_pde=not args.skip_pde,
        pde_options={
            "n_points": args.pde_points,
            "dtau": args.pde_dtau,
            "tol": args.pde_tol,
        },
    )
    figure_files: list[str] = []
    if not args.no_figures:
        from .figures import render_report_figures

        figure_files = render_report_figures(outdir / "figures", k_list)
    md = render_markdown(report, figure_files)
    (outdir / "report.md").write_text(md, encoding="utf-8")
    write_json(outdir / "report.json", report.to_dict())
    write_csv(
        outdir / "report.csv",
        ["quantity", "published", "computed", "abs_diff", "tolerance", "within_tolerance", "notes"],
        [
            [e.quantity, e.published, e.computed, e.abs_diff, e.tolerance,
             str(e.within_tolerance).lower(), e.notes]
            for e in report.entries
        ],
    )
    flagged = sum(1 for e in report.entries if not e.within_tolerance)
    print(f"report entries: {len(report.entries)}, outside tolerance: {flagged}")
    for name in ("report.md", "report.json", "report.csv"):
        print(f"wrote {outdir / name}")
    for f in figure_files:
        print(f"wrote {f}")
    return 0


_COMMANDS = {
    "potential": _cmd_potential,
    "solve": _cmd_solve,
    "critical": _cmd_critical,
    "sweep-g": _cmd_sweep_g,
    "sweep-k": _cmd_sweep_k,
    "density": _cmd_density,
    "oracle-grid": _cmd_oracle_grid,
    "oracle-pde": _cmd_oracle_pde,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
