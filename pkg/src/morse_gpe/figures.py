"""Figure rendering for the report path.

All plots are derived from the same data the CSV/JSON outputs carry; figures
are a convenience rendering, written as PNG files next to the report.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .model import (
    AnsatzParams,
    DimensionlessSystem,
    constrained_beta,
    density,
    energy,
    morse_potential,
    stationarity_lhs,
    stationarity_rhs,
)
from .solver import critical_coupling, find_roots

__all__ = ["render_report_figures"]


def _save(fig, outdir: Path, name: str, files: list[str]) -> None:
    path = outdir / name
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    files.append(str(path))


def _fig_potential(outdir, files, k_list):
    fig, ax = plt.subplots(figsize=(6, 4))
    u = np.linspace(-3.0, 15.0, 600)
    for k in k_list:
        ax.plot(u, morse_potential(u, k), label=f"k = {k}")
    ax.axhline(0.0, color="gray", lw=0.8)
    ax.set_xlabel("b x")
    ax.set_ylabel("V / D")
    ax.set_title("Morse well profile vs k")
    ax.set_ylim(-1.1, 2.0)
    ax.legend()
    ax.grid(True, alpha=0.3)
    _save(fig, outdir, "potential_profiles.png", files)


def _fig_balance(outdir, files, gc3):
    fig, axes = plt.subplots(1, 3, figsize=(13, 4), sharey=True)
    alphas = np.linspace(0.05, 10.0, 800)
    lhs = stationarity_lhs(alphas, 3.0)
    rhs = stationarity_rhs(alphas, 3.0)
    for ax, g in zip(axes, (0.1, gc3, 1.0)):
        ax.plot(alphas, lhs, label="confinement side")
        ax.plot(alphas, g * rhs, label="g' x interaction side")
        for root in find_roots(DimensionlessSystem(3.0, g), "paper", (0.05, 10.0)):
            ax.axvline(root, color="k", ls=":", lw=0.8)
        ax.set_xlabel("alpha")
        ax.set_title(f"g' = {g:.4g}")
        ax.set_ylim(-1.5, 2.0)
        ax.grid(True, alpha=0.3)
    axes[0].set_ylabel("balance terms")
    axes[0].legend(fontsize=8)
    fig.suptitle("Printed stationarity balance at k = 3: two roots, tangency, none")
    _save(fig, outdir, "stationarity_balance_k3.png", files)


def _fig_landscape(outdir, files):
    system = DimensionlessSystem(3.0, 0.1)
    alphas = np.linspace(0.2, 8.0, 220)
    betas = np.linspace(0.15, 3.0, 220)
    grid = np.empty((len(betas), len(alphas)))
    for j, b in enumerate(betas):
        for i, a in enumerate(alphas):
            grid[j, i] = energy(AnsatzParams(a, b), system).total
    fig, ax = plt.subplots(figsize=(6, 4.5))
    levels = np.linspace(-0.45, 1.5, 40)
    cs = ax.contourf(alphas, betas, np.clip(grid, levels[0], levels[-1]), levels=levels, cmap="viridis")
    fig.colorbar(cs, ax=ax, label="E / (N D)")
    ax.plot(alphas, constrained_beta(alphas, 3.0), "w--", lw=1.0, label="beta = (alpha+1/2)/k")
    ax.set_xlabel("alpha")
    ax.set_ylabel("beta")
    ax.set_title("Energy landscape, k = 3, g' = 0.1")
    ax.legend(loc="upper left", fontsize=8)
    _save(fig, outdir, "energy_landscape_k3.png", files)


def _fig_densities(outdir, files, k, gprimes, name):
    fig, ax = plt.subplots(figsize=(6, 4))
    y = np.linspace(1e-3, 8.0 * k, 1500)
    for g in gprimes:
        system = DimensionlessSystem(k, g)
        if g == 0.0:
            params = AnsatzParams((k - 1.0) / 2.0, 0.5)
        else:
            roots = find_roots(system, "paper")
            if not roots:
                continue
            params = AnsatzParams(roots[0], constrained_beta(roots[0], k))
        prof = density(params, y)
        ax.plot(prof.y_values, prof.d_values, label=f"g' = {g:.3g}")
    ax.set_xlabel("y")
    ax.set_ylabel("d(y)")
    ax.set_title(f"Bound-state density profiles, k = {k}")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    _save(fig, outdir, name, files)


def _fig_density_critical(outdir, files, criticals):
    fig, ax = plt.subplots(figsize=(6, 4))
    for k, cp in sorted(criticals.items()):
        params = AnsatzParams(cp.alpha_star, constrained_beta(cp.alpha_star, k))
        y = np.linspace(1e-3, 8.0 * k, 1500)
        prof = density(params, y)
        ax.plot(prof.y_values, prof.d_values, label=f"k = {k}, g'_c = {cp.gprime_c:.3g}")
    ax.set_xlabel("y")
    ax.set_ylabel("d(y)")
    ax.set_title("Density at the critical coupling: width grows with k")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    _save(fig, outdir, "density_at_critical.png", files)


def render_report_figures(outdir, k_list=(2, 3, 4, 5)) -> list[str]:
    """Render the report figures into outdir; returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    files: list[str] = []
    criticals = {k: critical_coupling(float(k), "paper") for k in k_list}
    gc3 = criticals.get(3, critical_coupling(3.0, "paper")).gprime_c

    _fig_potential(outdir, files, k_list)
    _fig_balance(outdir, files, gc3)
    _fig_landscape(outdir, files)
    _fig_densities(outdir, files, 3.0, (0.0, 0.05, 0.1, 0.15), "density_profiles_k3.png")
    _fig_densities(outdir, files, 5.0, (0.0, 0.02, 0.04, 0.06), "density_profiles_k5.png")
    _fig_density_critical(outdir, files, criticals)
    return files
