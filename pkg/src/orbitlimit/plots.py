"""Figure rendering for limit tables and verification reports.

Figures are written to files next to the delimited output; the Agg backend
keeps rendering headless.  Inputs are the already-assembled report
structures, so plotting never recomputes anything.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def convergence_figure(n_values, errors_per_point, exponents, path: str):
    """Log-log error-vs-n curves, one per point, with the fitted decay slopes.

    errors_per_point: sequence of per-point error columns (same length as
    n_values).  Points whose errors are identically zero (exact cases) are
    reported in the legend but contribute no curve.
    """
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    exact = 0
    for idx, errors in enumerate(errors_per_point):
        pairs = [(n, e) for n, e in zip(n_values, errors) if e > 0]
        if not pairs:
            exact += 1
            continue
        ns = [p[0] for p in pairs]
        es = [p[1] for p in pairs]
        ax.loglog(ns, es, marker="o", markersize=3, linewidth=1, alpha=0.7, label=f"point {idx}")
    slopes = [e for e in exponents if e is not None]
    title = "error of cl_n against the classical limit"
    if slopes:
        title += f"  (median slope {np.median(slopes):.2f})"
    if exact:
        title += f"  [{exact} exact]"
    ax.set_title(title, fontsize=10)
    ax.set_xlabel("n")
    ax.set_ylabel("|cl_n - cl|")
    ax.grid(True, which="both", alpha=0.3)
    if len(errors_per_point) <= 12 and len(errors_per_point) > exact:
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def residual_figure(suites, path: str):
    """Residual/tolerance ratios per check, log scale, pass line at 1."""
    names, ratios, colors = [], [], []
    for suite in suites:
        for check in suite.checks:
            names.append(f"{suite.suite}: {check.name}")
            floor = 1e-18
            ratios.append(max(check.residual, floor) / check.tolerance)
            colors.append("#2a7e43" if check.passed else "#b03030")
    fig, ax = plt.subplots(figsize=(7.5, max(2.5, 0.32 * len(names) + 1.2)))
    y = np.arange(len(names))
    ax.barh(y, ratios, color=colors, height=0.6)
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xscale("log")
    ax.axvline(1.0, color="black", linewidth=1, linestyle="--")
    ax.set_xlabel("residual / tolerance (pass left of dashed line)")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
