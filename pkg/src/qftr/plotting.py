"""Figures for cost reports.  Rendering is file-only (Agg backend)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .circuit import CostReport  # noqa: E402


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(direction="in")


def plot_cascade_costs(report: CostReport, path, title: str | None = None) -> None:
    """Bar chart of CNOTs per cascade with the per-cascade estimate ``len + 2(n - r)`` overlaid."""
    n = report.n
    rs = [row["r"] for row in report.per_cascade]
    cnots = [row["cnots"] for row in report.per_cascade]
    est = []
    for row in report.per_cascade:
        r = row["r"]
        if r <= n - 2:
            est.append(row["len"] + 2 * (n - r))
        else:
            est.append(2 if r == n - 1 else 0)

    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.bar(rs, cnots, color="0.6", edgecolor="k", linewidth=0.6, label="lowered CNOTs")
    ax.plot(rs, est, "k.--", lw=1.0, ms=6, label="path-length estimate")
    ax.set_xlabel("cascade r")
    ax.set_ylabel("CNOT count")
    ax.set_xticks(rs)
    _style(ax)
    ax.legend(frameon=False, fontsize="small")
    head = f"n={n}  actual={report.actual}  predicted={report.predicted}"
    ax.set_title(f"{title}\n{head}" if title else head, fontsize="medium")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
