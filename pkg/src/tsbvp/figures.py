"""Figure rendering for CLI reports.

Renders to files only, using the Agg backend, so it works headless.  Every
figure corresponds to one report: solution profiles for solve runs, margin
charts for hypothesis checks, and condition charts for the sampled
slice-condition verdicts.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["solution_figure", "hypothesis_figure", "lw_figure"]

_PASS = "#2a7e43"
_FAIL = "#b3362b"


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def solution_figure(path: str, solutions, labels, title: str) -> str:
    """Overlay of fixed point profiles on their time-scale grid."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for u, label in zip(solutions, labels):
        ax.plot(u.ts.grid, u.values, marker=".", markersize=3.5,
                linewidth=1.1, label=label)
    ax.set_xlabel("t")
    ax.set_ylabel("u(t)")
    ax.set_title(title)
    if solutions:
        ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def hypothesis_figure(path: str, report: dict, title: str) -> str:
    """Margins of each hypothesis plus the ordering chain."""
    hyps = report["hypotheses"]
    chain = report["chain"]
    fig, (ax1, ax2) = plt.subplots(
        2, 1, figsize=(7.0, 5.2), height_ratios=[3, 2])

    names = [h["name"] for h in hyps]
    margins = [0.0 if h["margin"] is None else h["margin"] for h in hyps]
    colors = [_PASS if h["passed"] else _FAIL for h in hyps]
    ax1.barh(names, margins, color=colors)
    ax1.axvline(0.0, color="black", linewidth=0.8)
    ax1.set_xlabel("margin (lhs - rhs)")
    ax1.invert_yaxis()
    ax1.set_title(title)

    vals = chain["values"]
    ax2.plot(range(len(vals)), vals, marker="o",
             color=_PASS if chain["passed"] else _FAIL)
    ax2.set_xticks(range(len(vals)))
    ax2.set_xticklabels(chain["labels"], rotation=20, fontsize=7)
    ax2.set_ylabel("chain value")
    ax2.grid(True, alpha=0.3)
    fig.tight_layout()
    return _save(fig, path)


def lw_figure(path: str, report: dict, title: str) -> str:
    """Worst margins and violation counts of the sampled conditions."""
    conds = report["conditions"]
    names = list(conds.keys())
    margins = [0.0 if conds[n]["worst_margin"] is None
               else conds[n]["worst_margin"] for n in names]
    colors = [_PASS if conds[n]["passed"] else _FAIL for n in names]
    fig, ax = plt.subplots(figsize=(7.0, 3.6))
    bars = ax.bar(names, margins, color=colors)
    for bar, n in zip(bars, names):
        ax.annotate(f"{conds[n]['violations']} violations | "
                    f"{conds[n]['checked']} checked",
                    (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center", va="bottom", fontsize=7)
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_ylabel("worst margin")
    ax.set_title(title)
    return _save(fig, path)
