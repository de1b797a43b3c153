"""Figure rendering for CLI reports.

Each report-producing subcommand can drop a PNG next to its delimited
output.  Figures are deliberately plain: deterministic for fixed inputs,
Agg backend, no timestamps.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = [
    "save_excluded_figure",
    "save_filter_figure",
    "save_scan_figure",
    "save_witness_size_figure",
]

_DPI = 120


def _save(fig, out_dir: str, name: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def save_excluded_figure(form, limit: int, excluded: list[int], out_dir: str) -> str:
    """Rug plot of the excluded values of a ternary form up to the limit."""
    a, b, c = form
    fig, ax = plt.subplots(figsize=(8, 2.4))
    if excluded:
        ax.vlines(excluded, 0, 1, colors="crimson", linewidth=1.2)
    ax.set_xlim(0, max(limit, 1))
    ax.set_yticks([])
    ax.set_xlabel("n")
    ax.set_title(f"{len(excluded)} values <= {limit} not of the form "
                 f"{a}x² + {b}y² + {c}z²")
    fig.tight_layout()
    return _save(fig, out_dir, f"excluded-{a}-{b}-{c}.png")


def save_filter_figure(b_max: int, c_max: int, bound: int,
                       survivors, counterexamples, out_dir: str) -> str:
    """Grid over (b, c): green survivors, red pairs with a counterexample."""
    fig, ax = plt.subplots(figsize=(0.65 * c_max + 2, 0.65 * b_max + 2))
    keep = set(survivors)
    for b in range(1, b_max + 1):
        for c in range(b, c_max + 1):
            ok = (b, c) in keep
            color = "#2a9d2a" if ok else "#d4493b"
            ax.add_patch(plt.Rectangle((c - 0.45, b - 0.45), 0.9, 0.9, color=color))
            if not ok and (b, c) in counterexamples:
                ax.text(c, b, str(counterexamples[(b, c)]), ha="center", va="center",
                        fontsize=7, color="white")
    ax.set_xlim(0.4, c_max + 0.6)
    ax.set_ylim(0.4, b_max + 0.6)
    ax.set_xticks(range(1, c_max + 1))
    ax.set_yticks(range(1, b_max + 1))
    ax.set_xlabel("c")
    ax.set_ylabel("b")
    ax.invert_yaxis()
    ax.set_title(f"p5 + b·p5 + c·p5 scanned to N = {bound}\n"
                 "(red cells show the least unrepresented n)")
    fig.tight_layout()
    return _save(fig, out_dir, f"filter-{b_max}-{c_max}.png")


def save_scan_figure(reports, bound: int, out_dir: str, name: str = "scan.png") -> str:
    """Bar chart of scan outcomes: verified bound per sum, failures marked."""
    labels = [str(r.sum) for r in reports]
    heights = [(r.first_failure if r.first_failure is not None else r.bound)
               for r in reports]
    colors = ["#d4493b" if r.first_failure is not None else "#2a9d2a" for r in reports]
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(reports) + 2), 4))
    ax.bar(range(len(reports)), heights, color=colors)
    ax.set_xticks(range(len(reports)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("verified up to n")
    ax.set_ylim(0, bound * 1.05 if bound else 1)
    ax.set_title(f"representability scans to N = {bound}")
    fig.tight_layout()
    return _save(fig, out_dir, name)


def save_witness_size_figure(sum_label: str, ns, index_sizes, out_dir: str) -> str:
    """Scatter of max |index| of each produced witness against n."""
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.scatter(ns, index_sizes, s=4, alpha=0.5, color="#33658a", edgecolors="none")
    ax.set_xlabel("n")
    ax.set_ylabel("max |index| in witness")
    ax.set_title(f"witness index growth for {sum_label}")
    fig.tight_layout()
    safe = sum_label.replace("*", "").replace("+", "_")
    return _save(fig, out_dir, f"witnesses-{safe}.png")
