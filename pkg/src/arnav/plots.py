"""Deterministic SVG plots for survey distributions.

Matplotlib with the Agg backend; the SVG hash salt and a cleared Date
field make byte-identical output for identical input, which the replay
and packaging tests rely on.
"""

from __future__ import annotations

import os
from typing import Dict, List, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

matplotlib.rcParams["svg.hashsalt"] = "arnav"

LIKERT_COLORS = ["#c0392b", "#e67e22", "#bdc3c7", "#52be80", "#1e8449"]
LIKERT_LABELS = ["strongly disagree", "disagree", "neutral", "agree", "strongly agree"]
THREEWAY_COLORS = ["#2471a3", "#bdc3c7", "#b03a2e"]
THREEWAY_LABELS = ["first system", "both equally", "second system"]


def _stacked_bars(
    counts: Dict[str, List[int]],
    colors: Sequence[str],
    labels: Sequence[str],
    title: str,
    out_path: str,
) -> None:
    qids = list(counts.keys())
    fig, ax = plt.subplots(figsize=(8, max(2.0, 0.5 * len(qids) + 1.5)))
    y = list(range(len(qids)))[::-1]
    left = [0] * len(qids)
    for li, (color, label) in enumerate(zip(colors, labels)):
        widths = [counts[q][li] for q in qids]
        ax.barh(y, widths, left=left, color=color, label=label, height=0.6)
        left = [a + b for a, b in zip(left, widths)]
    ax.set_yticks(y)
    ax.set_yticklabels(qids)
    ax.set_xlabel("responses")
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize=7)
    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)


def write_distribution_plots(
    distributions: Dict[str, Dict[str, List[int]]], out_dir: str
) -> List[str]:
    """Write one SVG per non-empty distribution group; returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    written: List[str] = []
    likert = distributions.get("likert", {})
    if likert:
        path = os.path.join(out_dir, "likert_distribution.svg")
        _stacked_bars(likert, LIKERT_COLORS, LIKERT_LABELS,
                      "Response distribution (5-point items)", path)
        written.append(path)
    threeway = distributions.get("threeway", {})
    if threeway:
        path = os.path.join(out_dir, "comparison_distribution.svg")
        _stacked_bars(threeway, THREEWAY_COLORS, THREEWAY_LABELS,
                      "System comparison (three-way items)", path)
        written.append(path)
    return written
