"""Grouped precision/recall/F bar charts for evaluation reports."""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .evaluation import Metrics  # noqa: E402

METRIC_NAMES = ("P", "R", "F")


def plot_metrics(systems: Sequence[tuple[str, Metrics]], path, title: str = "Dependency edge scores") -> None:
    """Write one group of P/R/F bars per metric, one bar per system.

    The output format follows the file extension (png, pdf, svg, ...).
    """
    if not systems:
        raise ValueError("nothing to plot")
    values = np.array([[m.precision, m.recall, m.f_measure] for _, m in systems]) * 100.0
    x = np.arange(len(METRIC_NAMES))
    width = 0.8 / len(systems)
    fig, ax = plt.subplots(figsize=(4.5 + 0.5 * len(systems), 3.2))
    try:
        for k, (name, _) in enumerate(systems):
            offset = (k - (len(systems) - 1) / 2) * width
            bars = ax.bar(x + offset, values[k], width, label=name)
            ax.bar_label(bars, fmt="%.2f", fontsize=7, padding=1)
        ax.set_xticks(x, METRIC_NAMES)
        ax.set_ylabel("%")
        ax.set_ylim(0, 110)
        ax.set_title(title)
        ax.legend(fontsize=8, loc="lower right")
        fig.tight_layout()
        # Fixed metadata keeps repeated renders byte-stable.
        ext = os.path.splitext(os.fspath(path))[1].lower()
        metadata = {"Software": None} if ext == ".png" else None
        fig.savefig(path, dpi=120, metadata=metadata)
    finally:
        plt.close(fig)
