"""Survival curve plotting (SVG/PNG step plots with censor ticks)."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

import matplotlib

matplotlib.use("Agg")
# pinned hash salt keeps generated SVG element ids stable across processes
matplotlib.rcParams["svg.hashsalt"] = "sage"

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from sage.survival.km import KMCurve  # noqa: E402


def km_plot(curves: Mapping[str, KMCurve], path: str | Path,
            title: str = "Survival by group") -> Path:
    """Write a step plot; one line per group, censor marks as ticks."""
    if not curves:
        raise ValueError("no curves to plot")
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for label in sorted(curves):
        curve = curves[label]
        xs = [0.0]
        ys = [1.0]
        for t, s in zip(curve.times, curve.survival):
            xs.append(t)
            ys.append(s)
        ax.step(xs, ys, where="post", label=f"{label} (n={curve.n_subjects})")
        if curve.censor_times:
            marks = [(t, curve.survival_at(t)) for t in curve.censor_times]
            ax.plot([m[0] for m in marks], [m[1] for m in marks],
                    linestyle="none", marker="|", markersize=8)
    ax.set_xlabel("time")
    ax.set_ylabel("survival probability")
    ax.set_ylim(0.0, 1.05)
    ax.set_title(title)
    ax.legend(loc="lower left", fontsize=8)
    out = Path(path)
    # a pinned empty date keeps repeated renders byte-comparable
    metadata = {"Date": None} if out.suffix.lower() == ".svg" else None
    fig.savefig(out, metadata=metadata)
    plt.close(fig)
    return out
