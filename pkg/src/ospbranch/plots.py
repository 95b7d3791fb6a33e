"""Figures for the CLI report path (matplotlib, non-interactive backend)."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .algebra import ScanPoint  # noqa: E402


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def branching_bars(rows: list[dict], title: str, path: Path) -> Path:
    """Bar chart of component dimensions; rows carry 'label', 'dimension' and 'status'."""
    colors = {"verified": "tab:green", "exceptional": "tab:orange", "failed": "tab:red", "predicted": "tab:gray"}
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [r["label"] for r in rows]
    dims = [r["dimension"] if r["dimension"] is not None else 0 for r in rows]
    ax.bar(labels, dims, color=[colors.get(r["status"], "tab:gray") for r in rows])
    for x, d in enumerate(dims):
        ax.annotate(str(d), (x, d), ha="center", va="bottom")
    ax.set_xlabel("component V(c,b)")
    ax.set_ylabel("dimension")
    ax.set_title(title)
    fig.tight_layout()
    return _save(fig, path)


def gap_scan_plot(points: list[ScanPoint], title: str, path: Path) -> Path:
    """Casimir gap at every scanned weight; zeros highlighted."""
    fig, ax = plt.subplots(figsize=(7, 4))
    xs = list(range(len(points)))
    gaps = [p.gap for p in points]
    ax.scatter(xs, gaps, s=12, color="tab:blue", label="gap")
    zeros = [x for x, g in zip(xs, gaps) if g == 0]
    ax.scatter(zeros, [0] * len(zeros), s=40, facecolors="none", edgecolors="tab:red", label="gap = 0")
    ax.axhline(0, color="black", lw=0.8)
    ax.set_xlabel("scanned weight (c,d,e,f), enumeration order")
    ax.set_ylabel("Casimir gap")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)
