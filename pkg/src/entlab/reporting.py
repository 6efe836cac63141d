"""Deterministic report serialization and figure rendering.

Reports are JSON with fixed field order and native float repr; tabular
entropy samples go to CSV with the header `region,size,boundary,entropy_bits`.
Figures are rendered to PNG next to the delimited output with pinned metadata
so identical runs produce identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_PNG_METADATA = {"Software": "entlab"}


def write_report(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def write_samples_csv(path: Path, rows: Sequence[dict]) -> None:
    """Rows need keys region, size, boundary, entropy_bits."""
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["region", "size", "boundary", "entropy_bits"])
        for row in rows:
            writer.writerow(
                [row["region"], row["size"], row["boundary"], row["entropy_bits"]]
            )


def render_fit_figure(
    path: Path,
    samples: Sequence[tuple[float, float]],
    fit: Optional[dict] = None,
    xlabel: str = "linear size",
    ylabel: str = "entropy (bits)",
    title: str = "entropy scaling",
) -> None:
    xs = [s[0] for s in samples]
    ys = [s[1] for s in samples]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(xs, ys, "o", color="#1f4e79", label="samples")
    if fit is not None and fit.get("form") in ("linear", "polynomial", "power"):
        import numpy as np

        grid = np.linspace(min(xs), max(xs), 200)
        coeffs = fit["coefficients"]
        if fit["form"] == "power":
            curve = coeffs[0] * grid ** coeffs[1]
            label = f"fit c*l^a, a={coeffs[1]:.4g}"
        else:
            curve = np.zeros_like(grid)
            deg = len(coeffs) - 1
            for i, c in enumerate(coeffs):
                curve += c * grid ** (deg - i)
            label = "fit " + " + ".join(
                f"{c:.4g} l^{deg - i}" if deg - i else f"{c:.4g}"
                for i, c in enumerate(coeffs)
            )
        ax.plot(grid, curve, "-", color="#c23b22", label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)


def render_sweep_figure(
    path: Path,
    xs: Sequence[float],
    series: dict[str, Sequence[float]],
    xlabel: str,
    ylabel: str,
    title: str,
) -> None:
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    for label, ys in series.items():
        ax.plot(xs, ys, "o-", label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if len(series) > 1:
        ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)
