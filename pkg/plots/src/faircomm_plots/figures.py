"""Figure builders for the three benchmark CSV shapes.

Every figure is a pure function of its CSV: the SHA-256 of the input
bytes and the plotted geometry are written into the PNG text metadata,
so downstream checks can assert provenance without pixel comparison.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SCORE_METRICS = ("fccn", "f1", "fcce")
PHI_AXIS = (-1.0, 1.0)

FIGURE_KINDS = ("scatter-grid", "sweep-trace", "corr-heatmap")


class SchemaError(ValueError):
    """The CSV does not carry the columns a figure kind requires."""

    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__("missing required columns: " + ", ".join(self.missing))


@dataclass(frozen=True)
class PlotSpec:
    csv_path: Path
    kind: str
    out_path: Path
    quality_metric: str = "nmi"
    property_name: str = "size"

    def validate(self) -> None:
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}")


def _read_csv(path: Path) -> tuple[list[dict], str, bytes]:
    raw = Path(path).read_bytes()
    text = raw.decode("utf-8")
    rows = list(csv.DictReader(text.splitlines()))
    if not rows:
        raise SchemaError(["<any data row>"])
    checksum = hashlib.sha256(raw).hexdigest()
    return rows, checksum, raw


def _require_columns(rows: list[dict], needed) -> None:
    have = set(rows[0].keys())
    missing = [c for c in needed if c not in have]
    if missing:
        raise SchemaError(missing)


def _save(fig, spec: PlotSpec, checksum: str, extra: dict) -> dict:
    metadata = {
        "faircomm:kind": spec.kind,
        "faircomm:csv-sha256": checksum,
    }
    metadata.update({f"faircomm:{k}": str(v) for k, v in extra.items()})
    spec.out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.out_path, metadata=metadata, dpi=120)
    plt.close(fig)
    return metadata


def plot_scatter_grid(spec: PlotSpec) -> dict:
    """Quality vs fairness, one panel per community-wise score metric.

    Expects a bench aggregates CSV; draws one labeled point per
    (network, method) with error bars from the std columns, the
    fairness axis pinned to (-1, 1), and a vertical fair line at 0.
    """
    rows, checksum, _ = _read_csv(spec.csv_path)
    quality = spec.quality_metric
    prop = spec.property_name
    phi_cols = [f"phi_{m}_{prop}" for m in SCORE_METRICS]
    needed = ["method", f"{quality}_mean", f"{quality}_std"]
    for col in phi_cols:
        needed += [f"{col}_mean", f"{col}_std"]
    _require_columns(rows, needed)

    fig, axes = plt.subplots(1, 3, figsize=(12, 4), sharey=True)
    points = 0
    for ax, metric, col in zip(axes, SCORE_METRICS, phi_cols):
        for row in rows:
            mean = row[f"{col}_mean"]
            if mean == "":
                continue
            x = float(mean)
            y = float(row[f"{quality}_mean"])
            xerr = float(row[f"{col}_std"] or 0.0)
            yerr = float(row[f"{quality}_std"] or 0.0)
            ax.errorbar(x, y, xerr=xerr, yerr=yerr, fmt="o", capsize=2)
            ax.annotate(row["method"], (x, y), fontsize=8,
                        xytext=(3, 3), textcoords="offset points")
            points += 1
        ax.axvline(0.0, color="grey", linewidth=0.8, linestyle="--")
        ax.set_xlim(*PHI_AXIS)
        ax.set_xlabel(f"fairness ({metric} vs {prop})")
    axes[0].set_ylabel(quality.upper())
    fig.suptitle(f"{quality.upper()} vs fairness by community {prop}")
    fig.tight_layout()
    return _save(fig, spec, checksum, {
        "panels": 3,
        "points": points,
        "methods": ",".join(sorted({r["method"] for r in rows})),
        "phi-xlim": f"{PHI_AXIS[0]},{PHI_AXIS[1]}",
        "quality": quality,
        "property": prop,
    })


def plot_sweep_trace(spec: PlotSpec) -> dict:
    """Score degradation trace with the min/max band for the edge score.

    Expects a removal-sweep CSV (columns removed, fccn, f1, fcce_mean,
    fcce_min, fcce_max); the band is filled between fcce_min and
    fcce_max.
    """
    rows, checksum, _ = _read_csv(spec.csv_path)
    needed = ["removed", "fccn", "f1", "fcce_mean", "fcce_min", "fcce_max"]
    _require_columns(rows, needed)

    k = np.array([int(r["removed"]) for r in rows])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(k, [float(r["fccn"]) for r in rows], label="FCCN")
    ax.plot(k, [float(r["f1"]) for r in rows], label="F1")
    lo = np.array([float(r["fcce_min"]) for r in rows])
    hi = np.array([float(r["fcce_max"]) for r in rows])
    ax.fill_between(k, lo, hi, alpha=0.3, label="FCCE range")
    ax.plot(k, [float(r["fcce_mean"]) for r in rows], label="FCCE mean")
    ax.set_xlabel("misclassified nodes")
    ax.set_ylabel("community-wise score")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    fig.tight_layout()
    return _save(fig, spec, checksum, {
        "steps": len(rows),
        "band": "fcce_min..fcce_max",
        "band-width-max": f"{float(np.max(hi - lo)):.6f}",
    })


def plot_corr_heatmap(spec: PlotSpec) -> dict:
    """Property-correlation matrix as an annotated heatmap in [-1, 1]."""
    rows, checksum, _ = _read_csv(spec.csv_path)
    _require_columns(rows, ["property"])
    names = [c for c in rows[0] if c != "property"]
    if not names:
        raise SchemaError(["<correlation columns>"])

    matrix = np.full((len(rows), len(names)), np.nan)
    for i, row in enumerate(rows):
        for j, name in enumerate(names):
            cell = row[name]
            if cell not in ("", "undefined"):
                matrix[i, j] = float(cell)

    fig, ax = plt.subplots(figsize=(4.5, 4))
    image = ax.imshow(matrix, vmin=-1.0, vmax=1.0, cmap="coolwarm")
    ax.set_xticks(range(len(names)), names, rotation=30, ha="right")
    ax.set_yticks(range(len(rows)), [r["property"] for r in rows])
    for i in range(matrix.shape[0]):
        for j in range(matrix.shape[1]):
            text = "n/a" if np.isnan(matrix[i, j]) else f"{matrix[i, j]:.2f}"
            ax.annotate(text, (j, i), ha="center", va="center", fontsize=9)
    fig.colorbar(image, ax=ax, shrink=0.85)
    fig.tight_layout()
    return _save(fig, spec, checksum, {
        "rows": matrix.shape[0],
        "cols": matrix.shape[1],
        "undefined-cells": int(np.isnan(matrix).sum()),
        "value-range": "-1,1",
    })


_RENDERERS = {
    "scatter-grid": plot_scatter_grid,
    "sweep-trace": plot_sweep_trace,
    "corr-heatmap": plot_corr_heatmap,
}


def render(spec: PlotSpec) -> dict:
    """Dispatch one figure; returns the metadata written into the PNG."""
    spec.validate()
    return _RENDERERS[spec.kind](spec)
