"""Paper-style figures from faircomm benchmark CSVs.

This package never recomputes metrics; it reads the public CSV
contract (bench aggregates, sweep traces, correlation matrices) and
renders figures whose data provenance is recorded in the image's text
metadata.
"""

from .figures import (
    PlotSpec,
    SchemaError,
    plot_corr_heatmap,
    plot_scatter_grid,
    plot_sweep_trace,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "PlotSpec",
    "SchemaError",
    "plot_corr_heatmap",
    "plot_scatter_grid",
    "plot_sweep_trace",
    "render",
]
