"""Plotting front end for cavicool CSV/JSON outputs."""

from .errors import EmptyGrid, PlotInputError, SchemaMismatch
from .io import (
    CompareData,
    CurveData,
    RootsData,
    SweepData,
    read_compare,
    read_delta_opt,
    read_roots,
    read_sweep,
)
from .render import PlotSpec, RenderResult, render, render_lines

__version__ = "0.1.0"

__all__ = [
    "EmptyGrid", "PlotInputError", "SchemaMismatch",
    "CompareData", "CurveData", "RootsData", "SweepData",
    "read_compare", "read_delta_opt", "read_roots", "read_sweep",
    "PlotSpec", "RenderResult", "render", "render_lines",
    "__version__",
]
