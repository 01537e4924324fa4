"""Figure rendering from cavicool output files.

Heatmaps blank masked cells (heating regions get an "H" legend entry) and
can overlay the optimal-detuning curve and suppression-point crosses, both
read from their own cavicool output files: this package computes no physics.
Inputs are never modified; rendering the same spec twice produces identical
image bytes (PNG metadata is stripped).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import LogNorm  # noqa: E402
from matplotlib.patches import Patch  # noqa: E402

from .errors import EmptyGrid  # noqa: E402
from .io import read_compare, read_delta_opt, read_roots, read_sweep  # noqa: E402

QUANTITY_LABELS = {"n_st": "steady-state occupation", "W": "cooling rate"}


@dataclass(frozen=True)
class PlotSpec:
    """Everything needed to render one heatmap."""

    input_path: str
    quantity: str = "n_st"              # "n_st" | "W"
    log_scale: bool | None = None       # None: log for n_st, linear for W
    delta_opt_path: str | None = None   # optimal-detuning table to overlay
    roots_path: str | None = None       # suppression points to overlay
    out_path: str = "heatmap.png"
    xlim: tuple[float, float] | None = None
    ylim: tuple[float, float] | None = None


@dataclass(frozen=True)
class RenderResult:
    out_path: str
    blanked_cells: int
    heating_cells: int
    crosses: int
    curve_points: int
    x_range: tuple[float, float]
    y_range: tuple[float, float]


def _save(fig, out_path: str):
    path = Path(out_path)
    kwargs = {}
    if path.suffix.lower() == ".png":
        kwargs["metadata"] = {"Software": None}
    fig.savefig(path, dpi=150, bbox_inches="tight", **kwargs)
    plt.close(fig)


def render(spec: PlotSpec) -> RenderResult:
    """Render a sweep heatmap according to ``spec``.

    Raises
    ------
    SchemaMismatch
        If any input file is not of the expected kind.
    EmptyGrid
        If either grid axis has fewer than two points.
    """
    if spec.quantity not in QUANTITY_LABELS:
        raise ValueError(f"quantity must be one of {sorted(QUANTITY_LABELS)}")
    data = read_sweep(spec.input_path)
    if data.delta_c_axis.size < 2 or data.Delta_axis.size < 2:
        raise EmptyGrid(
            f"grid is {data.Delta_axis.size} x {data.delta_c_axis.size}; "
            "need at least 2 points per axis")

    values = data.n_st if spec.quantity == "n_st" else data.W
    masked = np.ma.masked_invalid(values)
    heating = int((data.status == "heating").sum())

    log_scale = spec.log_scale
    if log_scale is None:
        log_scale = spec.quantity == "n_st"
    norm = None
    if log_scale:
        positive = masked.compressed()
        positive = positive[positive > 0]
        if positive.size:
            norm = LogNorm(vmin=positive.min(), vmax=positive.max())
            masked = np.ma.masked_less_equal(masked, 0.0)

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad("white")
    mesh = ax.pcolormesh(data.delta_c_axis, data.Delta_axis, masked,
                         cmap=cmap, norm=norm, shading="nearest")
    fig.colorbar(mesh, ax=ax, label=QUANTITY_LABELS[spec.quantity])

    handles = [Patch(facecolor="white", edgecolor="0.6", label="H (heating)")]

    curve_points = 0
    if spec.delta_opt_path is not None:
        curve = read_delta_opt(spec.delta_opt_path)
        keep = np.isfinite(curve.delta_opt)
        curve_points = int(keep.sum())
        (line,) = ax.plot(curve.delta_opt[keep], curve.Delta[keep], "k--",
                          lw=1.2, label="optimal detuning")
        handles.append(line)

    crosses = 0
    if spec.roots_path is not None:
        roots = read_roots(spec.roots_path)
        crosses = int(roots.delta_c.size)
        if crosses:
            marks = ax.plot(roots.delta_c, roots.Delta, "rx", ms=9, mew=1.8,
                            label="suppression points")[0]
            handles.append(marks)

    x_range = (float(data.delta_c_axis[0]), float(data.delta_c_axis[-1]))
    y_range = (float(data.Delta_axis[0]), float(data.Delta_axis[-1]))
    ax.set_xlim(spec.xlim if spec.xlim is not None else x_range)
    ax.set_ylim(spec.ylim if spec.ylim is not None else y_range)
    ax.set_xlabel("cavity detuning (units of trap frequency)")
    ax.set_ylabel("atom detuning (units of trap frequency)")
    ax.legend(handles=handles, loc="upper right", fontsize=8, framealpha=0.9)
    _save(fig, spec.out_path)

    return RenderResult(out_path=spec.out_path,
                        blanked_cells=int(masked.mask.sum()) if masked.mask is not np.ma.nomask else 0,
                        heating_cells=heating,
                        crosses=crosses, curve_points=curve_points,
                        x_range=(float(ax.get_xlim()[0]), float(ax.get_xlim()[1])),
                        y_range=(float(ax.get_ylim()[0]), float(ax.get_ylim()[1])))


def render_lines(input_path: str, out_path: str = "compare.png") -> RenderResult:
    """Coupling-scan comparison: cavity cooling vs the sideband baseline."""
    data = read_compare(input_path)
    if data.g_tilde.size < 2:
        raise EmptyGrid("need at least 2 coupling values")

    fig, (ax_n, ax_w) = plt.subplots(2, 1, figsize=(6.0, 6.4), sharex=True)
    ax_n.semilogy(data.g_tilde, data.n_cavity, "-", color="C0", label="cavity")
    ax_n.semilogy(data.g_tilde, data.n_sideband, "--", color="C3",
                  label="sideband baseline")
    ax_n.set_ylabel("steady-state occupation")
    ax_n.legend(fontsize=8)
    ax_w.plot(data.g_tilde, data.W_cavity, "-", color="C0")
    ax_w.plot(data.g_tilde, data.W_sideband, "--", color="C3")
    ax_w.set_ylabel("cooling rate")
    ax_w.set_xlabel("atom-cavity coupling (units of trap frequency)")
    ax_w.set_xlim(float(data.g_tilde[0]), float(data.g_tilde[-1]))
    _save(fig, out_path)

    blanked = int(np.isnan(data.n_cavity).sum())
    return RenderResult(out_path=out_path, blanked_cells=blanked,
                        heating_cells=sum(s == "heating" for s in data.status),
                        crosses=0, curve_points=0,
                        x_range=(float(data.g_tilde[0]), float(data.g_tilde[-1])),
                        y_range=(float(np.nanmin(data.W_cavity)),
                                 float(np.nanmax(data.W_cavity))))
