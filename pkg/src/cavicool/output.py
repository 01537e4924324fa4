"""CSV/JSON writers for the CLI's machine-readable outputs.

Every file is self-describing: CSV outputs start with ``# key=value``
comment lines carrying the schema tag and the full resolved parameter set;
JSON outputs carry the same data under ``schema`` and ``params`` keys.
Masked numeric fields are written as empty CSV fields / JSON nulls.
Floats are serialized with ``repr`` so identical inputs give byte-identical
files.
"""

from __future__ import annotations

import json
import math
from typing import IO, Iterable

from .analysis import InterferenceRoot, SidebandComparison, SweepResult
from .dynamics import Trajectory
from .rates import Amplitudes, Params, RateSet

PARAM_FIELDS = ("nu", "gamma", "kappa", "Omega", "g_tilde", "phi",
                "theta_L", "theta_c", "Delta", "delta_c", "eta", "alpha")

SWEEP_SCHEMA = "cavicool.sweep.v1"
ROOTS_SCHEMA = "cavicool.roots.v1"
DELTA_OPT_SCHEMA = "cavicool.delta_opt.v1"
COMPARE_SCHEMA = "cavicool.sideband_compare.v1"
EVOLVE_SCHEMA = "cavicool.evolve.v1"
STEADY_SCHEMA = "cavicool.steady.v1"
RATES_SCHEMA = "cavicool.rates.v1"


def fmt(x: float | None) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return repr(float(x))


def _jnum(x: float | None) -> float | None:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return float(x)


def params_dict(p: Params) -> dict[str, float]:
    return {name: float(getattr(p, name)) for name in PARAM_FIELDS}


def _write_header(stream: IO[str], schema: str, p: Params):
    stream.write(f"# schema={schema}\n")
    for name, value in params_dict(p).items():
        stream.write(f"# {name}={fmt(value)}\n")


def _dump_json(stream: IO[str], payload: dict):
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def write_sweep(result: SweepResult, stream: IO[str], fmt_name: str):
    rows = []
    for i, Delta in enumerate(result.Delta_axis):
        for j, dc in enumerate(result.delta_c_axis):
            status = result.status(i, j)
            n_st = result.n_st[i, j] if status == "ok" else None
            W = result.W[i, j] if status == "ok" else None
            rows.append((float(dc), float(Delta), n_st, W, status))
    if fmt_name == "csv":
        _write_header(stream, SWEEP_SCHEMA, result.params)
        stream.write("delta_c,Delta,n_st,W,status\n")
        for dc, Delta, n_st, W, status in rows:
            stream.write(f"{fmt(dc)},{fmt(Delta)},{fmt(n_st)},{fmt(W)},{status}\n")
    else:
        _dump_json(stream, {
            "schema": SWEEP_SCHEMA,
            "params": params_dict(result.params),
            "delta_c_axis": [float(x) for x in result.delta_c_axis],
            "Delta_axis": [float(x) for x in result.Delta_axis],
            "rows": [{"delta_c": dc, "Delta": Delta, "n_st": _jnum(n_st),
                      "W": _jnum(W), "status": status}
                     for dc, Delta, n_st, W, status in rows],
        })


def write_roots(roots: Iterable[InterferenceRoot], p: Params,
                stream: IO[str], fmt_name: str):
    roots = list(roots)
    if fmt_name == "csv":
        _write_header(stream, ROOTS_SCHEMA, p)
        stream.write("branch,delta_c,Delta,residual\n")
        for r in roots:
            stream.write(f"{r.branch},{fmt(r.delta_c)},{fmt(r.Delta)},{fmt(r.residual)}\n")
    else:
        _dump_json(stream, {
            "schema": ROOTS_SCHEMA,
            "params": params_dict(p),
            "roots": [{"branch": r.branch, "delta_c": float(r.delta_c),
                       "Delta": float(r.Delta), "residual": float(r.residual)}
                      for r in roots],
        })


def write_delta_opt(table: list[tuple[float, float | None, str]], p: Params,
                    stream: IO[str], fmt_name: str):
    if fmt_name == "csv":
        _write_header(stream, DELTA_OPT_SCHEMA, p)
        stream.write("Delta,delta_opt,status\n")
        for Delta, value, status in table:
            stream.write(f"{fmt(Delta)},{fmt(value)},{status}\n")
    else:
        _dump_json(stream, {
            "schema": DELTA_OPT_SCHEMA,
            "params": params_dict(p),
            "rows": [{"Delta": float(Delta), "delta_opt": _jnum(value), "status": status}
                     for Delta, value, status in table],
        })


def write_compare(result: SidebandComparison, stream: IO[str], fmt_name: str):
    rows = []
    for i, g in enumerate(result.g_tilde_axis):
        status = result.cavity_status[i]
        n_cav = result.n_cavity[i] if status == "ok" else None
        W_cav = result.W_cavity[i] if status != "singular" else None
        rows.append((float(g), n_cav, W_cav,
                     float(result.n_sideband[i]), float(result.W_sideband[i]), status))
    if fmt_name == "csv":
        _write_header(stream, COMPARE_SCHEMA, result.params)
        stream.write("g_tilde,n_st_cavity,W_cavity,n_st_sideband,W_sideband,status\n")
        for g, n_cav, W_cav, n_side, W_side, status in rows:
            stream.write(f"{fmt(g)},{fmt(n_cav)},{fmt(W_cav)},"
                         f"{fmt(n_side)},{fmt(W_side)},{status}\n")
    else:
        _dump_json(stream, {
            "schema": COMPARE_SCHEMA,
            "params": params_dict(result.params),
            "rows": [{"g_tilde": g, "n_st_cavity": _jnum(n_cav),
                      "W_cavity": _jnum(W_cav), "n_st_sideband": _jnum(n_side),
                      "W_sideband": _jnum(W_side), "status": status}
                     for g, n_cav, W_cav, n_side, W_side, status in rows],
        })


def write_trajectory(traj: Trajectory, p: Params, stream: IO[str], fmt_name: str):
    n_levels = traj.probs.shape[1]
    means = traj.n_mean
    if fmt_name == "csv":
        _write_header(stream, EVOLVE_SCHEMA, p)
        header = ",".join(["t", "n_mean"] + [f"p{n}" for n in range(n_levels)])
        stream.write(header + "\n")
        for i, t in enumerate(traj.times):
            cells = [fmt(t), fmt(means[i])] + [fmt(x) for x in traj.probs[i]]
            stream.write(",".join(cells) + "\n")
    else:
        _dump_json(stream, {
            "schema": EVOLVE_SCHEMA,
            "params": params_dict(p),
            "times": [float(t) for t in traj.times],
            "n_mean": [float(x) for x in means],
            "probs": [[float(x) for x in row] for row in traj.probs],
        })


def write_steady(n_st: float | None, W: float, status: str, p: Params,
                 stream: IO[str], fmt_name: str):
    if fmt_name == "csv":
        _write_header(stream, STEADY_SCHEMA, p)
        stream.write("n_st,W,status\n")
        stream.write(f"{fmt(n_st)},{fmt(W)},{status}\n")
    else:
        _dump_json(stream, {
            "schema": STEADY_SCHEMA,
            "params": params_dict(p),
            "n_st": _jnum(n_st),
            "W": float(W),
            "status": status,
        })


def write_rates(a: Amplitudes, r: RateSet, warnings: list[str], p: Params,
                stream: IO[str], fmt_name: str):
    if fmt_name == "csv":
        _write_header(stream, RATES_SCHEMA, p)
        stream.write("name,real,imag\n")
        for name, value in a.as_dict().items():
            stream.write(f"{name},{fmt(value.real)},{fmt(value.imag)}\n")
        for name, value in r.as_dict().items():
            stream.write(f"{name},{fmt(value)},{fmt(0.0)}\n")
    else:
        _dump_json(stream, {
            "schema": RATES_SCHEMA,
            "params": params_dict(p),
            "amplitudes": {name: [value.real, value.imag]
                           for name, value in a.as_dict().items()},
            "rates": r.as_dict(),
            "warnings": warnings,
        })
