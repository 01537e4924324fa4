"""Readers for the cavicool CLI's documented CSV/JSON outputs.

CSV files carry ``# key=value`` comment lines (schema tag + parameter
snapshot) followed by a header row; JSON files carry the same data under
``schema``/``params`` keys.  Masked values are empty CSV fields / JSON
nulls and are mapped to NaN.  No physics is computed here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SchemaMismatch

SWEEP_SCHEMA = "cavicool.sweep.v1"
ROOTS_SCHEMA = "cavicool.roots.v1"
DELTA_OPT_SCHEMA = "cavicool.delta_opt.v1"
COMPARE_SCHEMA = "cavicool.sideband_compare.v1"


@dataclass(frozen=True)
class SweepData:
    params: dict[str, float]
    delta_c_axis: np.ndarray
    Delta_axis: np.ndarray
    n_st: np.ndarray      # (len(Delta_axis), len(delta_c_axis)), NaN where masked
    W: np.ndarray
    status: np.ndarray    # same shape, strings


@dataclass(frozen=True)
class RootsData:
    params: dict[str, float]
    branches: list[str]
    delta_c: np.ndarray
    Delta: np.ndarray


@dataclass(frozen=True)
class CurveData:
    params: dict[str, float]
    Delta: np.ndarray
    delta_opt: np.ndarray  # NaN on pole rows


@dataclass(frozen=True)
class CompareData:
    params: dict[str, float]
    g_tilde: np.ndarray
    n_cavity: np.ndarray
    W_cavity: np.ndarray
    n_sideband: np.ndarray
    W_sideband: np.ndarray
    status: list[str]


def _num(cell: str) -> float:
    return math.nan if cell == "" else float(cell)


def _parse_csv(path: Path):
    comments: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[str]] = []
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            key, sep, value = line.lstrip("# ").partition("=")
            if sep:
                comments[key] = value
        elif not line.strip():
            continue
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return comments, header, rows


def _load(path, expect_schema: str):
    """Return (params, header, row dicts) from CSV or JSON, schema-checked."""
    path = Path(path)
    text_head = path.read_text(errors="replace").lstrip()[:1]
    if text_head == "{":
        payload = json.loads(path.read_text())
        if payload.get("schema") != expect_schema:
            raise SchemaMismatch(
                f"{path}: schema {payload.get('schema')!r}, expected {expect_schema!r}")
        return payload, None, None
    comments, header, rows = _parse_csv(path)
    if comments.get("schema") != expect_schema:
        raise SchemaMismatch(
            f"{path}: schema {comments.get('schema')!r}, expected {expect_schema!r}")
    params = {}
    for key, value in comments.items():
        if key != "schema":
            try:
                params[key] = float(value)
            except ValueError:
                pass
    return params, header, rows


def _ordered_unique(values):
    return list(dict.fromkeys(values))


def read_sweep(path) -> SweepData:
    loaded, header, rows = _load(path, SWEEP_SCHEMA)
    if header is None:  # JSON
        payload = loaded
        params = {k: float(v) for k, v in payload["params"].items()}
        dc_axis = np.asarray(payload["delta_c_axis"], dtype=float)
        D_axis = np.asarray(payload["Delta_axis"], dtype=float)
        records = [(r["delta_c"], r["Delta"],
                    math.nan if r["n_st"] is None else r["n_st"],
                    math.nan if r["W"] is None else r["W"], r["status"])
                   for r in payload["rows"]]
    else:
        params = loaded
        if header != ["delta_c", "Delta", "n_st", "W", "status"]:
            raise SchemaMismatch(f"{path}: unexpected sweep columns {header}")
        records = [(float(r[0]), float(r[1]), _num(r[2]), _num(r[3]), r[4])
                   for r in rows]
        dc_axis = np.asarray(_ordered_unique([r[0] for r in records]))
        D_axis = np.asarray(_ordered_unique([r[1] for r in records]))

    nx, ny = dc_axis.size, D_axis.size
    if len(records) != nx * ny:
        raise SchemaMismatch(
            f"{path}: {len(records)} rows do not fill a {ny}x{nx} grid")
    n_st = np.array([r[2] for r in records], dtype=float).reshape(ny, nx)
    W = np.array([r[3] for r in records], dtype=float).reshape(ny, nx)
    status = np.array([r[4] for r in records], dtype=object).reshape(ny, nx)
    return SweepData(params=params, delta_c_axis=dc_axis, Delta_axis=D_axis,
                     n_st=n_st, W=W, status=status)


def read_roots(path) -> RootsData:
    loaded, header, rows = _load(path, ROOTS_SCHEMA)
    if header is None:
        payload = loaded
        params = {k: float(v) for k, v in payload["params"].items()}
        roots = payload["roots"]
        return RootsData(params=params,
                         branches=[r["branch"] for r in roots],
                         delta_c=np.array([r["delta_c"] for r in roots], dtype=float),
                         Delta=np.array([r["Delta"] for r in roots], dtype=float))
    if header != ["branch", "delta_c", "Delta", "residual"]:
        raise SchemaMismatch(f"{path}: unexpected roots columns {header}")
    return RootsData(params=loaded,
                     branches=[r[0] for r in rows],
                     delta_c=np.array([float(r[1]) for r in rows], dtype=float),
                     Delta=np.array([float(r[2]) for r in rows], dtype=float))


def read_delta_opt(path) -> CurveData:
    loaded, header, rows = _load(path, DELTA_OPT_SCHEMA)
    if header is None:
        payload = loaded
        params = {k: float(v) for k, v in payload["params"].items()}
        return CurveData(
            params=params,
            Delta=np.array([r["Delta"] for r in payload["rows"]], dtype=float),
            delta_opt=np.array([math.nan if r["delta_opt"] is None else r["delta_opt"]
                                for r in payload["rows"]], dtype=float))
    if header != ["Delta", "delta_opt", "status"]:
        raise SchemaMismatch(f"{path}: unexpected curve columns {header}")
    return CurveData(params=loaded,
                     Delta=np.array([float(r[0]) for r in rows], dtype=float),
                     delta_opt=np.array([_num(r[1]) for r in rows], dtype=float))


def read_compare(path) -> CompareData:
    loaded, header, rows = _load(path, COMPARE_SCHEMA)
    if header is None:
        payload = loaded
        params = {k: float(v) for k, v in payload["params"].items()}
        rs = payload["rows"]

        def col(key):
            return np.array([math.nan if r[key] is None else r[key] for r in rs],
                            dtype=float)

        return CompareData(params=params, g_tilde=col("g_tilde"),
                           n_cavity=col("n_st_cavity"), W_cavity=col("W_cavity"),
                           n_sideband=col("n_st_sideband"),
                           W_sideband=col("W_sideband"),
                           status=[r["status"] for r in rs])
    if header != ["g_tilde", "n_st_cavity", "W_cavity", "n_st_sideband",
                  "W_sideband", "status"]:
        raise SchemaMismatch(f"{path}: unexpected comparison columns {header}")
    return CompareData(params=loaded,
                       g_tilde=np.array([float(r[0]) for r in rows]),
                       n_cavity=np.array([_num(r[1]) for r in rows]),
                       W_cavity=np.array([_num(r[2]) for r in rows]),
                       n_sideband=np.array([_num(r[3]) for r in rows]),
                       W_sideband=np.array([_num(r[4]) for r in rows]),
                       status=[r[5] for r in rows])
