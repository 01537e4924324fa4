"""Command-line front end.

Subcommands: rates, steady, evolve, sweep, opt-detuning, interference,
compare-sideband, verify.  Physical parameters come from flags or from a
flat key/value JSON config (``--config``); flags override the file.  All
frequencies are in units of the trap frequency.  Exit codes: 0 success,
1 runtime failure, 2 invalid configuration, 3 sweep with more than half of
the grid points failing evaluation.  ``CAVICOOL_THREADS`` caps sweep
parallelism; outputs are deterministic regardless of thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import analysis, dynamics, oracle, output
from .errors import CavicoolError, HeatingRegime, NoRootsFound, PoleAtDelta
from .rates import ALPHA_DIPOLE, Params, amplitudes, rates, validity_check

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_SWEEP_FAILURES = 3


class ConfigError(Exception):
    pass


# name, default (None = required), help
_PARAM_FLAGS = [
    ("gamma", None, "spontaneous decay rate (units of nu)"),
    ("kappa", None, "cavity decay rate (units of nu)"),
    ("Omega", None, "laser Rabi frequency (units of nu)"),
    ("g-tilde", 0.0, "atom-cavity coupling at the trap center (units of nu)"),
    ("phi", 0.0, "trap-center position phase in the mode function (rad)"),
    ("theta-L", 0.0, "laser / motional-axis angle (rad)"),
    ("theta-c", 0.0, "cavity / motional-axis angle (rad)"),
    ("Delta", 0.0, "laser-atom detuning (units of nu)"),
    ("delta-c", 0.0, "laser-cavity detuning (units of nu)"),
    ("eta", 0.1, "Lamb-Dicke parameter"),
    ("alpha", ALPHA_DIPOLE, "angular dispersion of spontaneous emission, in [0,1]"),
]

_DEG_FLAGS = ["phi", "theta-L", "theta-c"]


def _add_common(ap: argparse.ArgumentParser):
    g = ap.add_argument_group("physical parameters (units of the trap frequency)")
    for name, _default, help_text in _PARAM_FLAGS:
        g.add_argument(f"--{name}", type=float, default=None, help=help_text)
    for name in _DEG_FLAGS:
        g.add_argument(f"--{name}-deg", type=float, default=None,
                       help=f"{name} in degrees (instead of --{name})")
    ap.add_argument("--config", type=Path, default=None,
                    help="flat key/value JSON config; flags override file entries")
    ap.add_argument("--out", type=Path, default=None,
                    help="output file (default: stdout)")
    ap.add_argument("--format", choices=("csv", "json"), default="csv",
                    help="output format (default csv)")


def _load_config(path: Path | None) -> dict[str, float]:
    if path is None:
        return {}
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a flat JSON object")
    cfg = {}
    for key, value in raw.items():
        if not isinstance(value, (int, float)):
            raise ConfigError(f"config key {key!r} must be a number, got {value!r}")
        cfg[key.replace("-", "_")] = float(value)
    return cfg


def _resolve_params(args) -> Params:
    cfg = _load_config(args.config)
    known = {name.replace("-", "_") for name, _, _ in _PARAM_FLAGS}
    known |= {f"{name.replace('-', '_')}_deg" for name in _DEG_FLAGS}
    unknown = set(cfg) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    values: dict[str, float] = {}
    for name, default, _ in _PARAM_FLAGS:
        attr = name.replace("-", "_")
        rad = getattr(args, attr)
        deg = getattr(args, f"{attr}_deg", None) if name in _DEG_FLAGS else None
        if rad is not None and deg is not None:
            raise ConfigError(f"--{name} and --{name}-deg are mutually exclusive")
        if rad is None and deg is None:
            rad = cfg.get(attr)
            deg = cfg.get(f"{attr}_deg")
            if rad is not None and deg is not None:
                raise ConfigError(f"config sets both {attr} and {attr}_deg")
        value = math.radians(deg) if deg is not None else rad
        if value is None:
            value = default
        if value is None:
            raise ConfigError(f"missing required parameter --{name}")
        values[attr] = float(value)
    try:
        return Params(**values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _axis(args, prefix: str, what: str) -> np.ndarray:
    lo = getattr(args, f"{prefix}_min")
    hi = getattr(args, f"{prefix}_max")
    steps = getattr(args, f"{prefix}_steps")
    if steps < 1:
        raise ConfigError(f"--{what}-steps must be >= 1")
    if steps == 1:
        if lo != hi:
            raise ConfigError(f"--{what}-steps 1 requires min == max")
        return np.array([lo])
    if not lo < hi:
        raise ConfigError(f"need --{what}-min < --{what}-max")
    return np.linspace(lo, hi, steps)


def _open_out(args):
    if args.out is None:
        return sys.stdout, False
    return open(args.out, "w", newline=""), True


def _emit(args, writer):
    stream, close = _open_out(args)
    try:
        writer(stream)
    finally:
        if close:
            stream.close()


def _resolve_threads() -> int:
    threads = os.cpu_count() or 1
    env = os.environ.get("CAVICOOL_THREADS")
    if env is not None:
        try:
            cap = int(env)
        except ValueError as exc:
            raise ConfigError(f"CAVICOOL_THREADS must be an integer, got {env!r}") from exc
        threads = min(threads, max(1, cap))
    return threads


def _cmd_rates(args) -> int:
    p = _resolve_params(args)
    a = amplitudes(p)
    r = rates(p)
    warnings = validity_check(p, strong_coupling=args.check_strong_coupling)
    if args.out is None and args.format == "csv":
        print(f"parameters: " + " ".join(
            f"{k}={v:g}" for k, v in output.params_dict(p).items()))
        print(f"{'amplitude':<16}{'re':>14}{'im':>14}{'abs':>14}")
        for name, value in a.as_dict().items():
            print(f"{name:<16}{value.real:>14.6g}{value.imag:>14.6g}{abs(value):>14.6g}")
        for name, value in r.as_dict().items():
            print(f"{name} = {value:.6g}")
        for msg in warnings:
            print(f"warning: {msg}", file=sys.stderr)
        return EXIT_OK
    _emit(args, lambda s: output.write_rates(a, r, warnings, p, s, args.format))
    for msg in warnings:
        print(f"warning: {msg}", file=sys.stderr)
    return EXIT_OK


def _cmd_steady(args) -> int:
    p = _resolve_params(args)
    r = rates(p)
    W = dynamics.cooling_rate(r, p.eta)
    try:
        n_st = dynamics.steady_state_n(r)
        status = "ok"
    except HeatingRegime:
        n_st = None
        status = "heating"
    _emit(args, lambda s: output.write_steady(n_st, W, status, p, s, args.format))
    return EXIT_OK


def _cmd_evolve(args) -> int:
    p = _resolve_params(args)
    r = rates(p)
    if args.init == "fock":
        p0 = dynamics.OccupationDistribution.fock(int(args.n0), args.n_max)
    else:
        p0 = dynamics.OccupationDistribution.thermal(args.n0, args.n_max)
    traj = dynamics.evolve(p0, r, p.eta, args.t_final, args.dt)
    _emit(args, lambda s: output.write_trajectory(traj, p, s, args.format))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    p = _resolve_params(args)
    dc_axis = _axis(args, "delta_c", "delta-c")
    D_axis = _axis(args, "Delta", "Delta")
    result = analysis.sweep(p, dc_axis, D_axis, threads=_resolve_threads())
    _emit(args, lambda s: output.write_sweep(result, s, args.format))
    failures = int(result.singular_mask.sum())
    if failures > 0.5 * result.singular_mask.size:
        print(f"error: {failures}/{result.singular_mask.size} grid points "
              f"failed evaluation", file=sys.stderr)
        return EXIT_SWEEP_FAILURES
    return EXIT_OK


def _cmd_opt_detuning(args) -> int:
    p = _resolve_params(args)
    D_axis = _axis(args, "Delta", "Delta")
    table = []
    for Delta in D_axis:
        try:
            table.append((float(Delta), analysis.optimal_detuning(float(Delta), p), "ok"))
        except PoleAtDelta:
            table.append((float(Delta), None, "pole"))
    _emit(args, lambda s: output.write_delta_opt(table, p, s, args.format))
    return EXIT_OK


def _cmd_interference(args) -> int:
    p = _resolve_params(args)
    box = ((args.delta_c_min, args.delta_c_max), (args.Delta_min, args.Delta_max))
    try:
        roots = analysis.find_interference_roots(
            p, search_box=box, seeds=(args.seeds, args.seeds))
    except NoRootsFound as exc:
        print(f"no interference roots: {exc}", file=sys.stderr)
        roots = []
    _emit(args, lambda s: output.write_roots(roots, p, s, args.format))
    return EXIT_OK


def _cmd_compare_sideband(args) -> int:
    p = _resolve_params(args)
    g_axis = _axis(args, "g", "g")
    result = analysis.compare_sideband(p, g_axis)
    _emit(args, lambda s: output.write_compare(result, s, args.format))
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = oracle.verify_amplitudes(num=args.num, seed=args.seed)
    print(report)
    if report.max_rel_error <= args.tol:
        print(f"PASS (tolerance {args.tol:g})")
        return EXIT_OK
    print(f"FAIL (tolerance {args.tol:g})")
    return EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cavicool",
        description="Cooling of a trapped atom driven inside a lossy cavity: "
                    "transition rates, steady state and detuning analysis. "
                    "All frequencies in units of the trap frequency.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("rates", help="amplitudes and rate coefficients at one point")
    _add_common(sp)
    sp.add_argument("--check-strong-coupling", action="store_true",
                    help="also warn unless g_tilde^2/(gamma*kappa) > 1")
    sp.set_defaults(func=_cmd_rates)

    sp = sub.add_parser("steady", help="steady-state occupation and cooling rate")
    _add_common(sp)
    sp.set_defaults(func=_cmd_steady)

    sp = sub.add_parser("evolve", help="integrate the phonon rate equation")
    _add_common(sp)
    sp.add_argument("--t-final", type=float, required=True, help="final time (units 1/nu)")
    sp.add_argument("--dt", type=float, default=None,
                    help="output sampling step (default t-final/200)")
    sp.add_argument("--n0", type=float, default=0.0,
                    help="initial mean occupation (thermal) or Fock index")
    sp.add_argument("--init", choices=("thermal", "fock"), default="thermal",
                    help="initial distribution shape (default thermal)")
    sp.add_argument("--n-max", type=int, default=dynamics.DEFAULT_N_MAX,
                    help="initial ladder truncation (auto-extends)")
    sp.set_defaults(func=_cmd_evolve)

    sp = sub.add_parser("sweep", help="grid over (delta_c, Delta)")
    _add_common(sp)
    sp.add_argument("--delta-c-min", type=float, required=True)
    sp.add_argument("--delta-c-max", type=float, required=True)
    sp.add_argument("--delta-c-steps", type=int, required=True,
                    help="number of delta_c grid points")
    sp.add_argument("--Delta-min", type=float, required=True)
    sp.add_argument("--Delta-max", type=float, required=True)
    sp.add_argument("--Delta-steps", type=int, required=True,
                    help="number of Delta grid points")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("opt-detuning", help="optimal cavity detuning vs Delta")
    _add_common(sp)
    sp.add_argument("--Delta-min", type=float, required=True)
    sp.add_argument("--Delta-max", type=float, required=True)
    sp.add_argument("--Delta-steps", type=int, required=True)
    sp.set_defaults(func=_cmd_opt_detuning)

    sp = sub.add_parser("interference",
                        help="blue-sideband suppression points (detuning pairs)")
    _add_common(sp)
    box = analysis.DEFAULT_SEARCH_BOX
    sp.add_argument("--delta-c-min", type=float, default=box[0][0])
    sp.add_argument("--delta-c-max", type=float, default=box[0][1])
    sp.add_argument("--Delta-min", type=float, default=box[1][0])
    sp.add_argument("--Delta-max", type=float, default=box[1][1])
    sp.add_argument("--seeds", type=int, default=analysis.DEFAULT_SEEDS[0],
                    help="seed grid points per axis (default 40)")
    sp.set_defaults(func=_cmd_interference)

    sp = sub.add_parser("compare-sideband",
                        help="cavity cooling vs free-space sideband baseline")
    _add_common(sp)
    sp.add_argument("--g-min", type=float, required=True)
    sp.add_argument("--g-max", type=float, required=True)
    sp.add_argument("--g-steps", type=int, required=True)
    sp.set_defaults(func=_cmd_compare_sideband)

    sp = sub.add_parser("verify",
                        help="closed forms vs resolvent oracle on random inputs")
    sp.add_argument("--num", type=int, default=1000, help="number of parameter sets")
    sp.add_argument("--seed", type=int, default=20240817)
    sp.add_argument("--tol", type=float, default=1e-10,
                    help="max relative amplitude error to pass")
    sp.set_defaults(func=_cmd_verify)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CavicoolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
