"""Command-line front end: heatmaps and line plots from cavicool outputs."""

from __future__ import annotations

import argparse
import sys

from .errors import PlotInputError
from .render import PlotSpec, render, render_lines


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cavicool-plot",
        description="Render cavicool CSV/JSON outputs (no physics computed here).")
    sub = ap.add_subparsers(dest="command", required=True)

    hp = sub.add_parser("heatmap", help="sweep grid as a heatmap")
    hp.add_argument("input", help="cavicool sweep output (csv or json)")
    hp.add_argument("--quantity", choices=("n_st", "W"), default="n_st")
    scale = hp.add_mutually_exclusive_group()
    scale.add_argument("--log", dest="log", action="store_true", default=None,
                       help="log color scale (default for n_st)")
    scale.add_argument("--linear", dest="log", action="store_false",
                       help="linear color scale (default for W)")
    hp.add_argument("--delta-opt", default=None,
                    help="opt-detuning output to overlay as a dashed curve")
    hp.add_argument("--roots", default=None,
                    help="interference output to overlay as crosses")
    hp.add_argument("--xlim", nargs=2, type=float, default=None)
    hp.add_argument("--ylim", nargs=2, type=float, default=None)
    hp.add_argument("--out", default="heatmap.png")

    lp = sub.add_parser("lines", help="coupling-scan comparison as line plots")
    lp.add_argument("input", help="cavicool compare-sideband output")
    lp.add_argument("--out", default="compare.png")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "heatmap":
            spec = PlotSpec(input_path=args.input, quantity=args.quantity,
                            log_scale=args.log, delta_opt_path=args.delta_opt,
                            roots_path=args.roots, out_path=args.out,
                            xlim=tuple(args.xlim) if args.xlim else None,
                            ylim=tuple(args.ylim) if args.ylim else None)
            result = render(spec)
            print(f"wrote {result.out_path}: {result.blanked_cells} blanked cells, "
                  f"{result.crosses} crosses, {result.curve_points} curve points")
        else:
            result = render_lines(args.input, args.out)
            print(f"wrote {result.out_path}")
        return 0
    except (PlotInputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
