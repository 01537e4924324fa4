"""Secondary acceptance: render real sweep outputs produced by the cavicool CLI.

The plotting package touches the primary component only through its
command-line interface and documented file formats.
"""

import os
import subprocess
import sys

import numpy as np
import pytest

from cavicool_plots import PlotSpec, read_roots, read_sweep, render

QUARTER_PI = repr(np.pi / 4)


def run_cavicool(args):
    env = dict(os.environ, CAVICOOL_THREADS="1")
    proc = subprocess.run([sys.executable, "-m", "cavicool", *args],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="module")
def strong_coupling_outputs(tmp_path_factory):
    """Sweep + optimal-detuning table for the strong-coupling geometry."""
    tmp = tmp_path_factory.mktemp("strong")
    params = ["--gamma", "0.1", "--kappa", "10", "--Omega", "0.03",
              "--g-tilde", "7", "--phi", QUARTER_PI, "--theta-L", QUARTER_PI,
              "--theta-c", QUARTER_PI, "--eta", "0.1"]
    sweep = tmp / "sweep.csv"
    run_cavicool(["sweep", *params,
                  "--delta-c-min", "30", "--delta-c-max", "65",
                  "--delta-c-steps", "36",
                  "--Delta-min", "-2", "--Delta-max", "2", "--Delta-steps", "33",
                  "--out", str(sweep)])
    opt = tmp / "opt.csv"
    run_cavicool(["opt-detuning", *params,
                  "--Delta-min", "-0.4", "--Delta-max", "2", "--Delta-steps", "25",
                  "--out", str(opt)])
    return sweep, opt


@pytest.fixture(scope="module")
def interference_outputs(tmp_path_factory):
    """Sweep + suppression points for the interference geometry."""
    tmp = tmp_path_factory.mktemp("interference")
    params = ["--gamma", "0.01", "--kappa", "10", "--Omega", "0.03",
              "--g-tilde", "2.3", "--phi", QUARTER_PI, "--theta-L", QUARTER_PI,
              "--theta-c", QUARTER_PI, "--eta", "0.1"]
    sweep = tmp / "sweep.csv"
    run_cavicool(["sweep", *params,
                  "--delta-c-min", "0", "--delta-c-max", "12",
                  "--delta-c-steps", "31",
                  "--Delta-min", "-1", "--Delta-max", "1", "--Delta-steps", "26",
                  "--out", str(sweep)])
    roots = tmp / "roots.csv"
    run_cavicool(["interference", *params, "--out", str(roots)])
    return sweep, roots


def test_strong_coupling_heatmap_blanks_heating_and_overlays_curve(
        strong_coupling_outputs, tmp_path):
    sweep, opt = strong_coupling_outputs
    data = read_sweep(sweep)
    heating = int((data.status == "heating").sum())
    assert heating > 0  # this window contains a heating region

    out = tmp_path / "strong.png"
    result = render(PlotSpec(input_path=str(sweep), quantity="n_st",
                             delta_opt_path=str(opt), out_path=str(out)))
    assert out.exists() and out.stat().st_size > 0
    assert result.heating_cells == heating
    assert result.blanked_cells >= heating  # every heating cell is blank
    assert result.curve_points > 0


def test_interference_heatmap_overlays_two_crosses(interference_outputs, tmp_path):
    sweep, roots_file = interference_outputs
    roots = read_roots(roots_file)
    assert len(roots.branches) == 2

    out = tmp_path / "interference.png"
    result = render(PlotSpec(input_path=str(sweep), quantity="n_st",
                             roots_path=str(roots_file), out_path=str(out)))
    assert out.exists() and out.stat().st_size > 0
    assert result.crosses == 2
    # the crosses sit at the root coordinates, inside the rendered window
    for dc, D in zip(roots.delta_c, roots.Delta):
        assert result.x_range[0] <= dc <= result.x_range[1]
        assert result.y_range[0] <= D <= result.y_range[1]


def test_render_from_json_sweep_output(tmp_path):
    params = ["--gamma", "0.1", "--kappa", "10", "--Omega", "0.03",
              "--g-tilde", "7", "--phi", QUARTER_PI, "--theta-L", QUARTER_PI,
              "--theta-c", QUARTER_PI]
    sweep = tmp_path / "sweep.json"
    run_cavicool(["sweep", *params, "--format", "json",
                  "--delta-c-min", "40", "--delta-c-max", "56",
                  "--delta-c-steps", "9",
                  "--Delta-min", "-1.5", "--Delta-max", "1.5",
                  "--Delta-steps", "7", "--out", str(sweep)])
    out = tmp_path / "json_sweep.png"
    result = render(PlotSpec(input_path=str(sweep), out_path=str(out)))
    assert out.exists() and out.stat().st_size > 0
    assert result.x_range == (40.0, 56.0)


def test_compare_sideband_lines_from_cli(tmp_path):
    from cavicool_plots import render_lines

    compare = tmp_path / "compare.csv"
    run_cavicool(["compare-sideband", "--gamma", "0.1", "--kappa", "10",
                  "--Omega", "0.03", "--phi", QUARTER_PI,
                  "--theta-L", QUARTER_PI, "--theta-c", QUARTER_PI,
                  "--g-min", "1", "--g-max", "12", "--g-steps", "12",
                  "--out", str(compare)])
    out = tmp_path / "compare.png"
    result = render_lines(str(compare), str(out))
    assert out.exists() and out.stat().st_size > 0
