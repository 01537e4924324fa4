import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.optimize import curve_fit

from cavicool import (
    HeatingRegime,
    NonFiniteRates,
    OccupationDistribution,
    Params,
    RateSet,
    TruncationExceeded,
    cooling_rate,
    evolve,
    rates,
    optimal_detuning,
    stationary_distribution,
    steady_state_n,
)

from helpers import strong_coupling_params


def cooling_set(A_plus_gamma=0.4, A_minus_gamma=1.0, A_plus_kappa=0.1, A_minus_kappa=0.5):
    return RateSet.from_channels(A_plus_gamma, A_minus_gamma, A_plus_kappa, A_minus_kappa)


def test_distribution_validation():
    with pytest.raises(ValueError):
        OccupationDistribution(np.array([0.5, 0.6]))
    with pytest.raises(ValueError):
        OccupationDistribution(np.array([1.1, -0.1]))
    with pytest.raises(ValueError):
        OccupationDistribution(np.array([1.0]))


def test_builders():
    d = OccupationDistribution.fock(5, 20)
    assert d.n_mean == 5.0
    assert d.n_max == 20
    assert not d.truncation_limited
    t = OccupationDistribution.thermal(3.0, 200)
    assert_allclose(t.n_mean, 3.0, rtol=1e-9)
    assert OccupationDistribution.thermal(0.0, 10).n_mean == 0.0
    assert OccupationDistribution.ground(10).probs[0] == 1.0


def test_pure_death_exact_mean():
    # with no upward rate the mean decays as n0*exp(-eta^2*A_minus*t) exactly
    r = RateSet.from_channels(0.0, 3.0, 0.0, 0.0)
    eta = 0.1
    traj = evolve(OccupationDistribution.fock(5, 40), r, eta, 100.0, dt=5.0)
    expected = 5.0 * np.exp(-eta ** 2 * 3.0 * traj.times)
    assert_allclose(traj.n_mean, expected, atol=1e-9)
    # converges toward the ground state
    assert traj.probs[-1, 0] > traj.probs[0, 0]


def test_equal_rates_grow_linearly_and_flag_heating():
    r = RateSet.from_channels(2.0, 2.0, 0.0, 0.0)
    eta = 0.1
    with pytest.raises(HeatingRegime):
        steady_state_n(r)
    assert cooling_rate(r, eta) == 0.0
    traj = evolve(OccupationDistribution.fock(2, 200), r, eta, 50.0, dt=5.0)
    assert_allclose(traj.n_mean, 2.0 + eta ** 2 * 2.0 * traj.times, atol=1e-9)


def test_steady_state_simple_values():
    assert steady_state_n(RateSet.from_channels(0.0, 2.0, 0.0, 0.0)) == 0.0
    assert steady_state_n(RateSet.from_channels(1.0, 3.0, 0.0, 0.0)) == pytest.approx(0.5)
    with pytest.raises(HeatingRegime):
        steady_state_n(RateSet.from_channels(3.0, 1.0, 0.0, 0.0))


def test_cooling_rate_simple_values():
    assert cooling_rate(RateSet.from_channels(1.0, 1.0, 0.0, 0.0), 0.1) == 0.0
    assert cooling_rate(RateSet.from_channels(0.0, 2.0, 0.0, 0.0), 0.1) == pytest.approx(0.02)
    assert cooling_rate(RateSet.from_channels(2.0, 0.0, 0.0, 0.0), 0.1) < 0.0


def test_stationary_distribution_is_geometric():
    r = cooling_set()  # A+ = 0.5, A- = 1.5
    d = stationary_distribution(r)
    ratio = d.probs[1:81] / d.probs[0:80]
    assert_allclose(ratio, 1.0 / 3.0, rtol=1e-12)
    assert_allclose(d.n_mean, steady_state_n(r), rtol=1e-12)
    half = stationary_distribution(RateSet.from_channels(1.0, 2.0, 0.0, 0.0))
    assert_allclose(half.n_mean, 1.0, rtol=1e-10)
    assert stationary_distribution(RateSet.from_channels(0.0, 1.0, 0.0, 0.0)).n_mean == 0.0
    with pytest.raises(HeatingRegime):
        stationary_distribution(RateSet.from_channels(1.0, 1.0, 0.0, 0.0))


def test_stationary_mean_matches_formula_up_to_high_ratio():
    rng = np.random.default_rng(8)
    for _ in range(30):
        A_minus = float(rng.uniform(0.5, 5.0))
        ratio = float(rng.uniform(0.05, 0.9))
        r = RateSet.from_channels(ratio * A_minus, A_minus, 0.0, 0.0)
        d = stationary_distribution(r)
        assert abs(d.n_mean - steady_state_n(r)) <= 1e-8 * steady_state_n(r)


def test_stationary_truncation_cap():
    r = RateSet.from_channels(0.999, 1.0, 0.0, 0.0)
    with pytest.raises(TruncationExceeded):
        stationary_distribution(r, n_max=64, hard_cap=128)


def test_evolve_reaches_stationary_distribution():
    r = cooling_set()
    eta = 0.1
    W = cooling_rate(r, eta)
    stat = stationary_distribution(r, 100)
    traj = evolve(OccupationDistribution.thermal(2.0, 100), r, eta, 16.0 / W, dt=1.0 / W)
    tv = 0.5 * np.abs(traj.probs[-1][: stat.probs.size] - stat.probs).sum()
    assert tv <= 1e-6


def test_probability_conservation_at_outputs():
    r = cooling_set()
    traj = evolve(OccupationDistribution.thermal(2.0, 80), r, 0.1, 500.0, dt=10.0)
    assert np.max(np.abs(traj.probs.sum(axis=1) - 1.0)) <= 1e-10
    assert np.all(traj.probs >= 0.0)


def test_monotone_relaxation_of_mean():
    r = cooling_set()
    eta = 0.1
    W = cooling_rate(r, eta)
    n_st = steady_state_n(r)
    above = evolve(OccupationDistribution.thermal(3.0, 120), r, eta, 10.0 / W, dt=0.25 / W)
    assert above.n_mean[0] > n_st
    assert np.all(np.diff(above.n_mean) <= 1e-9)
    below = evolve(OccupationDistribution.ground(120), r, eta, 10.0 / W, dt=0.25 / W)
    assert np.all(np.diff(below.n_mean) >= -1e-9)
    assert_allclose(below.n_mean[-1], n_st, rtol=1e-3)


def test_output_step_halving_changes_little():
    r = cooling_set()
    W = cooling_rate(r, 0.1)
    coarse = evolve(OccupationDistribution.thermal(3.0, 120), r, 0.1, 10.0 / W, dt=1.0 / W)
    fine = evolve(OccupationDistribution.thermal(3.0, 120), r, 0.1, 10.0 / W, dt=0.5 / W)
    assert abs(coarse.n_mean[-1] - fine.n_mean[-1]) <= 1e-8


def test_relaxation_rate_matches_cooling_rate():
    # mean relaxes exponentially at exactly W toward A+/(A- - A+)
    p = strong_coupling_params(Delta=0.0)
    p = Params(**{**p.__dict__, "delta_c": optimal_detuning(0.0, p)})
    r = rates(p)
    W = cooling_rate(r, p.eta)
    traj = evolve(OccupationDistribution.thermal(3.0, 128), r, p.eta, 6.0 / W, dt=0.1 / W)

    def model(t, amplitude, rate, offset):
        return amplitude * np.exp(-rate * t) + offset

    popt, _ = curve_fit(model, traj.times, traj.n_mean,
                        p0=(traj.n_mean[0] - traj.n_mean[-1], W, traj.n_mean[-1]))
    assert abs(popt[1] - W) <= 0.01 * W


def test_auto_extension_of_ladder():
    # pure birth pushes occupation up the ladder; it must grow on demand
    r = RateSet.from_channels(1.0, 0.0, 0.0, 0.0)
    traj = evolve(OccupationDistribution.fock(0, 16), r, 1.0, 3.0, dt=0.5)
    assert traj.probs.shape[1] > 17
    assert_allclose(traj.n_mean[-1], np.exp(3.0) - 1.0, rtol=1e-6)


def test_truncation_cap_enforced():
    r = RateSet.from_channels(1.0, 0.0, 0.0, 0.0)
    with pytest.raises(TruncationExceeded):
        evolve(OccupationDistribution.fock(0, 16), r, 1.0, 6.0, dt=0.5, hard_cap=32)


def test_non_finite_rates_rejected():
    r = RateSet.from_channels(float("inf"), 0.0, 0.0, 0.0)
    with pytest.raises(NonFiniteRates):
        evolve(OccupationDistribution.fock(0, 16), r, 0.1, 1.0)


def test_evolve_argument_validation():
    r = cooling_set()
    d = OccupationDistribution.fock(0, 16)
    with pytest.raises(ValueError):
        evolve(d, r, -0.1, 1.0)
    with pytest.raises(ValueError):
        evolve(d, r, 0.1, 0.0)
    with pytest.raises(ValueError):
        evolve(d, r, 0.1, 1.0, dt=2.0)
