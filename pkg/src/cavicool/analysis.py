"""Parameter-space analysis: optimal detuning, interference roots, sweeps.

Everything here builds on :mod:`cavicool.rates`:

* :func:`optimal_detuning` -- the cavity detuning that puts the red-sideband
  transition on an atom-cavity resonance, maximizing the cooling
  coefficient A_minus at fixed atom detuning.
* :func:`find_interference_roots` -- detuning pairs where the laser- and
  cavity-recoil amplitudes of the blue sideband's cavity channel cancel,
  suppressing the dominant heating process.
* :func:`sweep` -- steady-state occupation and cooling rate on a
  (delta_c, Delta) grid with heating and near-singular points masked.
* :func:`compare_sideband` -- cavity-assisted cooling at Delta = 0 against
  the free-space red-sideband baseline, as a function of the coupling.
* :func:`dressed_mixing_angle` -- composition of the single-excitation
  dressed states used to reason about the intermediate scattering states.
"""

from __future__ import annotations

import math
import warnings as _warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import cooling_rate, steady_state_n
from .errors import (
    HeatingRegime,
    NearSingularDenominator,
    NoRootsFound,
    PoleAtDelta,
    UndefinedPhi,
)
from .rates import Params, amplitudes, rates

#: Default root-search box, (delta_c range, Delta range), units of nu.
DEFAULT_SEARCH_BOX = ((-20.0, 60.0), (-10.0, 10.0))
#: Default seed grid for the multi-start Newton search.
DEFAULT_SEEDS = (40, 40)
#: Roots closer than this (units of nu) are merged.
DEDUP_TOL = 1e-4
#: Largest acceptable |varphi_L*T_L_kappa_plus + varphi_c*T_c_kappa_plus|/Omega.
RESIDUAL_TOL = 1e-9

_GEOMETRY_FLOOR = 1e-12


def optimal_detuning(Delta: float, p: Params) -> float:
    """Cavity detuning maximizing A_minus at fixed ``Delta``.

    delta_opt(Delta) = (g_tilde**2 + gamma*kappa/4)/(Delta + nu) - nu

    This choice zeroes the real part of f(+nu), i.e. it places the
    red-sideband response on the dressed atom-cavity resonance.

    Raises
    ------
    PoleAtDelta
        At the pole Delta = -nu (the formula diverges, correctly signed,
        on either side of it).
    """
    denom = Delta + p.nu
    if denom == 0.0:
        raise PoleAtDelta("optimal detuning diverges at Delta = -nu")
    return (p.g_tilde ** 2 + 0.25 * p.gamma * p.kappa) / denom - p.nu


@dataclass(frozen=True)
class InterferenceRoot:
    """A detuning pair suppressing the blue-sideband cavity channel."""

    delta_c: float
    Delta: float
    residual: float  # |varphi_L*T_L_kappa_plus + varphi_c*T_c_kappa_plus|/Omega
    branch: str      # "plus" for the larger delta_c, "minus" for the smaller


@dataclass(frozen=True)
class RootSearch:
    """Outcome of the multi-start Newton search (diagnostics included)."""

    roots: list[InterferenceRoot]
    seeds_total: int
    seeds_converged: int
    seeds_failed: int
    dropped_residual: int


def _suppression_coefficients(p: Params) -> tuple[complex, complex, complex]:
    # P(dc, D) = z*(w*slope + lin) - rhs with z = dc + i*kappa/2, w = D + i*gamma/2
    # is the denominator-cleared coherent blue-sideband cavity-channel sum:
    # varphi_L*T_L_kappa_plus + varphi_c*T_c_kappa_plus
    #   = Omega*g_tilde*P / (f(0)*f(-nu)),
    # and f never vanishes on the real detuning plane while gamma*kappa > 0,
    # so P and the amplitude sum share their zeros exactly.
    slope = 1j * p.varphi_L - p.varphi_c
    lin = p.varphi_c * p.nu
    rhs = p.g_tilde ** 2 * (1j * p.varphi_L + p.varphi_c)
    return slope, lin, rhs


def _suppression_poly(dc: float, D: float, p: Params,
                      coeff: tuple[complex, complex, complex]) -> complex:
    slope, lin, rhs = coeff
    z = dc + 0.5j * p.kappa
    w = D + 0.5j * p.gamma
    return z * (w * slope + lin) - rhs


def _newton_root(seed: tuple[float, float], p: Params,
                 coeff: tuple[complex, complex, complex],
                 tol: float, max_iter: int) -> tuple[float, float, float] | None:
    slope, lin, _ = coeff
    dc, D = seed
    P = _suppression_poly(dc, D, p, coeff)
    for _ in range(max_iter):
        if abs(P) <= tol:
            break
        z = dc + 0.5j * p.kappa
        w = D + 0.5j * p.gamma
        dP_dc = w * slope + lin
        dP_dD = z * slope
        det = dP_dc.real * dP_dD.imag - dP_dD.real * dP_dc.imag
        if abs(det) < 1e-300:
            return None
        step_dc = (-P.real * dP_dD.imag + P.imag * dP_dD.real) / det
        step_D = (P.real * dP_dc.imag - P.imag * dP_dc.real) / det
        lam = 1.0
        for _ in range(40):
            trial_dc = dc + lam * step_dc
            trial_D = D + lam * step_D
            P_trial = _suppression_poly(trial_dc, trial_D, p, coeff)
            if abs(P_trial) < abs(P):
                dc, D, P = trial_dc, trial_D, P_trial
                break
            lam *= 0.5
        else:
            return None
    else:
        return None
    # polish with two undamped steps for Newton-limit accuracy
    for _ in range(2):
        z = dc + 0.5j * p.kappa
        w = D + 0.5j * p.gamma
        dP_dc = w * slope + lin
        dP_dD = z * slope
        det = dP_dc.real * dP_dD.imag - dP_dD.real * dP_dc.imag
        if abs(det) < 1e-300:
            break
        dc += (-P.real * dP_dD.imag + P.imag * dP_dD.real) / det
        D += (P.real * dP_dc.imag - P.imag * dP_dc.real) / det
        P = _suppression_poly(dc, D, p, coeff)
    return dc, D, abs(P)


def search_interference_roots(p: Params,
                              search_box: tuple[tuple[float, float], tuple[float, float]] | None = None,
                              seeds: tuple[int, int] = DEFAULT_SEEDS,
                              dedup_tol: float = DEDUP_TOL,
                              residual_tol: float = RESIDUAL_TOL,
                              max_iter: int = 80) -> RootSearch:
    """Multi-start damped Newton search for blue-sideband suppression points.

    Seeds on a uniform grid over ``search_box`` are iterated on the
    denominator-cleared amplitude sum; non-converging seeds are dropped and
    counted.  Converged points are deduplicated (merged below ``dedup_tol``),
    restricted to the box, and kept only if the actual amplitude-sum residual
    clears ``residual_tol``.  Results are sorted by descending delta_c and
    labeled "plus"/"minus" in that order.
    """
    if not p.Omega > 0.0:
        raise ValueError("interference roots require Omega > 0")
    if not p.g_tilde > 0.0:
        raise ValueError("interference roots require g_tilde > 0")
    if max(abs(p.varphi_L), abs(p.varphi_c)) <= _GEOMETRY_FLOOR:
        raise ValueError("varphi_L and varphi_c are both zero: no recoil at all")

    box = DEFAULT_SEARCH_BOX if search_box is None else search_box
    (dc_lo, dc_hi), (D_lo, D_hi) = box
    if not (dc_lo < dc_hi and D_lo < D_hi):
        raise ValueError(f"degenerate search box {box}")

    coeff = _suppression_coefficients(p)
    tol = 1e-12 * max(1.0, abs(coeff[2]))

    found: list[tuple[float, float, float]] = []
    converged = 0
    failed = 0
    dropped = 0
    for dc0 in np.linspace(dc_lo, dc_hi, seeds[0]):
        for D0 in np.linspace(D_lo, D_hi, seeds[1]):
            hit = _newton_root((float(dc0), float(D0)), p, coeff, tol, max_iter)
            if hit is None:
                failed += 1
                continue
            converged += 1
            dc, D, P_abs = hit
            if not (dc_lo - 1e-9 <= dc <= dc_hi + 1e-9 and D_lo - 1e-9 <= D <= D_hi + 1e-9):
                continue
            for i, (odc, oD, oP) in enumerate(found):
                if math.hypot(dc - odc, D - oD) < dedup_tol:
                    if P_abs < oP:
                        found[i] = (dc, D, P_abs)
                    break
            else:
                found.append((dc, D, P_abs))

    roots: list[InterferenceRoot] = []
    for dc, D, _ in sorted(found, key=lambda t: -t[0]):
        q = replace(p, delta_c=dc, Delta=D)
        a = amplitudes(q)
        residual = abs(p.varphi_L * a.T_L_kappa_plus + p.varphi_c * a.T_c_kappa_plus) / p.Omega
        if residual > residual_tol:
            dropped += 1
            continue
        rank = len(roots)
        branch = ("plus", "minus")[rank] if rank < 2 else f"extra{rank - 1}"
        roots.append(InterferenceRoot(delta_c=dc, Delta=D,
                                      residual=residual, branch=branch))
    return RootSearch(roots=roots, seeds_total=seeds[0] * seeds[1],
                      seeds_converged=converged, seeds_failed=failed,
                      dropped_residual=dropped)


def find_interference_roots(p: Params, **kwargs) -> list[InterferenceRoot]:
    """All isolated blue-sideband suppression points in the search box.

    See :func:`search_interference_roots` for keyword arguments.

    Raises
    ------
    NoRootsFound
        When the search converges nowhere in the box (legitimate whenever
        the interference cannot cancel for this geometry/coupling).
    """
    result = search_interference_roots(p, **kwargs)
    if not result.roots:
        raise NoRootsFound(
            f"no suppression point in the search box "
            f"({result.seeds_converged}/{result.seeds_total} seeds converged)")
    if len(result.roots) != 2:
        _warnings.warn(
            f"expected 0 or 2 interference roots, found {len(result.roots)}; "
            f"parameters may sit on the existence boundary", stacklevel=2)
    return result.roots


@dataclass(frozen=True)
class ExistenceDiagnosis:
    """Outcome of the coarse root-existence threshold plus exact diagnostics.

    ``satisfied`` evaluates the simple threshold inequality
    (phi*g_tilde**2/(kappa*nu) > 1 for phi > 0, or
    g_tilde**2/(kappa*nu*|phi|) > 1 for phi < 0, phi = varphi_L/varphi_c).
    That threshold is only a coarse guide: it disagrees with the actual root
    structure in part of parameter space (it can report False where two
    roots exist).  ``discriminant`` is the exact zero-damping existence
    quantity -- with G = g_tilde**2/(kappa*nu),

        discriminant = G**2 + G*(phi**2 - 1)/(2*phi) - 1/4,

    positive exactly when two suppression points exist at gamma -> 0.  The
    root finder remains authoritative at finite gamma.
    """

    satisfied: bool
    phi: float
    branch: str
    threshold_lhs: float
    discriminant: float
    roots_expected: bool

    def __bool__(self) -> bool:
        return self.satisfied


def existence_condition(p: Params) -> ExistenceDiagnosis:
    """Evaluate the coarse existence threshold for interference roots.

    Raises
    ------
    UndefinedPhi
        When varphi_c = 0 (the geometry ratio is undefined).
    """
    vc = p.varphi_c
    if abs(vc) < _GEOMETRY_FLOOR:
        raise UndefinedPhi("varphi_c = 0: the ratio varphi_L/varphi_c is undefined")
    phi = p.varphi_L / vc
    G = p.g_tilde ** 2 / (p.kappa * p.nu)
    if phi > 0.0:
        branch = "positive-phi"
        lhs = phi * G
    elif phi < 0.0:
        branch = "negative-phi"
        lhs = G / abs(phi)
    else:
        branch = "zero-phi"
        lhs = 0.0
    if phi != 0.0:
        disc = G * G + G * (phi * phi - 1.0) / (2.0 * phi) - 0.25
    else:
        disc = -math.inf
    return ExistenceDiagnosis(satisfied=lhs > 1.0, phi=phi, branch=branch,
                              threshold_lhs=lhs, discriminant=disc,
                              roots_expected=disc > 0.0)


@dataclass(frozen=True)
class SweepResult:
    """Steady state and cooling rate over a (delta_c, Delta) grid.

    Matrices are indexed [i, j] with i over ``Delta_axis`` and j over
    ``delta_c_axis``.  ``n_st`` is NaN wherever ``heating_mask`` or
    ``singular_mask`` is set; ``W`` keeps its (negative) value on heating
    points and is NaN only on singular ones.  The two masks are disjoint.
    """

    delta_c_axis: np.ndarray
    Delta_axis: np.ndarray
    n_st: np.ndarray
    W: np.ndarray
    heating_mask: np.ndarray
    singular_mask: np.ndarray
    params: Params

    def status(self, i: int, j: int) -> str:
        if self.singular_mask[i, j]:
            return "singular"
        if self.heating_mask[i, j]:
            return "heating"
        return "ok"


def _sweep_row(p: Params, delta_c_axis: np.ndarray, Delta: float):
    n = delta_c_axis.size
    n_st = np.full(n, np.nan)
    W = np.full(n, np.nan)
    heating = np.zeros(n, dtype=bool)
    singular = np.zeros(n, dtype=bool)
    for j, dc in enumerate(delta_c_axis):
        q = replace(p, delta_c=float(dc), Delta=float(Delta))
        try:
            r = rates(q)
        except NearSingularDenominator:
            singular[j] = True
            continue
        W[j] = cooling_rate(r, p.eta)
        if r.A_minus <= r.A_plus:
            heating[j] = True
        else:
            n_st[j] = steady_state_n(r)
    return n_st, W, heating, singular


def _validate_axis(axis: np.ndarray, name: str):
    if axis.ndim != 1 or axis.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-D axis")
    if not np.all(np.isfinite(axis)):
        raise ValueError(f"{name} must be finite")
    if axis.size > 1 and not np.all(np.diff(axis) > 0.0):
        raise ValueError(f"{name} must be strictly increasing")


def sweep(p: Params, delta_c_axis, Delta_axis, threads: int = 1) -> SweepResult:
    """Evaluate rates, <n>_st and W on the grid; mask heating and singular points.

    Grid points are independent; with ``threads > 1`` rows are evaluated on a
    thread pool but always assembled in axis order, so the result is
    deterministic regardless of ``threads``.
    """
    dc = np.asarray(delta_c_axis, dtype=float)
    DD = np.asarray(Delta_axis, dtype=float)
    _validate_axis(dc, "delta_c_axis")
    _validate_axis(DD, "Delta_axis")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda D: _sweep_row(p, dc, D), DD))
    else:
        rows = [_sweep_row(p, dc, D) for D in DD]

    n_st = np.vstack([r[0] for r in rows])
    W = np.vstack([r[1] for r in rows])
    heating = np.vstack([r[2] for r in rows])
    singular = np.vstack([r[3] for r in rows])
    return SweepResult(delta_c_axis=dc, Delta_axis=DD, n_st=n_st, W=W,
                       heating_mask=heating, singular_mask=singular, params=p)


@dataclass(frozen=True)
class SidebandComparison:
    """Cavity-assisted cooling at Delta = 0 versus the free-space baseline.

    Cavity columns are evaluated at delta_c = optimal_detuning(0) for each
    coupling on the axis; the baseline columns (free space, Delta = -nu) do
    not depend on the coupling and are constant.  ``n_cavity`` is NaN where
    the cavity branch heats; ``cavity_status`` records ok/heating/singular
    per point.
    """

    g_tilde_axis: np.ndarray
    n_cavity: np.ndarray
    W_cavity: np.ndarray
    n_sideband: np.ndarray
    W_sideband: np.ndarray
    cavity_status: tuple[str, ...]
    params: Params


def compare_sideband(p: Params, g_tilde_axis) -> SidebandComparison:
    """Tabulate cavity cooling (Delta=0, delta_c=delta_opt(0)) against
    free-space red-sideband cooling (Delta=-nu, g_tilde=0) over a coupling axis."""
    g_axis = np.asarray(g_tilde_axis, dtype=float)
    _validate_axis(g_axis, "g_tilde_axis")

    baseline = replace(p, g_tilde=0.0, phi=0.0, Delta=-p.nu, delta_c=0.0)
    r_side = rates(baseline)
    W_side = cooling_rate(r_side, p.eta)
    try:
        n_side = steady_state_n(r_side)
    except HeatingRegime:
        n_side = math.nan

    n = g_axis.size
    n_cav = np.full(n, np.nan)
    W_cav = np.full(n, np.nan)
    status: list[str] = []
    for i, g in enumerate(g_axis):
        q = replace(p, g_tilde=float(g), Delta=0.0)
        q = replace(q, delta_c=optimal_detuning(0.0, q))
        try:
            r = rates(q)
        except NearSingularDenominator:
            status.append("singular")
            continue
        W_cav[i] = cooling_rate(r, p.eta)
        if r.A_minus <= r.A_plus:
            status.append("heating")
        else:
            n_cav[i] = steady_state_n(r)
            status.append("ok")
    return SidebandComparison(g_tilde_axis=g_axis, n_cavity=n_cav, W_cavity=W_cav,
                              n_sideband=np.full(n, n_side),
                              W_sideband=np.full(n, W_side),
                              cavity_status=tuple(status), params=p)


@dataclass(frozen=True)
class DressedMixing:
    """Composition of the single-excitation dressed states at one detuning.

    The upper state is cos(theta)|e,0_c> + sin(theta)|g,1_c>, the lower one
    -sin(theta)|e,0_c> + cos(theta)|g,1_c>.  ``Delta_c = Delta - delta_c``
    is the cavity-atom detuning in this library's sign convention.
    """

    theta: float
    sin_theta: float
    cos_theta: float
    Delta_c: float


def dressed_mixing_angle(p: Params) -> DressedMixing:
    """Mixing angle tan(theta) = g_tilde/(-Delta_c/2 + sqrt(g_tilde**2 + Delta_c**2/4)).

    Decoupling limits (g_tilde = 0): theta = pi/2 for Delta_c > 0 (upper
    state is the cavity excitation) and theta = 0 for Delta_c <= 0 (upper
    state is the atomic excitation), matching the g_tilde -> 0 limit of the
    formula away from Delta_c = 0.
    """
    Delta_c = p.Delta - p.delta_c
    if p.g_tilde == 0.0:
        theta = 0.5 * math.pi if Delta_c > 0.0 else 0.0
    else:
        theta = math.atan2(p.g_tilde,
                           -0.5 * Delta_c + math.hypot(p.g_tilde, 0.5 * Delta_c))
    return DressedMixing(theta=theta, sin_theta=math.sin(theta),
                         cos_theta=math.cos(theta), Delta_c=Delta_c)
