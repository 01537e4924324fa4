"""Phonon-number rate equation: evolution, steady state and cooling rate.

The occupation probabilities obey the linear birth-death chain

    dp_n/dt = -(up_n + down_n) p_n + down_{n+1} p_{n+1} + up_{n-1} p_{n-1}

with up_n = eta**2*(n+1)*A_plus and down_n = eta**2*n*A_minus.  Closed
consequences used throughout:

* the mean obeys d<n>/dt = -W*(<n> - <n>_st) with W = eta**2*(A_minus - A_plus),
* for A_minus > A_plus the stationary distribution is geometric with ratio
  A_plus/A_minus, so <n>_st = A_plus/(A_minus - A_plus),
* for A_minus <= A_plus no stationary state exists (heating regime).

Integration uses classical Runge-Kutta with step doubling; the accepted-step
criterion is the total-variation difference between one full and two half
steps.  Runge-Kutta steps preserve the total probability identically (the
generator's columns sum to zero), so conservation holds to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HeatingRegime, NonFiniteRates, TruncationExceeded
from .rates import RateSet

#: Occupation allowed at the top ladder state before truncation is inadequate.
TRUNCATION_TOL = 1e-8
#: Hard cap on the auto-extended ladder size.
HARD_CAP = 4096
#: Default truncation.
DEFAULT_N_MAX = 200

_CONSERVATION_TOL = 1e-10
_NEGATIVE_TOL = 1e-9


@dataclass(frozen=True)
class OccupationDistribution:
    """Probabilities p_n over phonon numbers n = 0..N_max."""

    probs: np.ndarray

    def __post_init__(self):
        q = np.array(self.probs, dtype=float, copy=True)
        if q.ndim != 1 or q.size < 2:
            raise ValueError("probs must be a 1-D vector with at least two entries")
        if np.any(q < 0.0):
            raise ValueError("occupation probabilities must be non-negative")
        total = float(q.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "probs", q)

    @property
    def n_max(self) -> int:
        return self.probs.size - 1

    @property
    def n_mean(self) -> float:
        return float(np.arange(self.probs.size) @ self.probs)

    @property
    def truncation_limited(self) -> bool:
        """True when weight at the top state makes the truncation inadequate."""
        return bool(self.probs[-1] >= TRUNCATION_TOL)

    @classmethod
    def fock(cls, n: int, n_max: int = DEFAULT_N_MAX) -> "OccupationDistribution":
        if not 0 <= n <= n_max:
            raise ValueError(f"need 0 <= n <= n_max, got n={n}, n_max={n_max}")
        q = np.zeros(n_max + 1)
        q[n] = 1.0
        return cls(q)

    @classmethod
    def ground(cls, n_max: int = DEFAULT_N_MAX) -> "OccupationDistribution":
        return cls.fock(0, n_max)

    @classmethod
    def thermal(cls, n_mean: float, n_max: int = DEFAULT_N_MAX) -> "OccupationDistribution":
        """Truncated geometric (thermal) distribution with the given mean."""
        if n_mean < 0.0:
            raise ValueError("n_mean must be non-negative")
        if n_mean == 0.0:
            return cls.fock(0, n_max)
        ratio = n_mean / (1.0 + n_mean)
        q = ratio ** np.arange(n_max + 1)
        q /= q.sum()
        return cls(q)


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution of the rate equation on a uniform output grid."""

    times: np.ndarray
    probs: np.ndarray  # shape (len(times), ladder size)

    @property
    def n_mean(self) -> np.ndarray:
        return self.probs @ np.arange(self.probs.shape[1])

    def distribution(self, i: int) -> OccupationDistribution:
        return OccupationDistribution(self.probs[i])

    @property
    def final(self) -> OccupationDistribution:
        return self.distribution(-1)


def _transition_rates(size: int, eta: float, A_plus: float, A_minus: float):
    n = np.arange(size, dtype=float)
    up = eta * eta * (n + 1.0) * A_plus
    up[-1] = 0.0  # reflecting truncation: no flow off the ladder
    down = eta * eta * n * A_minus
    return up, down


class _ChainIntegrator:
    """Adaptive RK4 (step doubling, total-variation step control)."""

    def __init__(self, y: np.ndarray, eta: float, A_plus: float, A_minus: float,
                 step_tol: float, hard_cap: int):
        self.y = y
        self.eta = eta
        self.A_plus = A_plus
        self.A_minus = A_minus
        self.step_tol = step_tol
        self.hard_cap = hard_cap
        self.up, self.down = _transition_rates(y.size, eta, A_plus, A_minus)
        self._set_step_bounds()
        self.h = self.h_cap if math.isfinite(self.h_cap) else math.inf

    def _set_step_bounds(self):
        # Explicit RK4 is stable on the real axis out to ~2.8/|lambda|; the
        # generator's spectral radius is below twice the fastest exit rate,
        # so cap h safely inside that bound (else the controller would ride
        # the stability edge and pollute small components).
        rate_scale = float(np.max(self.up + self.down))
        self.h_cap = 1.2 / rate_scale if rate_scale > 0.0 else math.inf

    def _rhs(self, y: np.ndarray) -> np.ndarray:
        out = -(self.up + self.down) * y
        out[:-1] += self.down[1:] * y[1:]
        out[1:] += self.up[:-1] * y[:-1]
        return out

    def _rk4(self, y: np.ndarray, h: float) -> np.ndarray:
        k1 = self._rhs(y)
        k2 = self._rhs(y + 0.5 * h * k1)
        k3 = self._rhs(y + 0.5 * h * k2)
        k4 = self._rhs(y + h * k3)
        return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    def _extend_if_needed(self):
        if self.y[-1] < TRUNCATION_TOL:
            return
        size = self.y.size
        if size - 1 >= self.hard_cap:
            raise TruncationExceeded(
                f"p[{size - 1}] = {self.y[-1]:.3e} >= {TRUNCATION_TOL:.0e} "
                f"at the hard cap N_max = {self.hard_cap}")
        new_top = min(2 * (size - 1), self.hard_cap)
        grown = np.zeros(new_top + 1)
        grown[:size] = self.y
        self.y = grown
        self.up, self.down = _transition_rates(
            self.y.size, self.eta, self.A_plus, self.A_minus)
        self._set_step_bounds()
        self.h = min(self.h, self.h_cap)

    def advance(self, t0: float, t1: float):
        t = t0
        span = t1 - t0
        h_min = 1e-12 * max(span, 1.0)
        while t < t1 - 1e-14 * max(t1, 1.0):
            h = min(self.h, t1 - t)
            full = self._rk4(self.y, h)
            half = self._rk4(self._rk4(self.y, 0.5 * h), 0.5 * h)
            err = 0.5 * float(np.abs(full - half).sum())
            if err <= self.step_tol or h <= h_min:
                if h <= h_min and err > self.step_tol:
                    raise RuntimeError("integration step size underflow")
                t += h
                self.y = half
                # RK steps conserve the total exactly in exact arithmetic;
                # check the per-step roundoff drift before touching the state,
                # then renormalize so it cannot accumulate over long horizons.
                total = float(self.y.sum())
                if abs(total - 1.0) > _CONSERVATION_TOL:
                    raise RuntimeError(
                        f"probability drifted by {total - 1.0:.3e} in one step at t = {t}")
                low = float(self.y.min())
                if low < -_NEGATIVE_TOL:
                    raise RuntimeError(
                        f"integration produced probability {low:.3e} < -{_NEGATIVE_TOL:.0e}")
                if low < 0.0:
                    np.clip(self.y, 0.0, None, out=self.y)
                self.y /= float(self.y.sum())
                self._extend_if_needed()
                growth = 0.9 * (self.step_tol / max(err, 1e-300)) ** 0.2
                self.h = min(h * min(4.0, max(0.5, growth)), self.h_cap)
            else:
                self.h = h * max(0.1, 0.9 * (self.step_tol / err) ** 0.2)


def evolve(p0: OccupationDistribution, r: RateSet, eta: float,
           t_final: float, dt: float | None = None,
           step_tol: float = 1e-11, hard_cap: int = HARD_CAP) -> Trajectory:
    """Integrate the rate equation from ``p0`` and sample every ``dt``.

    ``dt`` only sets the output grid (default t_final/200); internal steps
    are adaptive.  The ladder grows automatically (doubling, up to
    ``hard_cap``) whenever the top-state occupation reaches the truncation
    tolerance; at the cap the run aborts instead of silently reflecting.

    Raises
    ------
    NonFiniteRates
        If the rate coefficients are NaN or infinite.
    TruncationExceeded
        If occupation reaches the top of the ladder at the hard cap.
    """
    if not (math.isfinite(r.A_plus) and math.isfinite(r.A_minus)):
        raise NonFiniteRates(f"A_plus={r.A_plus}, A_minus={r.A_minus}")
    if not eta > 0.0:
        raise ValueError("eta must be positive")
    if not t_final > 0.0:
        raise ValueError("t_final must be positive")
    if dt is None:
        dt = t_final / 200.0
    if not 0.0 < dt <= t_final:
        raise ValueError("need 0 < dt <= t_final")

    n_out = max(1, round(t_final / dt))
    times = np.linspace(0.0, t_final, n_out + 1)

    stepper = _ChainIntegrator(p0.probs.copy(), eta, r.A_plus, r.A_minus,
                               step_tol, hard_cap)
    snapshots = [stepper.y.copy()]
    for i in range(n_out):
        stepper.advance(times[i], times[i + 1])
        snapshots.append(stepper.y.copy())

    width = max(s.size for s in snapshots)
    probs = np.zeros((len(snapshots), width))
    for i, s in enumerate(snapshots):
        probs[i, :s.size] = s
    return Trajectory(times=times, probs=probs)


def steady_state_n(r: RateSet) -> float:
    """Stationary mean occupation A_plus/(A_minus - A_plus).

    Raises
    ------
    HeatingRegime
        If A_minus <= A_plus; callers should mask such points.
    """
    if not r.A_minus > r.A_plus:
        raise HeatingRegime(
            f"A_minus = {r.A_minus!r} <= A_plus = {r.A_plus!r}: no steady state")
    return r.A_plus / (r.A_minus - r.A_plus)


def cooling_rate(r: RateSet, eta: float) -> float:
    """Relaxation rate W = eta**2*(A_minus - A_plus); negative means heating."""
    return eta * eta * (r.A_minus - r.A_plus)


def stationary_distribution(r: RateSet, n_max: int = DEFAULT_N_MAX,
                            hard_cap: int = HARD_CAP) -> OccupationDistribution:
    """Normalized geometric stationary distribution, ratio A_plus/A_minus.

    The truncation doubles until the top-state weight clears the adequacy
    tolerance, up to ``hard_cap``.

    Raises
    ------
    HeatingRegime
        If A_minus <= A_plus.
    TruncationExceeded
        If adequacy cannot be reached at the hard cap.
    """
    if not r.A_minus > r.A_plus:
        raise HeatingRegime(
            f"A_minus = {r.A_minus!r} <= A_plus = {r.A_plus!r}: no steady state")
    ratio = r.A_plus / r.A_minus
    mean = ratio / (1.0 - ratio)
    while True:
        q = ratio ** np.arange(n_max + 1, dtype=float)
        q /= q.sum()
        # mean contribution of the discarded untruncated-geometric tail
        # bounds the truncation bias of the normalized mean
        tail_mean = ratio ** (n_max + 1) * (n_max + 1 + mean)
        if q[-1] < TRUNCATION_TOL and tail_mean <= 1e-10 * (1.0 + mean):
            return OccupationDistribution(q)
        if n_max >= hard_cap:
            raise TruncationExceeded(
                f"geometric tail still {q[-1]:.3e} at N_max = {hard_cap}")
        n_max = min(2 * n_max, hard_cap)
