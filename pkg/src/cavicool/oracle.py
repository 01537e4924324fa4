"""Independent amplitude verification by direct resolvent inversion.

The zero-order effective Hamiltonian of the driven atom-cavity system
conserves both the excitation number and the phonon number, so its
single-excitation sector at phonon number ``m`` is exactly the 2x2
non-Hermitian block over the basis {|e,0_c;m>, |g,1_c;m>}:

    [[m*nu - Delta   - i*gamma/2,  g_tilde                    ],
     [g_tilde,                     m*nu - delta_c - i*kappa/2 ]]

Each scattering amplitude is rebuilt here operationally: starting from
|g,0_c;n> at energy E = n*nu, apply the relevant coupling operators and the
resolvent (E - H)^-1 restricted to the matching block, then project on the
decaying component.  The resolvents are applied with numeric 2x2 solves and
never reference the characteristic polynomial used by :mod:`cavicool.rates`,
which makes the two routes independent down to roundoff.

Two recoil paths exist per sideband:

* laser recoil -- the first-order laser coupling i*eta*varphi_L*Omega*
  sigma^dagger*(b + b^dagger) promotes |g,0_c;n> directly into the block at
  phonon n+-1; the atomic component gives T_L_gamma, the cavity component
  T_L_kappa.
* cavity recoil -- the zero-order drive Omega puts the system into the block
  at phonon n, and the first-order atom-cavity coupling
  -eta*varphi_c*g_tilde*(a^dagger*sigma + sigma^dagger*a)*(b + b^dagger)
  (which swaps atomic and cavity components) moves it to phonon n+-1;
  projections give T_c_gamma and T_c_kappa.

The carrier amplitude T_S is the atomic component after the first resolvent
alone (its recoil happens on emission).  The common prefactors
eta*sqrt(n+1 or n) and the geometry weights are stripped analytically, so
results compare one-to-one with :func:`cavicool.rates.amplitudes` and remain
defined for every n >= 0, the red sideband at n = 0 included.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularResolvent
from .rates import Amplitudes, Params, amplitudes, characteristic_f

#: |det| floor for treating a resolvent block as invertible.
DET_FLOOR = 1e-14


def excitation_block(p: Params, m: int) -> np.ndarray:
    """2x2 single-excitation block at phonon number ``m`` (includes decay)."""
    return np.array(
        [[m * p.nu - p.Delta - 0.5j * p.gamma, p.g_tilde],
         [p.g_tilde, m * p.nu - p.delta_c - 0.5j * p.kappa]],
        dtype=complex)


def block_determinant(p: Params, m: int, energy: float) -> complex:
    """det(energy*I - block(m)); equals f(energy - m*nu) algebraically."""
    M = energy * np.eye(2) - excitation_block(p, m)
    return complex(np.linalg.det(M))


def _resolvent_apply(p: Params, energy: float, m: int, vec: np.ndarray) -> np.ndarray:
    M = energy * np.eye(2) - excitation_block(p, m)
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    if abs(det) <= DET_FLOOR:
        raise SingularResolvent(
            f"|det| = {abs(det):.3e} <= {DET_FLOOR:.0e} for block at phonon {m}, "
            f"energy {energy}")
    return np.linalg.solve(M, vec)


def oracle_amplitudes(p: Params, n: int = 0) -> Amplitudes:
    """Rebuild all ten amplitudes from resolvent inversions at phonon ``n``.

    The stripped results are independent of ``n`` (the blocks enter only
    through the energy offsets -+nu), which is itself a checked property.

    Raises
    ------
    SingularResolvent
        If any required block is numerically non-invertible.
    """
    energy = n * p.nu
    drive = np.array([p.Omega, 0.0], dtype=complex)     # Omega * |e,0_c;n>
    mid = _resolvent_apply(p, energy, n, drive)
    T_S = complex(mid[0])
    swapped = np.array([mid[1], mid[0]], dtype=complex)  # a^dagger*sigma + sigma^dagger*a

    out: dict[str, complex] = {}
    for step, tag in ((+1, "plus"), (-1, "minus")):
        kick = np.array([1j * p.Omega, 0.0], dtype=complex)
        laser_path = _resolvent_apply(p, energy, n + step, kick)
        cavity_path = _resolvent_apply(p, energy, n + step, -p.g_tilde * swapped)
        out[f"T_L_gamma_{tag}"] = complex(laser_path[0])
        out[f"T_L_kappa_{tag}"] = complex(laser_path[1])
        out[f"T_c_gamma_{tag}"] = complex(cavity_path[0])
        out[f"T_c_kappa_{tag}"] = complex(cavity_path[1])
    return Amplitudes(T_S_plus=T_S, T_S_minus=T_S, **out)


@dataclass(frozen=True)
class TransitionRates:
    """Physical one-step transition rates at phonon number n (not stripped)."""

    gamma_up: float
    gamma_down: float
    kappa_up: float
    kappa_down: float

    @property
    def up(self) -> float:
        return self.gamma_up + self.kappa_up

    @property
    def down(self) -> float:
        return self.gamma_down + self.kappa_down


def oracle_transition_rates(p: Params, n: int = 0) -> TransitionRates:
    """Assemble Gamma(n -> n+-1) per channel from the oracle amplitudes."""
    a = oracle_amplitudes(p, n)
    vL = p.varphi_L
    vc = p.varphi_c
    e2 = p.eta ** 2
    xi_up = float(n + 1)
    xi_down = float(n)
    carrier = p.alpha * abs(a.T_S_plus) ** 2
    return TransitionRates(
        gamma_up=p.gamma * e2 * xi_up
        * (carrier + abs(vL * a.T_L_gamma_plus + vc * a.T_c_gamma_plus) ** 2),
        gamma_down=p.gamma * e2 * xi_down
        * (carrier + abs(vL * a.T_L_gamma_minus + vc * a.T_c_gamma_minus) ** 2),
        kappa_up=p.kappa * e2 * xi_up
        * abs(vL * a.T_L_kappa_plus + vc * a.T_c_kappa_plus) ** 2,
        kappa_down=p.kappa * e2 * xi_down
        * abs(vL * a.T_L_kappa_minus + vc * a.T_c_kappa_minus) ** 2,
    )


def relative_error(x: complex, y: complex) -> float:
    """|x - y| / max(|x|, |y|), defined as 0 when both vanish."""
    scale = max(abs(x), abs(y))
    if scale == 0.0:
        return 0.0
    return abs(x - y) / scale


def compare_with_closed_forms(p: Params, n: int = 0) -> float:
    """Worst relative disagreement over the ten amplitudes at one point."""
    closed = amplitudes(p).as_dict()
    numeric = oracle_amplitudes(p, n).as_dict()
    return max(relative_error(closed[k], numeric[k]) for k in closed)


def random_params(rng: np.random.Generator, f_floor: float = 1e-6) -> Params:
    """Draw a valid random parameter set with min |f| >= f_floor.

    Ranges cover free space through strong coupling and both detuning signs;
    draws whose f comes closer than ``f_floor`` to zero are rejected (there
    the closed forms are legitimately refused).
    """
    while True:
        phi = float(rng.uniform(-1.25, 1.25))
        p = Params(
            gamma=float(rng.uniform(0.01, 2.0)),
            kappa=float(rng.uniform(0.2, 50.0)),
            Omega=float(rng.uniform(0.001, 0.5)),
            g_tilde=float(rng.uniform(0.0, 10.0)),
            phi=phi,
            theta_L=float(rng.uniform(0.0, np.pi)),
            theta_c=float(rng.uniform(0.0, np.pi)),
            Delta=float(rng.uniform(-15.0, 15.0)),
            delta_c=float(rng.uniform(-25.0, 60.0)),
            eta=float(rng.uniform(0.01, 0.25)),
            alpha=float(rng.uniform(0.0, 1.0)),
        )
        fmin = min(abs(characteristic_f(x, p)) for x in (0.0, -p.nu, +p.nu))
        if fmin >= f_floor:
            return p


@dataclass(frozen=True)
class VerificationReport:
    num_sets: int
    phonon_numbers: tuple[int, ...]
    max_rel_error: float
    mean_rel_error: float
    worst_params: Params | None

    def __str__(self) -> str:
        return (f"verified {self.num_sets} parameter sets at phonon numbers "
                f"{self.phonon_numbers}: max relative amplitude error: "
                f"{self.max_rel_error:.3e} (mean {self.mean_rel_error:.3e})")


def verify_amplitudes(num: int = 1000, seed: int = 20240817,
                      f_floor: float = 1e-6,
                      phonon_numbers: tuple[int, ...] = (0, 1, 5)) -> VerificationReport:
    """Compare closed forms against the resolvent oracle on random inputs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_params: Params | None = None
    total = 0.0
    for i in range(num):
        p = random_params(rng, f_floor=f_floor)
        n = int(phonon_numbers[i % len(phonon_numbers)])
        err = compare_with_closed_forms(p, n)
        total += err
        if err > worst:
            worst = err
            worst_params = p
    return VerificationReport(num_sets=num, phonon_numbers=phonon_numbers,
                              max_rel_error=worst, mean_rel_error=total / num,
                              worst_params=worst_params)
