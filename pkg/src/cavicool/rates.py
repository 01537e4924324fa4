"""Closed-form scattering amplitudes and sideband heating/cooling coefficients.

Model: a two-level atom held in a harmonic trap (frequency ``nu``), driven by
a weak laser at Rabi frequency ``Omega`` and coupled with strength ``g_tilde``
to one damped mode of an optical resonator.  The excited state decays at rate
``gamma``, the cavity field at rate ``kappa``.  Scattering of a laser photon
into the vacuum -- by spontaneous emission (gamma channel) or through the
cavity mirrors (kappa channel) -- can add or remove one vibrational quantum.
To first order in the Lamb-Dicke parameter ``eta`` and in ``Omega`` the
transition rates are

    Gamma(n -> n+1) = eta**2 * (n+1) * A_plus
    Gamma(n -> n-1) = eta**2 *  n    * A_minus

with per-channel coefficients

    A_pm_gamma = gamma * (alpha*|T_S|**2
                          + |varphi_L*T_L_gamma_pm + varphi_c*T_c_gamma_pm|**2)
    A_pm_kappa = kappa * |varphi_L*T_L_kappa_pm + varphi_c*T_c_kappa_pm|**2

Five processes contribute per sideband: carrier excitation with recoil on
emission (T_S), laser-recoil paths closing by spontaneous emission or by
cavity decay (T_L_gamma, T_L_kappa), and cavity-recoil paths for the same two
decay channels (T_c_gamma, T_c_kappa).  Laser- and cavity-recoil paths end in
the same final state, so they are summed coherently *inside* the modulus;
their interference can suppress or enhance individual sidebands.

Every amplitude carries one or two factors of 1/f, where

    f(x) = (x + delta_c + i*kappa/2) * (x + Delta + i*gamma/2) - g_tilde**2

is the characteristic polynomial of the single-excitation block of the
atom-cavity system.  The "+" (blue, n -> n+1) amplitudes sample f at -nu, the
"-" (red, n -> n-1) ones at +nu; in free space this puts the red sideband on
resonance at Delta = -nu, the usual sideband-cooling condition.

All frequencies are expressed in units of the trap frequency (``nu = 1``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NearSingularDenominator

#: Angular dispersion of spontaneous emission for a linear dipole pattern.
ALPHA_DIPOLE = 2.0 / 5.0
#: Angular dispersion for isotropic emission.
ALPHA_ISOTROPIC = 1.0 / 3.0

#: Floor on |f| (units nu**2) below which amplitudes are refused.
EPS_F = 1e-12

#: Floor on |cos(phi)| when g_tilde > 0 (tan(phi) pole guard).
COS_PHI_FLOOR = 1e-12


@dataclass(frozen=True, kw_only=True)
class Params:
    """Physical parameter set; every frequency in units of the trap frequency.

    Attributes
    ----------
    nu:
        Trap frequency, the frequency unit (leave at 1).
    gamma, kappa:
        Spontaneous and cavity decay rates, strictly positive.
    Omega:
        Laser Rabi frequency (>= 0; every amplitude is linear in it).
    g_tilde:
        Atom-cavity coupling at the trap center (>= 0).
    phi:
        Position phase of the trap center in the cavity mode function.
    theta_L, theta_c:
        Angles of laser and cavity wave vectors with the motional axis.
    Delta:
        Laser-atom detuning omega_L - omega_0.
    delta_c:
        Laser-cavity detuning omega_L - omega_c.
    eta:
        Lamb-Dicke parameter (> 0; values above 0.25 flagged by
        :func:`validity_check`, not rejected).
    alpha:
        Angular dispersion of the atomic recoil on spontaneous emission,
        in [0, 1].  Defaults to the linear-dipole value 2/5; an isotropic
        preset :data:`ALPHA_ISOTROPIC` is provided.
    """

    gamma: float
    kappa: float
    Omega: float
    nu: float = 1.0
    g_tilde: float = 0.0
    phi: float = 0.0
    theta_L: float = 0.0
    theta_c: float = 0.0
    Delta: float = 0.0
    delta_c: float = 0.0
    eta: float = 0.1
    alpha: float = ALPHA_DIPOLE

    def __post_init__(self):
        if not self.nu > 0.0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be strictly positive, got {self.gamma}")
        if not self.kappa > 0.0:
            raise ValueError(f"kappa must be strictly positive, got {self.kappa}")
        if self.Omega < 0.0:
            raise ValueError(f"Omega must be non-negative, got {self.Omega}")
        if self.g_tilde < 0.0:
            raise ValueError(f"g_tilde must be non-negative, got {self.g_tilde}")
        if not self.eta > 0.0:
            raise ValueError(f"eta must be strictly positive, got {self.eta}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        for name in ("nu", "gamma", "kappa", "Omega", "g_tilde", "phi",
                     "theta_L", "theta_c", "Delta", "delta_c", "eta", "alpha"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.g_tilde > 0.0 and abs(math.cos(self.phi)) <= COS_PHI_FLOOR:
            raise ValueError(
                f"cos(phi) = {math.cos(self.phi):.3e} is at a pole of tan(phi); "
                "the trap sits on a node of the mode function")

    @property
    def varphi_L(self) -> float:
        """Geometry weight of laser recoil, cos(theta_L)."""
        return math.cos(self.theta_L)

    @property
    def varphi_c(self) -> float:
        """Geometry weight of cavity recoil, cos(theta_c)*tan(phi)."""
        return math.cos(self.theta_c) * math.tan(self.phi)

    @property
    def g_bare(self) -> float:
        """Vacuum Rabi coupling at a mode antinode, g_tilde/cos(phi) (display only)."""
        return self.g_tilde / math.cos(self.phi)

    @property
    def in_lamb_dicke_regime(self) -> bool:
        return self.eta <= 0.25


@dataclass(frozen=True)
class Amplitudes:
    """The ten sideband transition amplitudes (complex, linear in Omega).

    ``plus`` amplitudes raise the phonon number by one, ``minus`` lower it.
    ``T_S`` is the carrier amplitude whose recoil happens on emission (it
    enters the rates as alpha*|T_S|**2 and has no sideband dependence, so
    the two entries are identical).  ``T_L_*`` are laser-recoil paths and
    ``T_c_*`` cavity-recoil paths; the ``gamma``/``kappa`` suffix names the
    decay channel that closes the scattering event.
    """

    T_S_plus: complex
    T_S_minus: complex
    T_L_gamma_plus: complex
    T_L_gamma_minus: complex
    T_L_kappa_plus: complex
    T_L_kappa_minus: complex
    T_c_gamma_plus: complex
    T_c_gamma_minus: complex
    T_c_kappa_plus: complex
    T_c_kappa_minus: complex

    _FIELDS = ("T_S_plus", "T_S_minus",
               "T_L_gamma_plus", "T_L_gamma_minus",
               "T_L_kappa_plus", "T_L_kappa_minus",
               "T_c_gamma_plus", "T_c_gamma_minus",
               "T_c_kappa_plus", "T_c_kappa_minus")

    def as_dict(self) -> dict[str, complex]:
        return {name: getattr(self, name) for name in self._FIELDS}


@dataclass(frozen=True)
class RateSet:
    """Per-channel heating (+) and cooling (-) coefficients, units of frequency.

    Gamma(n -> n+1) = eta**2*(n+1)*A_plus and Gamma(n -> n-1) = eta**2*n*A_minus.
    All six fields are non-negative and scale with Omega**2.
    """

    A_plus_gamma: float
    A_minus_gamma: float
    A_plus_kappa: float
    A_minus_kappa: float
    A_plus: float
    A_minus: float

    def __post_init__(self):
        for name in ("A_plus_gamma", "A_minus_gamma", "A_plus_kappa",
                     "A_minus_kappa", "A_plus", "A_minus"):
            v = getattr(self, name)
            if math.isnan(v) or v < 0.0:
                raise ValueError(f"{name} must be non-negative, got {v}")
        scale = max(self.A_plus, self.A_minus, 1.0)
        if abs(self.A_plus - (self.A_plus_gamma + self.A_plus_kappa)) > 1e-12 * scale:
            raise ValueError("A_plus is not the sum of its channel parts")
        if abs(self.A_minus - (self.A_minus_gamma + self.A_minus_kappa)) > 1e-12 * scale:
            raise ValueError("A_minus is not the sum of its channel parts")

    @classmethod
    def from_channels(cls, A_plus_gamma: float, A_minus_gamma: float,
                      A_plus_kappa: float, A_minus_kappa: float) -> "RateSet":
        return cls(A_plus_gamma=A_plus_gamma, A_minus_gamma=A_minus_gamma,
                   A_plus_kappa=A_plus_kappa, A_minus_kappa=A_minus_kappa,
                   A_plus=A_plus_gamma + A_plus_kappa,
                   A_minus=A_minus_gamma + A_minus_kappa)

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name)
                for name in ("A_plus_gamma", "A_minus_gamma", "A_plus_kappa",
                             "A_minus_kappa", "A_plus", "A_minus")}


def characteristic_f(x: float, p: Params) -> complex:
    """Characteristic polynomial of the driven single-excitation block.

    f(x) = (x + delta_c + i*kappa/2)*(x + Delta + i*gamma/2) - g_tilde**2

    Its zeros are the complex dressed-state poles of the coupled atom-cavity
    response; they never fall on the real detuning plane while gamma*kappa > 0.
    """
    zc = x + p.delta_c + 0.5j * p.kappa
    za = x + p.Delta + 0.5j * p.gamma
    return zc * za - p.g_tilde * p.g_tilde


def amplitudes(p: Params) -> Amplitudes:
    """Evaluate all ten transition amplitudes at the parameter point ``p``.

    Sign convention: "plus" amplitudes (n -> n+1) carry f(-nu), "minus"
    ones (n -> n-1) carry f(+nu).

    Raises
    ------
    NearSingularDenominator
        If |f| <= EPS_F at any of the three required arguments; there the
        first-order treatment in Omega breaks down and the closed forms
        would return arbitrarily large values.
    """
    f0 = characteristic_f(0.0, p)
    f_blue = characteristic_f(-p.nu, p)
    f_red = characteristic_f(+p.nu, p)
    smallest = min(abs(f0), abs(f_blue), abs(f_red))
    if smallest <= EPS_F:
        raise NearSingularDenominator(
            f"|f| = {smallest:.3e} <= {EPS_F:.0e} nu^2 at "
            f"delta_c={p.delta_c}, Delta={p.Delta}")

    zc = p.delta_c + 0.5j * p.kappa
    g2 = p.g_tilde * p.g_tilde
    T_S = p.Omega * zc / f0
    return Amplitudes(
        T_S_plus=T_S,
        T_S_minus=T_S,
        T_L_gamma_plus=1j * p.Omega * (p.delta_c - p.nu + 0.5j * p.kappa) / f_blue,
        T_L_gamma_minus=1j * p.Omega * (p.delta_c + p.nu + 0.5j * p.kappa) / f_red,
        T_L_kappa_plus=1j * p.Omega * p.g_tilde / f_blue,
        T_L_kappa_minus=1j * p.Omega * p.g_tilde / f_red,
        T_c_gamma_plus=-p.Omega * g2 * (2.0 * p.delta_c - p.nu + 1j * p.kappa) / (f0 * f_blue),
        T_c_gamma_minus=-p.Omega * g2 * (2.0 * p.delta_c + p.nu + 1j * p.kappa) / (f0 * f_red),
        T_c_kappa_plus=-p.Omega * p.g_tilde
        * ((p.Delta - p.nu + 0.5j * p.gamma) * zc + g2) / (f0 * f_blue),
        T_c_kappa_minus=-p.Omega * p.g_tilde
        * ((p.Delta + p.nu + 0.5j * p.gamma) * zc + g2) / (f0 * f_red),
    )


def rates(p: Params) -> RateSet:
    """Heating/cooling coefficients A_pm assembled from the amplitudes.

    The laser- and cavity-recoil amplitudes of the same decay channel add
    coherently inside a modulus squared; only the carrier diffusion term
    alpha*|T_S|**2 adds incoherently.

    Raises
    ------
    NearSingularDenominator
        Propagated from :func:`amplitudes`.
    """
    a = amplitudes(p)
    vL = p.varphi_L
    vc = p.varphi_c
    carrier = p.alpha * abs(a.T_S_plus) ** 2
    A_plus_gamma = p.gamma * (carrier + abs(vL * a.T_L_gamma_plus + vc * a.T_c_gamma_plus) ** 2)
    A_minus_gamma = p.gamma * (carrier + abs(vL * a.T_L_gamma_minus + vc * a.T_c_gamma_minus) ** 2)
    A_plus_kappa = p.kappa * abs(vL * a.T_L_kappa_plus + vc * a.T_c_kappa_plus) ** 2
    A_minus_kappa = p.kappa * abs(vL * a.T_L_kappa_minus + vc * a.T_c_kappa_minus) ** 2
    return RateSet.from_channels(A_plus_gamma, A_minus_gamma,
                                 A_plus_kappa, A_minus_kappa)


def validity_check(p: Params, strong_coupling: bool = False) -> list[str]:
    """Soft sanity warnings for a parameter point; never raises.

    The number-state rate description assumes nu >> eta*Omega*|varphi_L| and
    nu >> eta*|g_tilde*varphi_c|; both are flagged at the (conventional)
    threshold of 0.1*nu.  eta > 0.25 flags a marginal Lamb-Dicke expansion.
    With ``strong_coupling=True`` the check g_tilde**2/(gamma*kappa) > 1 is
    added for callers that rely on strong-coupling arguments.
    """
    warnings: list[str] = []
    lim = 0.1 * p.nu
    laser = p.eta * p.Omega * abs(p.varphi_L)
    if laser > lim:
        warnings.append(
            f"laser-mechanical-coupling: eta*Omega*|varphi_L| = {laser:.3g} nu "
            f"exceeds 0.1 nu; coherences between number states may matter")
    cavity = p.eta * p.g_tilde * abs(p.varphi_c)
    if cavity > lim:
        warnings.append(
            f"cavity-mechanical-coupling: eta*|g_tilde*varphi_c| = {cavity:.3g} nu "
            f"exceeds 0.1 nu; coherences between number states may matter")
    if p.eta > 0.25:
        warnings.append(
            f"lamb-dicke: eta = {p.eta:.3g} > 0.25; first-order expansion marginal")
    if strong_coupling:
        ratio = p.g_tilde ** 2 / (p.gamma * p.kappa)
        if ratio <= 1.0:
            warnings.append(
                f"strong-coupling: g_tilde^2/(gamma*kappa) = {ratio:.3g} <= 1; "
                f"strong-coupling arguments do not apply")
    return warnings
