"""Cooling of a laser-driven trapped atom coupled to a lossy optical cavity.

Closed-form sideband transition amplitudes and heating/cooling coefficients,
phonon rate-equation dynamics, detuning analysis (optimal-detuning curve,
interference suppression points, 2-D sweeps) and an independent
resolvent-based verification oracle.  All frequencies are expressed in units
of the trap frequency.
"""

from .analysis import (
    DEFAULT_SEARCH_BOX,
    DressedMixing,
    ExistenceDiagnosis,
    InterferenceRoot,
    RootSearch,
    SidebandComparison,
    SweepResult,
    compare_sideband,
    dressed_mixing_angle,
    existence_condition,
    find_interference_roots,
    optimal_detuning,
    search_interference_roots,
    sweep,
)
from .dynamics import (
    DEFAULT_N_MAX,
    HARD_CAP,
    TRUNCATION_TOL,
    OccupationDistribution,
    Trajectory,
    cooling_rate,
    evolve,
    stationary_distribution,
    steady_state_n,
)
from .errors import (
    CavicoolError,
    HeatingRegime,
    NearSingularDenominator,
    NoRootsFound,
    NonFiniteRates,
    PoleAtDelta,
    SingularResolvent,
    TruncationExceeded,
    UndefinedPhi,
)
from .oracle import (
    TransitionRates,
    VerificationReport,
    compare_with_closed_forms,
    excitation_block,
    oracle_amplitudes,
    oracle_transition_rates,
    verify_amplitudes,
)
from .rates import (
    ALPHA_DIPOLE,
    ALPHA_ISOTROPIC,
    EPS_F,
    Amplitudes,
    Params,
    RateSet,
    amplitudes,
    characteristic_f,
    rates,
    validity_check,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_DIPOLE", "ALPHA_ISOTROPIC", "EPS_F",
    "Amplitudes", "Params", "RateSet",
    "amplitudes", "characteristic_f", "rates", "validity_check",
    "OccupationDistribution", "Trajectory",
    "DEFAULT_N_MAX", "HARD_CAP", "TRUNCATION_TOL",
    "evolve", "steady_state_n", "cooling_rate", "stationary_distribution",
    "DEFAULT_SEARCH_BOX", "DressedMixing", "ExistenceDiagnosis",
    "InterferenceRoot", "RootSearch", "SidebandComparison", "SweepResult",
    "compare_sideband", "dressed_mixing_angle", "existence_condition",
    "find_interference_roots", "optimal_detuning", "search_interference_roots",
    "sweep",
    "TransitionRates", "VerificationReport", "compare_with_closed_forms",
    "excitation_block", "oracle_amplitudes", "oracle_transition_rates",
    "verify_amplitudes",
    "CavicoolError", "HeatingRegime", "NearSingularDenominator",
    "NoRootsFound", "NonFiniteRates", "PoleAtDelta", "SingularResolvent",
    "TruncationExceeded", "UndefinedPhi",
    "__version__",
]
