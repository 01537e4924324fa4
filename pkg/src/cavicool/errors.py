"""Exception types shared across the library."""


class CavicoolError(Exception):
    """Base class for all cavicool errors."""


class NearSingularDenominator(CavicoolError):
    """|f| fell below the floor; the first-order amplitudes are not valid."""


class HeatingRegime(CavicoolError):
    """A_minus <= A_plus: no cooling steady state exists."""


class TruncationExceeded(CavicoolError):
    """Occupation leaked to the top of the phonon ladder even at the hard cap."""


class NonFiniteRates(CavicoolError):
    """Rate coefficients contain NaN or infinity."""


class PoleAtDelta(CavicoolError):
    """The optimal-detuning formula has a pole at Delta = -nu."""


class NoRootsFound(CavicoolError):
    """No interference root in the search box (a legitimate outcome)."""


class UndefinedPhi(CavicoolError):
    """varphi_c = 0, so the geometry ratio varphi_L/varphi_c is undefined."""


class SingularResolvent(CavicoolError):
    """The excitation-block resolvent is numerically singular."""
