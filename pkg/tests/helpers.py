"""Shared parameter factories for the test suite."""

import numpy as np

from cavicool import Params

QUARTER_PI = np.pi / 4


def strong_coupling_params(**overrides) -> Params:
    """Strong coupling, bad cavity: gamma=0.1, kappa=10, g=7, both recoils."""
    base = dict(gamma=0.1, kappa=10.0, Omega=0.03, g_tilde=7.0, phi=QUARTER_PI,
                theta_L=QUARTER_PI, theta_c=QUARTER_PI, eta=0.1)
    base.update(overrides)
    return Params(**base)


def interference_params(**overrides) -> Params:
    """Small gamma, moderate coupling: the suppression-point regime."""
    base = dict(gamma=0.01, kappa=10.0, Omega=0.03, g_tilde=2.3, phi=QUARTER_PI,
                theta_L=QUARTER_PI, theta_c=QUARTER_PI, eta=0.1)
    base.update(overrides)
    return Params(**base)


def free_space_params(**overrides) -> Params:
    """No cavity, red-sideband drive: plain sideband cooling."""
    base = dict(gamma=0.1, kappa=10.0, Omega=0.03, g_tilde=0.0, phi=0.0,
                theta_L=QUARTER_PI, theta_c=QUARTER_PI, Delta=-1.0, delta_c=0.0,
                eta=0.1, alpha=0.4)
    base.update(overrides)
    return Params(**base)
