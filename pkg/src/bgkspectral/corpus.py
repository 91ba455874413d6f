"""Fixed in-repo test corpus of initial slices.

Three velocity profiles at the standard wavenumber set: the attractor
profile itself (pure eigen data, K0 = 0), a centered Gaussian, and a
shifted Gaussian (breaks velocity parity). xi = 2 adds a zero-index slice.
"""

from __future__ import annotations

import numpy as np

from .coefficients import InitialData
from .dispersion import lambda_of_xi
from .errors import DomainError
from .specfun import SQRT_PI

__all__ = ["PROFILES", "CORPUS_XI", "CHI0_XI", "corpus_sampler", "make_initial_data"]

PROFILES = ("gds", "gaussian", "shifted-gaussian")
CORPUS_XI = (0.25, 0.5, 1.0, 1.5)
CHI0_XI = 2.0


def corpus_sampler(profile: str, xi: float):
    """Closed-form sampler of the named profile at one wavenumber."""
    if profile == "gds":
        if abs(xi) >= SQRT_PI:
            raise DomainError("the attractor profile needs |xi| < sqrt(pi)")
        lam = lambda_of_xi(xi)

        def sampler(v):
            return 1.0 / (1.0 + lam + 1j * xi * np.asarray(v, dtype=float))

        return sampler
    if profile == "gaussian":
        return lambda v: np.exp(-np.asarray(v, dtype=float) ** 2) + 0j
    if profile == "shifted-gaussian":
        return lambda v: np.exp(-(np.asarray(v, dtype=float) - 1.0) ** 2) + 0j
    raise DomainError(f"unknown corpus profile {profile!r}; choose from {PROFILES}")


def make_initial_data(profile: str, xis=CORPUS_XI) -> InitialData:
    """InitialData bundling the profile over a wavenumber set."""
    xis = tuple(float(x) for x in xis)
    samplers = {xi: corpus_sampler(profile, xi) for xi in xis}
    lo, hi = min(xis), max(xis)
    return InitialData(samplers=samplers, xi_support=(lo, hi),
                       smoothness_certificate=True, label=profile)
