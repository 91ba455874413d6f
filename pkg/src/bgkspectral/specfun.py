"""Scalar special functions underlying the kinetic solver.

The Maxwellian weight phi(v) = exp(-v^2)/sqrt(pi), the Dawson integral, the
principal-value Hilbert transform of phi, and the odd bijection
Xi(eta) = integral of eta*phi(v)/(eta^2 + v^2) over the real line.
"""

from __future__ import annotations

import numpy as np
from scipy import special

from .errors import DomainError

SQRT_PI = float(np.sqrt(np.pi))

__all__ = [
    "SQRT_PI",
    "gaussian_weight",
    "dawson",
    "hilbert_gaussian",
    "xi_function",
]


def gaussian_weight(v):
    """Maxwellian weight phi(v) = exp(-v^2)/sqrt(pi).

    Even, strictly positive, unit mass. Underflows to exactly 0.0 for
    |v| >~ 27, which downstream code relies on (phi-carrying tails vanish).
    """
    v = np.asarray(v, dtype=float)
    out = np.exp(-v * v) / SQRT_PI
    return out if out.ndim else float(out)


def dawson(v):
    """Dawson integral D(v) = exp(-v^2) * int_0^v exp(x^2) dx.

    Odd, D'(v) = 1 - 2 v D(v), maximum ~0.541 near v = 0.924, and
    D(v) ~ 1/(2v) as |v| -> inf.
    """
    return special.dawsn(v)


def hilbert_gaussian(v):
    """p.v. int phi(w) / (i (w - v)) dw = 2 i D(v).

    The principal-value Hilbert transform of the Maxwellian against the
    kernel 1/(i(w - v)); purely imaginary for real v.
    """
    return 2j * special.dawsn(v)


def xi_function(eta):
    """Xi(eta) = int eta phi(v) / (eta^2 + v^2) dv = sign(eta) sqrt(pi) erfcx(|eta|).

    Odd bijection from R \\ {0} onto (-sqrt(pi), 0) u (0, sqrt(pi)); strictly
    decreasing on (0, inf) with Xi(0+) = sqrt(pi) and Xi(eta) ~ 1/eta at
    infinity. The erfcx form is cancellation-free for all eta != 0.

    Raises DomainError at eta = 0 (the two one-sided limits differ).
    """
    arr = np.asarray(eta, dtype=float)
    if np.any(arr == 0.0):
        raise DomainError("xi_function is undefined at eta = 0")
    out = np.sign(arr) * SQRT_PI * special.erfcx(np.abs(arr))
    return out if arr.ndim else float(out)
