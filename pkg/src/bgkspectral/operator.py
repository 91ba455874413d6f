"""The Fourier-transformed collision operator and its resolvent.

For a fixed wavenumber xi the generator acting on velocity profiles is

    (L g)(v) = -(1 + i xi v) g(v) + int phi(w) g(w) dw,

whose spectrum is the line segment l = {-1 + i alpha : alpha real} union the
real interval (-1, 0] swept by lambda(xi). Off the spectrum the resolvent has
the closed form

    (L - lam)^{-1} h = -(h + m / p) / (1 + lam + i xi v),
    m = int phi h / (1 + lam + i xi v) dv,
    p = 1 - int phi / (1 + lam + i xi v) dv.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularOperatorError, SpectralProximityError
from .quadrature import VelocityGrid, phi_norm

__all__ = [
    "VSliceFunction",
    "apply_L",
    "collision_moment",
    "spectrum_distance",
    "apply_resolvent",
]


@dataclass
class VSliceFunction:
    """A single-wavenumber velocity profile sampled on a Gauss-Hermite grid."""

    grid: VelocityGrid
    values: np.ndarray
    xi: float

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.grid.nodes.shape:
            raise ValueError("values must match the grid nodes")

    def norm(self) -> float:
        return phi_norm(self.grid, self.values)


def collision_moment(g: VSliceFunction) -> complex:
    """Density moment int phi(v) g(v) dv."""
    return complex(g.grid.integrate(g.values))


def apply_L(g: VSliceFunction) -> VSliceFunction:
    """Apply the generator: multiplication part plus the rank-one moment."""
    mom = collision_moment(g)
    vals = -(1.0 + 1j * g.xi * g.grid.nodes) * g.values + mom
    return VSliceFunction(grid=g.grid, values=vals, xi=g.xi)


def spectrum_distance(lam) -> float:
    """Distance from lam to the spectrum (the line Re = -1 and the segment (-1, 0])."""
    lam = complex(lam)
    d_line = abs(lam.real + 1.0)
    x = min(max(lam.real, -1.0), 0.0)
    d_seg = float(np.hypot(lam.real - x, lam.imag))
    return min(d_line, d_seg)


def apply_resolvent(h: VSliceFunction, lam, proximity: float = 1e-6,
                    singular_tol: float = 1e-10) -> VSliceFunction:
    """Evaluate (L - lam)^{-1} h via the closed form.

    Rejects lam within ``proximity`` of the spectrum; raises
    SingularOperatorError if the perturbation determinant p underflows
    anyway (defensive, cannot happen once proximity holds).
    """
    lam = complex(lam)
    if spectrum_distance(lam) < proximity:
        raise SpectralProximityError(
            f"lambda = {lam} lies within {proximity} of the spectrum")
    denom = 1.0 + lam + 1j * h.xi * h.grid.nodes
    p = 1.0 - h.grid.integrate(1.0 / denom)
    if abs(p) < singular_tol:
        raise SingularOperatorError("perturbation determinant vanished")
    m = h.grid.integrate(h.values / denom)
    vals = -(h.values + m / p) / denom
    return VSliceFunction(grid=h.grid, values=vals, xi=h.xi)
