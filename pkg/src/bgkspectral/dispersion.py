"""Dispersion curve of the collisional branch.

For wavenumber 0 < |xi| < sqrt(pi) the decay-rate branch lambda(xi) sits on
the real segment (-1, 0] and is parametrized by the root eta(xi) of
Xi(eta) = xi through

    lambda(xi) = -1 + xi * eta(xi),

extended continuously by lambda(0) = 0. Equivalently lambda solves the
normalization constraint

    int phi(v) / (1 + lambda + i xi v) dv = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import DomainError
from .quadrature import graded_edges, panel_nodes
from .specfun import SQRT_PI, gaussian_weight, xi_function

__all__ = [
    "XI_DOMAIN_CLIP",
    "eta_of_xi",
    "lambda_of_xi",
    "constraint_residual",
    "DispersionPoint",
    "DispersionTable",
    "build_dispersion_table",
    "table_to_csv",
]

# |xi| above sqrt(pi) - XI_DOMAIN_CLIP is rejected: eta collapses toward 0
# there and the branch terminates at lambda -> -1.
XI_DOMAIN_CLIP = 1e-6


def eta_of_xi(xi: float) -> float:
    """Invert Xi: the unique eta with xi_function(eta) = xi, sign(eta) = sign(xi).

    Brent root find on a doubling/halving bracket; eta grows like 1/xi as
    xi -> 0 and shrinks toward 0 as |xi| -> sqrt(pi).
    """
    ax = abs(float(xi))
    if ax == 0.0:
        raise DomainError("eta(xi) diverges at xi = 0; use lambda_of_xi for the extension")
    if ax >= SQRT_PI:
        raise DomainError(f"|xi| must lie below sqrt(pi) = {SQRT_PI:.10f}")

    def f(e):
        return xi_function(e) - ax

    hi = 1.0
    if f(hi) > 0.0:
        while f(hi) > 0.0:
            hi *= 2.0
        lo = hi / 2.0
    else:
        lo = 0.5
        while f(lo) <= 0.0:
            lo /= 2.0
        hi = lo * 2.0
    root = optimize.brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return float(np.copysign(root, xi))


def lambda_of_xi(xi: float) -> float:
    """Decay rate lambda(xi) = -1 + |xi| * eta(|xi|), lambda(0) = 0.

    Even in xi; strictly inside (-1, 0] on the clipped domain
    |xi| <= sqrt(pi) - 1e-6.
    """
    ax = abs(float(xi))
    if ax > SQRT_PI - XI_DOMAIN_CLIP:
        raise DomainError(
            f"|xi| = {ax} outside the dispersion domain (clip at sqrt(pi) - {XI_DOMAIN_CLIP})")
    if ax == 0.0:
        return 0.0
    return -1.0 + ax * eta_of_xi(ax)


def constraint_residual(lam, xi: float, truncation: float = 8.5,
                         panel_order: int = 16) -> complex:
    """Quadrature residual of int phi/(1 + lambda + i xi v) dv minus 1.

    The integrand's modulus peaks at v = -Im(lambda)/xi with Lorentzian width
    |1 + Re(lambda)|/|xi|; the panel mesh is graded to that scale so the
    residual is quadrature-honest even where the curve approaches lambda = -1.
    """
    lam = complex(lam)
    xi = float(xi)
    if xi == 0.0 and lam == -1.0:
        raise DomainError("integrand pole: 1 + lambda = 0 with xi = 0")
    if xi != 0.0 and abs(1.0 + lam.real) < 1e-13:
        raise DomainError("integrand pole on the real velocity axis")
    if xi != 0.0:
        center = -lam.imag / xi
        width = abs(1.0 + lam.real) / abs(xi)
        inner = min(max(width / 4.0, 1e-9), 0.05)
        centers = (center,) if abs(center) < truncation else ()
    else:
        centers = (0.0,)
        inner = 0.05
    edges = graded_edges(-truncation, truncation, centers=centers,
                         inner=inner, max_width=0.5)
    nodes, weights = panel_nodes(edges, order=panel_order)
    vals = gaussian_weight(nodes) / (1.0 + lam + 1j * xi * nodes)
    return complex(np.dot(weights, vals) - 1.0)


@dataclass(frozen=True)
class DispersionPoint:
    """One point of the dispersion curve; eta is +inf at the xi = 0 extension."""

    xi: float
    eta: float
    lam: float


@dataclass
class DispersionTable:
    """Sampled dispersion curve with per-point constraint residuals."""

    points: list[DispersionPoint]
    residuals: np.ndarray
    tolerance: float

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals)))

    @property
    def within_tolerance(self) -> bool:
        return bool(self.max_residual < self.tolerance)

    @property
    def monotone(self) -> bool:
        """lambda strictly decreasing in |xi| over the sampled points.

        |xi| values within relative 1e-12 (e.g. the two signs of one
        wavenumber after floating-point grid construction) count as one
        sample.
        """
        pairs = sorted((abs(p.xi), p.lam) for p in self.points)
        last_ax, last_lam = pairs[0]
        for ax, lam in pairs[1:]:
            if ax - last_ax <= 1e-12 * max(1.0, ax):
                continue
            if lam >= last_lam:
                return False
            last_ax, last_lam = ax, lam
        return True


def build_dispersion_table(xi_values, tolerance: float = 1e-8) -> DispersionTable:
    """Evaluate the branch on a wavenumber grid and verify the constraint."""
    points = []
    residuals = []
    for xi in np.asarray(xi_values, dtype=float):
        lam = lambda_of_xi(xi)
        eta = eta_of_xi(xi) if xi != 0.0 else float("inf")
        points.append(DispersionPoint(xi=float(xi), eta=eta, lam=lam))
        residuals.append(abs(constraint_residual(lam, xi)))
    return DispersionTable(points=points, residuals=np.array(residuals),
                           tolerance=float(tolerance))


def table_to_csv(table: DispersionTable) -> str:
    """CSV rendering with 17 significant digits (columns xi,eta,lambda,residual)."""
    lines = ["xi,eta,lambda,residual"]
    for p, r in zip(table.points, table.residuals):
        lines.append(f"{p.xi:.17g},{p.eta:.17g},{p.lam:.17g},{r:.17g}")
    return "\n".join(lines) + "\n"
