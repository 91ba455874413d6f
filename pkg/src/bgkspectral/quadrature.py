"""phi-weighted Gauss-Hermite rules and Cauchy principal-value quadrature.

Velocity integrals against the Maxwellian phi(v) = exp(-v^2)/sqrt(pi) use
Gauss-Hermite nodes with weights normalized so that integrating the constant
1 returns exactly 1 (to roundoff).

Principal-value integrals

    p.v. int_a^b g(w) / (w - p) dw

are computed by singularity subtraction on a panelized Gauss-Legendre mesh:

    int_a^b (g(w) - g(p)) / (w - p) dw  +  g(p) * log((b - p)/(p - a)),

where the subtracted quotient is bounded (it tends to g'(p) at the pole) and
is integrated panel by panel. Panels are graded geometrically toward the pole
and toward any designated feature centers so that narrow structure is
resolved before the background rule takes over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special

from .errors import DomainError, QuadratureError

SQRT_PI = float(np.sqrt(np.pi))

__all__ = [
    "VelocityGrid",
    "gauss_hermite",
    "phi_inner",
    "phi_norm",
    "panel_nodes",
    "graded_edges",
    "build_pv_mesh",
    "PVKernelSpec",
    "pv_integral",
    "pv_on_samples",
    "pv_batch",
    "gaussian_tail_bound",
]


@dataclass(frozen=True)
class VelocityGrid:
    """Gauss-Hermite velocity grid with phi-normalized weights.

    ``integrate(f)`` approximates int phi(v) f(v) dv; the weights sum to 1.
    """

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, values):
        return np.dot(self.weights, values)


def gauss_hermite(order: int) -> VelocityGrid:
    """Gauss-Hermite rule of the given order, weights divided by sqrt(pi).

    Exact for phi(v) * P(v) with P polynomial of degree <= 2*order - 1.
    """
    if order < 2:
        raise DomainError("Gauss-Hermite order must be at least 2")
    nodes, weights = special.roots_hermite(order)
    return VelocityGrid(nodes=nodes, weights=weights / SQRT_PI, order=int(order))


def phi_inner(grid: VelocityGrid, f, g) -> complex:
    """phi-weighted inner product <f, g> = int phi f conj(g) dv on the grid."""
    return complex(np.dot(grid.weights, np.asarray(f) * np.conjugate(g)))


def phi_norm(grid: VelocityGrid, f) -> float:
    """phi-weighted L2 norm sqrt(int phi |f|^2 dv) on the grid."""
    f = np.asarray(f)
    return float(np.sqrt(np.dot(grid.weights, (f * np.conjugate(f)).real)))


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = special.roots_legendre(order)
    return _GL_CACHE[order]


def panel_nodes(edges: np.ndarray, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights over consecutive panels.

    ``edges`` must be strictly increasing; nodes come out sorted.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise QuadratureError("panel edges must be strictly increasing")
    x, w = _gl_rule(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def graded_edges(lo: float, hi: float, centers=(), inner: float = 1e-3,
                 max_width: float = 0.5, ratio: float = 2.0) -> np.ndarray:
    """Panel edges on [lo, hi], geometrically graded toward each center.

    Around every center c the edges c +- inner * ratio^k are inserted while
    they fall inside the window; afterwards any panel wider than ``max_width``
    is split evenly. Near-duplicate edges (closer than inner/4) are merged so
    no sliver panels appear.
    """
    if not hi > lo:
        raise QuadratureError("empty panel window")
    cand = {float(lo), float(hi)}
    for c in centers:
        c = float(c)
        if lo < c < hi:
            cand.add(c)
        off = float(inner)
        top = hi - lo
        while off < top:
            for e in (c - off, c + off):
                if lo < e < hi:
                    cand.add(e)
            off *= ratio
    edges = np.array(sorted(cand))
    keep = [edges[0]]
    gap = max(inner / 4.0, 1e-14 * (hi - lo))
    for e in edges[1:-1]:
        if e - keep[-1] > gap:
            keep.append(e)
    keep.append(edges[-1])
    edges = np.array(keep)

    out = [edges[0]]
    for a, b in zip(edges[:-1], edges[1:]):
        width = b - a
        if width > max_width:
            n = int(np.ceil(width / max_width))
            out.extend(a + width * np.arange(1, n) / n)
        out.append(b)
    return np.array(out)


def build_pv_mesh(pole: float, truncation: float, refinement: int = 256,
                  feature_centers=(0.0,), panel_order: int = 16):
    """Panel mesh on [-T, T] graded toward the pole and the feature centers.

    ``refinement`` sets the node budget of the graded zone around the pole;
    doubling it halves the innermost panel width, so results converge as the
    budget grows.
    """
    T = float(truncation)
    per_side = max(3, int(refinement) // (2 * panel_order))
    inner = 1.0 / 2.0 ** per_side
    centers = [float(pole)] + [float(c) for c in feature_centers]
    edges = graded_edges(-T, T, centers=centers, inner=inner, max_width=T / 16.0)
    return panel_nodes(edges, order=panel_order)


def pv_on_samples(nodes, weights, values, pole, value_at_pole,
                  deriv_at_pole, lo, hi) -> complex:
    """Singularity-subtracted PV integral from sampled data.

    Nodes that coincide with the pole (within 1e-9 of the local scale) use
    the supplied derivative for the subtracted quotient.
    """
    d = np.asarray(nodes) - pole
    tiny = np.abs(d) < 1e-9 * max(1.0, abs(pole))
    quot = np.empty(d.shape, dtype=complex)
    np.divide(np.asarray(values) - value_at_pole, d, out=quot, where=~tiny)
    quot[tiny] = deriv_at_pole
    if not (lo < pole < hi):
        raise QuadratureError("pole outside quadrature window")
    log_term = value_at_pole * np.log((hi - pole) / (pole - lo))
    return complex(np.dot(weights, quot) + log_term)


def pv_batch(nodes, weights, values, poles, values_at_poles,
              derivs_at_poles, lo, hi, chunk: int = 512) -> np.ndarray:
    """Vectorized PV integral of one sampled density at many poles.

    Same subtraction rule as :func:`pv_on_samples`, evaluated as a
    poles-by-nodes quotient matrix in chunks to bound memory.
    """
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    values = np.asarray(values, dtype=complex)
    poles = np.asarray(poles, dtype=float)
    fp = np.asarray(values_at_poles, dtype=complex)
    dfp = np.asarray(derivs_at_poles, dtype=complex)
    if np.any(poles <= lo) or np.any(poles >= hi):
        raise QuadratureError("pole outside quadrature window")
    out = np.empty(poles.shape, dtype=complex)
    for start in range(0, poles.size, chunk):
        sl = slice(start, min(start + chunk, poles.size))
        p = poles[sl]
        d = nodes[None, :] - p[:, None]
        tiny = np.abs(d) < 1e-9 * np.maximum(1.0, np.abs(p))[:, None]
        num = values[None, :] - fp[sl][:, None]
        quot = np.empty(d.shape, dtype=complex)
        np.divide(num, d, out=quot, where=~tiny)
        rows, _ = np.nonzero(tiny)
        if rows.size:
            quot[tiny] = dfp[sl][rows]
        out[sl] = quot @ weights + fp[sl] * np.log((hi - p) / (p - lo))
    return out


@dataclass
class PVKernelSpec:
    """Request for p.v. int g(w)/(w - pole) dw over [-truncation, truncation].

    ``integrand`` is a vectorized sampler g(w); ``refinement`` is the node
    budget of the graded zone around the pole.
    """

    pole: float
    integrand: Callable[[np.ndarray], np.ndarray]
    truncation: float = 8.0
    refinement: int = 256
    feature_centers: tuple = field(default=(0.0,))
    panel_order: int = 16


def pv_integral(spec: PVKernelSpec) -> complex:
    """Evaluate a PV integral described by a :class:`PVKernelSpec`.

    Raises QuadratureError when the pole lies outside the truncation window
    or the integrand produces non-finite samples.
    """
    T = float(spec.truncation)
    if not (-T < spec.pole < T):
        raise QuadratureError(
            f"pole {spec.pole} outside truncation window [{-T}, {T}]")
    nodes, weights = build_pv_mesh(spec.pole, T, spec.refinement,
                                   spec.feature_centers, spec.panel_order)
    values = np.asarray(spec.integrand(nodes), dtype=complex)
    if not np.all(np.isfinite(values)):
        raise QuadratureError("non-finite integrand samples")
    g0 = complex(np.asarray(spec.integrand(np.array([spec.pole])), dtype=complex)[0])
    h = 1e-6 * max(1.0, abs(spec.pole))
    gp = np.asarray(spec.integrand(np.array([spec.pole + h, spec.pole - h])),
                    dtype=complex)
    dg0 = complex((gp[0] - gp[1]) / (2.0 * h))
    if not (np.isfinite(g0) and np.isfinite(dg0)):
        raise QuadratureError("non-finite integrand samples at the pole")
    return pv_on_samples(nodes, weights, values, spec.pole, g0, dg0, -T, T)


def gaussian_tail_bound(truncation: float, pole: float = 0.0) -> float:
    """Crude bound on |p.v. int_{|w|>T} phi(w)/(w - pole) dw| for |pole| < T."""
    T = float(truncation)
    if abs(pole) >= T:
        raise DomainError("pole beyond the truncation radius")
    mass = float(special.erfc(T))
    return mass / max(T - abs(pole), 0.5)
