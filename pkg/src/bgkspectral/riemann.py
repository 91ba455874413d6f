"""Riemann-Hilbert factorization for the singular velocity equation.

The boundary data on the real line are

    A(v) = xi - 2 i D(v),        B(v) = -pi phi(v),
    G(v) = (A - B) / (A + B)
         = [(xi^2 - pi^2 phi^2 + 4 D^2) + 4 i pi phi D] / [(xi - pi phi)^2 + 4 D^2],

with D the Dawson function. G never vanishes away from xi = +-sqrt(pi) and
tends to 1 at both ends of the line. Its winding number chi is -1 for
|xi| < sqrt(pi) and 0 for |xi| > sqrt(pi).

The canonical (homogeneous) solution is X+ = exp(Gamma+) on the upper edge
and X- = mob(v)^{-chi} exp(Gamma-) on the lower edge, where
mob(v) = (v - i)/(v + i) and

    Gamma+(v) = L(v)/2 + (1/(2 pi i)) p.v. int L(tau)/(tau - v) dtau,
    Gamma-(v) = Gamma+(v) - L(v),
    L(tau)    = log[ mob(tau)^{-chi} G(tau) ]  (continuous branch).

The Mobius factor winds once counterclockwise as tau sweeps the line, so for
chi = -1 the product mob^{-chi} G has zero net winding and L is a continuous
single-valued logarithm decaying like (-chi)(-2i)/tau. That slow decay is
handled exactly: inside |tau| <= T the tracked log is sampled on a graded
panel mesh; beyond T the integrand is mapped under u = 1/tau and sampled
from the closed form L(1/u) = (-chi)(-2i arctan u) + Log G(1/u), where the
Log G part underflows to exactly zero (phi does) for |tau| > T.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, RefinementError
from .quadrature import graded_edges, panel_nodes, pv_batch
from .specfun import SQRT_PI, dawson, gaussian_weight

__all__ = [
    "boundary_A",
    "boundary_B",
    "boundary_G",
    "boundary_G_from_AB",
    "BoundaryCoefficients",
    "IndexResult",
    "winding_index",
    "index_rule",
    "CanonicalMeshConfig",
    "CanonicalSolution",
    "get_canonical",
    "gamma_plus",
]

_TWO_PI = 2.0 * np.pi


def boundary_A(xi: float, v):
    """Dominant coefficient A(v) = xi - 2 i D(v)."""
    return xi - 2j * dawson(v)


def boundary_B(v):
    """Cauchy-kernel coefficient B(v) = -pi phi(v); real, B(+-inf) = 0."""
    return -np.pi * gaussian_weight(v)


@dataclass(frozen=True)
class BoundaryCoefficients:
    """The (A, B) pair of the singular equation at a fixed wavenumber."""

    xi: float

    def A(self, v):
        return boundary_A(self.xi, v)

    def B(self, v):
        return boundary_B(v)


def boundary_G(xi: float, v):
    """Jump function G in the explicit real/imaginary split.

    Division by (xi - pi phi)^2 + 4 D^2 fails only at (xi, v) = (+-sqrt(pi), 0);
    those wavenumbers are rejected upstream.
    """
    v = np.asarray(v, dtype=float)
    pf = np.pi * gaussian_weight(v)
    D = dawson(v)
    den = (xi - pf) ** 2 + 4.0 * D * D
    if np.any(den == 0.0):
        raise DomainError("boundary data degenerate: xi = +-sqrt(pi) at v = 0")
    out = ((xi * xi - pf * pf + 4.0 * D * D) + 4j * pf * D) / den
    return out if out.ndim else complex(out)


def boundary_G_from_AB(xi: float, v):
    """G computed directly as (A - B)/(A + B); cross-check for boundary_G."""
    A = boundary_A(xi, v)
    B = boundary_B(v)
    return (A - B) / (A + B)


@dataclass
class IndexResult:
    """Winding number of G with the sampled image curve (v, Re G, Im G)."""

    xi: float
    chi: int
    image_curve: np.ndarray


def _check_xi(xi: float) -> float:
    xi = float(xi)
    if min(abs(xi - SQRT_PI), abs(xi + SQRT_PI)) < 1e-3:
        raise DomainError("xi within 1e-3 of +-sqrt(pi): jump function degenerates")
    return xi


def winding_index(xi: float, v_max: float = 12.0, n_start: int = 2001,
                  max_refine: int = 40) -> IndexResult:
    """Winding number of v -> G(v) computed by adaptive argument tracking.

    Samples on [-v_max, v_max] are refined by midpoint insertion until every
    adjacent argument increment is below pi/2 (increments are computed as
    principal angles of ratios, so each is exact once below pi). G is
    exponentially close to 1 outside the sample window, which contributes
    nothing to the winding.
    """
    xi = _check_xi(xi)
    vs = np.linspace(-v_max, v_max, n_start)
    for _ in range(max_refine):
        G = boundary_G(xi, vs)
        darg = np.angle(G[1:] / G[:-1])
        bad = np.abs(darg) > 0.5 * np.pi
        if not np.any(bad):
            break
        mids = 0.5 * (vs[:-1][bad] + vs[1:][bad])
        vs = np.sort(np.concatenate([vs, mids]))
    else:
        raise RefinementError("winding refinement did not converge")
    total = float(np.sum(darg))
    chi_f = total / _TWO_PI
    chi = int(np.round(chi_f))
    if abs(chi_f - chi) > 0.05:
        raise RefinementError(
            f"winding number not integral: total/2pi = {chi_f:.6f}")
    curve = np.column_stack([vs, G.real, G.imag])
    return IndexResult(xi=xi, chi=chi, image_curve=curve)


def index_rule(xi: float) -> int:
    """Proven index rule: chi = -1 for |xi| < sqrt(pi), 0 beyond."""
    xi = _check_xi(xi)
    return -1 if abs(xi) < SQRT_PI else 0


def _mobius(v):
    return (v - 1j) / (v + 1j)


@dataclass(frozen=True)
class CanonicalMeshConfig:
    """Mesh parameters for the tracked-log sampling of Gamma+.

    The central window [-truncation, truncation] uses panels graded toward
    v = 0 (inner_width doubling up to core_width inside |v| <= core_half,
    then growing by outer_ratio); the u = 1/tau tail panels are graded toward
    the window edges with innermost width tail_inner / truncation.
    """

    truncation: float = 36.0
    core_half: float = 10.0
    inner_width: float = 0.02
    core_width: float = 0.4
    outer_ratio: float = 1.4
    panel_order: int = 16
    tail_inner: float = 1e-3
    pole_margin: float = 1.5

    def key(self) -> tuple:
        return (self.truncation, self.core_half, self.inner_width,
                self.core_width, self.outer_ratio, self.panel_order,
                self.tail_inner, self.pole_margin)


DEFAULT_MESH = CanonicalMeshConfig()


def _central_edges(cfg: CanonicalMeshConfig, scale: float) -> np.ndarray:
    """Graded core on [-core_half, core_half] plus geometric outer panels."""
    core = graded_edges(-cfg.core_half, cfg.core_half, centers=(0.0,),
                        inner=cfg.inner_width * scale,
                        max_width=cfg.core_width * scale)
    outer = [cfg.core_half]
    width = cfg.core_width
    while outer[-1] < cfg.truncation:
        width *= cfg.outer_ratio
        outer.append(min(outer[-1] + width, cfg.truncation))
    right = np.array(outer[1:])
    return np.concatenate([-right[::-1], core, right])


class CanonicalSolution:
    """Tracked log, Cauchy transform and canonical factors at one wavenumber.

    Build once per xi (see :func:`get_canonical`); evaluation methods are
    vectorized over the query points.
    """

    def __init__(self, xi: float, cfg: CanonicalMeshConfig = DEFAULT_MESH):
        self.xi = _check_xi(xi)
        self.cfg = cfg
        self.chi = index_rule(xi)
        self._build()

    # -- construction -----------------------------------------------------

    def _H(self, v):
        """Winding-corrected jump mob(v)^{-chi} G(v); zero net winding."""
        G = boundary_G(self.xi, v)
        if self.chi == 0:
            return G
        return _mobius(np.asarray(v, dtype=float)) ** (-self.chi) * G

    def _build(self):
        cfg = self.cfg
        for attempt in range(4):
            scale = 0.5 ** attempt
            edges = _central_edges(cfg, scale)
            tau, w = panel_nodes(edges, order=cfg.panel_order)
            H = self._H(tau)
            ph = np.angle(H)
            theta = np.unwrap(ph)
            if np.max(np.abs(np.diff(theta))) < 0.5 * np.pi and \
                    abs(theta[-1] - ph[-1]) < 1.0:
                break
        else:
            raise RefinementError("tracked log did not resolve; mesh exhausted")
        self.tau = tau
        self.w = w
        self.L = np.log(np.abs(H)) + 1j * theta
        self._dL = self._dlog(tau)
        self._build_tail()
        # Gamma+ on the mesh itself: honest values inside the pole margin;
        # beyond it every consumer multiplies by phi(tau), which is exactly
        # 0.0 there in doubles, so the local half-log stands in (it only
        # keeps exp(Gamma) finite).
        lim = cfg.truncation - cfg.pole_margin
        inside = np.abs(tau) <= lim
        g = np.empty(tau.size, dtype=complex)
        g[inside] = self.gamma_plus_at(tau[inside])
        g[~inside] = 0.5 * self.L[~inside]
        self.gamma_mesh = g

    def _build_tail(self):
        """u = 1/tau tail panels and the closed-form tail density L(1/u)/u."""
        T = self.cfg.truncation
        if self.chi == 0:
            # Log G underflows to exactly 0 beyond the window; no tail.
            self.u_nodes = np.empty(0)
            self.u_weights = np.empty(0)
            self.u_density = np.empty(0, dtype=complex)
            return
        b = 1.0 / T
        edges = graded_edges(-b, b, centers=(-b, b), inner=b * self.cfg.tail_inner,
                             max_width=b / 4.0)
        u, uw = panel_nodes(edges, order=self.cfg.panel_order)
        ltail = (-self.chi) * (-2j) * np.arctan(u) + np.log(boundary_G(self.xi, 1.0 / u))
        self.u_nodes = u
        self.u_weights = uw
        self.u_density = ltail / u

    def _dlog(self, v):
        """Analytic derivative L'(v) = (-chi) 2i/(v^2+1) + (A'-B')/(A-B) - (A'+B')/(A+B)."""
        v = np.asarray(v, dtype=float)
        A = boundary_A(self.xi, v)
        B = boundary_B(v)
        D = dawson(v)
        dA = -2j * (1.0 - 2.0 * v * D)
        dB = 2.0 * np.pi * v * gaussian_weight(v)
        out = (dA - dB) / (A - B) - (dA + dB) / (A + B)
        if self.chi != 0:
            out = out + (-self.chi) * 2j / (v * v + 1.0)
        return out

    # -- evaluation --------------------------------------------------------

    def tracked_log_at(self, v):
        """Continuous-branch log of mob^{-chi} G at arbitrary real points.

        The branch offset is inherited from the nearest mesh sample; the mesh
        was refined so adjacent samples differ by well under pi.
        """
        v = np.atleast_1d(np.asarray(v, dtype=float))
        H = self._H(v)
        princ = np.angle(H)
        idx = np.clip(np.searchsorted(self.tau, v), 1, self.tau.size - 1)
        nearest = np.where(v - self.tau[idx - 1] < self.tau[idx] - v, idx - 1, idx)
        k = np.round((self.L.imag[nearest] - princ) / _TWO_PI)
        return np.log(np.abs(H)) + 1j * (princ + _TWO_PI * k)

    def _tail_cauchy(self, z):
        """int_{|tau|>T} L(tau)/(tau - z) dtau for |z| inside the window."""
        if self.chi == 0:
            return np.zeros(np.shape(z), dtype=complex)
        z = np.atleast_1d(z)
        kern = 1.0 / (1.0 - self.u_nodes[None, :] * z[:, None])
        return (kern * self.u_density[None, :]) @ self.u_weights

    def _check_poles(self, v):
        lim = self.cfg.truncation - self.cfg.pole_margin
        if np.any(np.abs(v) > lim):
            raise DomainError(
                f"evaluation point beyond |v| = {lim}; enlarge the mesh window")

    def gamma_plus_at(self, v):
        """Upper boundary value Gamma+(v) = L/2 + Cauchy p.v. integral of L."""
        scalar = np.isscalar(v) or np.ndim(v) == 0
        v = np.atleast_1d(np.asarray(v, dtype=float))
        self._check_poles(v)
        Lv = self.tracked_log_at(v)
        dLv = self._dlog(v)
        T = self.cfg.truncation
        pv = pv_batch(self.tau, self.w, self.L, v, Lv, dLv, -T, T)
        total = (pv + self._tail_cauchy(v)) / (2j * np.pi)
        out = 0.5 * Lv + total
        return complex(out[0]) if scalar else out

    def cauchy_offaxis(self, z: complex) -> complex:
        """Gamma(z) off the real axis by direct (non-PV) quadrature.

        Independent of the subtraction path: the mesh is re-graded to the
        scale |Im z| around Re z and the kernel is evaluated verbatim. Used
        as the one-sided-limit oracle for the Plemelj relation.
        """
        z = complex(z)
        if z.imag == 0.0:
            raise DomainError("cauchy_offaxis requires Im z != 0")
        T = self.cfg.truncation
        inner = max(abs(z.imag) / 8.0, 1e-7)
        edges = graded_edges(-T, T, centers=(0.0, z.real), inner=inner,
                             max_width=self.cfg.core_width)
        tau, w = panel_nodes(edges, order=self.cfg.panel_order)
        L = self.tracked_log_at(tau)
        core = np.dot(w, L / (tau - z))
        tail = self._tail_cauchy(np.array([z]))[0]
        return complex((core + tail) / (2j * np.pi))

    def plemelj_oracle(self, v: float, eps0: float = 4e-3) -> tuple[complex, complex]:
        """One-sided limits (X+, X-) from off-axis values, Richardson in eps.

        Gamma(v +- i eps) is a Taylor series in eps, so two Richardson stages
        on (eps0, eps0/2, eps0/4) leave an O(eps0^3) error.
        """
        def limit(sign):
            r = [self.cauchy_offaxis(complex(v, sign * eps0 / 2 ** k))
                 for k in range(3)]
            e1 = 2.0 * r[1] - r[0]
            e2 = 2.0 * r[2] - r[1]
            return (4.0 * e2 - e1) / 3.0

        gp = limit(+1.0)
        gm = limit(-1.0)
        x_plus = np.exp(gp)
        x_minus = _mobius(v) ** (-self.chi) * np.exp(gm)
        return complex(x_plus), complex(x_minus)

    def x_plus_at(self, v):
        """Canonical factor X+(v) = exp(Gamma+(v))."""
        return np.exp(self.gamma_plus_at(v))

    def x_minus_at(self, v):
        """Canonical factor X-(v) = mob(v)^{-chi} exp(Gamma+(v) - L(v))."""
        scalar = np.isscalar(v) or np.ndim(v) == 0
        varr = np.atleast_1d(np.asarray(v, dtype=float))
        gm = self.gamma_plus_at(varr) - self.tracked_log_at(varr)
        out = _mobius(varr) ** (-self.chi) * np.exp(gm)
        return complex(out[0]) if scalar else out


@lru_cache(maxsize=32)
def _cached_canonical(xi: float, key: tuple) -> CanonicalSolution:
    cfg = CanonicalMeshConfig(*key)
    return CanonicalSolution(xi, cfg)


def get_canonical(xi: float, cfg: CanonicalMeshConfig | None = None) -> CanonicalSolution:
    """Shared per-wavenumber canonical solution (built once, cached)."""
    cfg = cfg or DEFAULT_MESH
    return _cached_canonical(float(xi), cfg.key())


def gamma_plus(xi: float, v, chi: int | None = None):
    """Gamma+(v) at wavenumber xi; validates chi against the winding rule."""
    sol = get_canonical(xi)
    if chi is not None and chi != sol.chi:
        raise DomainError(f"chi = {chi} inconsistent with winding index {sol.chi}")
    return sol.gamma_plus_at(v)
