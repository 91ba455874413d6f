"""Spectral coefficient extraction for one wavenumber slice.

Writing the initial slice as the eigen-part plus a continuous remainder, the
free function of the singular equation is

    F0(v) = phi(v) (fhat0(v) - C0 / (1 + lam + i xi v)),     chi = -1,
    F0(v) = phi(v) fhat0(v),                                  chi = 0,

and the solution of  F0 = A K0 + (B/(pi i)) p.v. int K0/(w - v) dw  is

    K0 = A F0 / (A^2 - B^2)
         - exp(Gamma+) B/(A - B) * (1/(pi i)) p.v. int rho(tau)/(tau - v) dtau,
    rho = F0 / (exp(Gamma+) (A + B)).

For chi = -1 the canonical lower factor carries a pole at z = -i, so the
one solvability condition of the negative-index problem is

    int F0(tau) / ((A + B) exp(Gamma+)) dtau/(tau + i) = 0,

which fixes the eigen amplitude as a ratio of Cauchy-type integrals,

    C0 = [int w_c(tau) fhat0(tau) dtau] / [int w_c(tau) / (1 + lam + i xi tau) dtau],
    w_c = phi / (exp(Gamma+) (A + B) (tau + i)).

For |xi| >= sqrt(pi) the index is 0, no condition arises and C0 is
identically zero.

All velocity integrals run on the canonical solution's panel mesh; K0 is
evaluated off-mesh through the reduced form Kred = K0/phi, which never
divides by the (underflowing) Maxwellian.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .dispersion import lambda_of_xi
from .errors import DegenerateDataError, SmoothnessWarning
from .operator import VSliceFunction
from .quadrature import pv_batch
from .riemann import (CanonicalMeshConfig, boundary_A, boundary_B,
                      get_canonical)
from .specfun import SQRT_PI, gaussian_weight

__all__ = [
    "InitialData",
    "SliceWorkspace",
    "SpectralSlice",
    "as_sampler",
    "compute_C0",
    "build_F0",
    "compute_K0",
    "extract_slice",
    "slice_to_json",
    "slice_from_json",
]


@dataclass
class InitialData:
    """Initial Fourier data: one velocity sampler per retained wavenumber."""

    samplers: dict[float, Callable[[np.ndarray], np.ndarray]]
    xi_support: tuple[float, float]
    smoothness_certificate: bool = True
    label: str = ""

    def xis(self) -> list[float]:
        return sorted(self.samplers)


def as_sampler(fhat0) -> Callable[[np.ndarray], np.ndarray]:
    """Adapt closed-form or gridded initial data to a velocity sampler.

    Gridded data (a VSliceFunction) is cubic-splined onto query points and
    extended by zero outside its node range.
    """
    if callable(fhat0):
        return fhat0
    if isinstance(fhat0, VSliceFunction):
        nodes = fhat0.grid.nodes
        spline = CubicSpline(nodes, fhat0.values)
        lo, hi = nodes[0], nodes[-1]

        def sampler(v):
            v = np.asarray(v, dtype=float)
            out = np.where((v >= lo) & (v <= hi), spline(v), 0.0)
            return out.astype(complex)

        return sampler
    raise TypeError("initial data must be a sampler or a VSliceFunction")


class SliceWorkspace:
    """Per-wavenumber cache: canonical factor and boundary data on the mesh."""

    def __init__(self, xi: float, cfg: CanonicalMeshConfig | None = None,
                 holder_bound: float = 200.0):
        self.xi = float(xi)
        self.sol = get_canonical(self.xi, cfg)
        self.chi = self.sol.chi
        self.lam = lambda_of_xi(self.xi) if abs(self.xi) < SQRT_PI else None
        self.holder_bound = holder_bound
        tau = self.sol.tau
        self.tau = tau
        self.w = self.sol.w
        self.phi_tau = gaussian_weight(tau)
        self.A = boundary_A(self.xi, tau)
        self.B = boundary_B(tau)
        self.Ap = self.A + self.B
        self.Am = self.A - self.B
        self.egamma = np.exp(self.sol.gamma_mesh)
        if self.chi == -1:
            eig = 1.0 + self.lam + 1j * self.xi * tau
            self._c_weight = self.phi_tau / (self.egamma * self.Ap * (tau + 1j))
            self._c_denom = complex(np.dot(self.w, self._c_weight / eig))

    def eigen_profile(self, v):
        """1 / (1 + lam + i xi v); the xi-slice of the diffusion attractor."""
        if self.lam is None:
            raise DegenerateDataError("no eigenbranch at |xi| >= sqrt(pi)")
        return 1.0 / (1.0 + self.lam + 1j * self.xi * np.asarray(v, dtype=float))


def compute_C0(ws: SliceWorkspace, fhat0) -> complex:
    """Eigen-amplitude from the negative-index solvability condition.

    Ratio of two Cauchy-type integrals against the shared weight
    phi / (exp(Gamma+) (A+B) (tau + i)); the numerator carries fhat0, the
    denominator the eigen profile 1/(1 + lam + i xi tau). Zero for chi = 0.
    """
    if ws.chi == 0:
        return 0.0 + 0.0j
    s = as_sampler(fhat0)
    num = complex(np.dot(ws.w, ws._c_weight * np.asarray(s(ws.tau), dtype=complex)))
    scale = float(np.dot(np.abs(ws.w), np.abs(ws._c_weight)))
    if abs(ws._c_denom) < 1e-13 * max(scale, 1e-300):
        raise DegenerateDataError("solvability normalization integral vanished")
    return num / ws._c_denom


def _holder_screen(tau: np.ndarray, F0: np.ndarray, bound: float):
    """Warn when local Holder-1/2 quotients |dF| / dtau^{1/2} look unbounded."""
    dt = np.diff(tau)
    q = np.abs(np.diff(F0)) / np.sqrt(dt)
    worst = float(np.max(q)) if q.size else 0.0
    if worst > bound:
        warnings.warn(
            f"initial slice fails the smoothness screen (quotient {worst:.3g})",
            SmoothnessWarning, stacklevel=3)


def build_F0(ws: SliceWorkspace, fhat0, C0: complex) -> np.ndarray:
    """Free function F0 on the workspace mesh (eigen part subtracted)."""
    s = as_sampler(fhat0)
    g0 = np.asarray(s(ws.tau), dtype=complex)
    if ws.chi == -1:
        g0 = g0 - C0 * ws.eigen_profile(ws.tau)
    F0 = ws.phi_tau * g0
    _holder_screen(ws.tau, F0, ws.holder_bound)
    return F0


def _kred_mesh(ws: SliceWorkspace, g0: np.ndarray):
    """Reduced solution Kred = K0/phi on the mesh plus the PV density/spline."""
    dens = ws.phi_tau * g0 / (ws.egamma * ws.Ap)
    spline = CubicSpline(ws.tau, dens)
    T = ws.sol.cfg.truncation
    I = pv_batch(ws.tau, ws.w, dens, ws.tau, dens, spline(ws.tau, 1), -T, T)
    kred = ws.A * g0 / (ws.Am * ws.Ap) - 1j * ws.egamma * I / ws.Am
    return kred, dens, spline


def compute_K0(ws: SliceWorkspace, fhat0, C0: complex) -> np.ndarray:
    """Continuous-spectrum coefficient K0 on the workspace mesh."""
    s = as_sampler(fhat0)
    g0 = np.asarray(s(ws.tau), dtype=complex)
    if ws.chi == -1:
        g0 = g0 - C0 * ws.eigen_profile(ws.tau)
    kred, _, _ = _kred_mesh(ws, g0)
    return ws.phi_tau * kred


@dataclass
class SpectralSlice:
    """Extracted spectral data of one wavenumber slice.

    ``K0`` is sampled on the workspace mesh ``nodes``; off-mesh values come
    from :meth:`kred_at` (the reduced form K0/phi, stable at large |v|).
    """

    xi: float
    lam: float | None
    chi: int
    C0: complex
    nodes: np.ndarray
    K0: np.ndarray
    workspace: SliceWorkspace | None = field(default=None, repr=False, compare=False)
    _sampler: Callable | None = field(default=None, repr=False, compare=False)
    _kred: np.ndarray | None = field(default=None, repr=False, compare=False)
    _dens: np.ndarray | None = field(default=None, repr=False, compare=False)
    _dens_spline: CubicSpline | None = field(default=None, repr=False, compare=False)

    def _require_workspace(self) -> SliceWorkspace:
        if self.workspace is None:
            raise DegenerateDataError(
                "slice was deserialized without a workspace; rebuild via extract_slice")
        return self.workspace

    def g0_at(self, v):
        """Initial slice minus the eigen part, at arbitrary velocities."""
        ws = self._require_workspace()
        g0 = np.asarray(self._sampler(v), dtype=complex)
        if self.chi == -1:
            g0 = g0 - self.C0 * ws.eigen_profile(v)
        return g0

    def kred_at(self, v):
        """K0/phi off-mesh, via the same reduced formula used on-mesh."""
        ws = self._require_workspace()
        v = np.atleast_1d(np.asarray(v, dtype=float))
        g0 = self.g0_at(v)
        A = boundary_A(ws.xi, v)
        B = boundary_B(v)
        egv = np.exp(ws.sol.gamma_plus_at(v))
        dens_v = gaussian_weight(v) * g0 / (egv * (A + B))
        T = ws.sol.cfg.truncation
        I = pv_batch(ws.tau, ws.w, self._dens, v, dens_v,
                     self._dens_spline(v, 1), -T, T)
        return A * g0 / ((A - B) * (A + B)) - 1j * egv * I / (A - B)

    def K0_at(self, v):
        return gaussian_weight(v) * self.kred_at(v)


def extract_slice(ws: SliceWorkspace, fhat0) -> SpectralSlice:
    """Full coefficient extraction: C0, then K0 from the reduced free function."""
    s = as_sampler(fhat0)
    C0 = compute_C0(ws, s)
    g0 = np.asarray(s(ws.tau), dtype=complex)
    if ws.chi == -1:
        g0 = g0 - C0 * ws.eigen_profile(ws.tau)
    _holder_screen(ws.tau, ws.phi_tau * g0, ws.holder_bound)
    kred, dens, spline = _kred_mesh(ws, g0)
    return SpectralSlice(
        xi=ws.xi, lam=ws.lam, chi=ws.chi, C0=C0, nodes=ws.tau,
        K0=ws.phi_tau * kred, workspace=ws, _sampler=s, _kred=kred,
        _dens=dens, _dens_spline=spline)


def slice_to_json(sl: SpectralSlice) -> str:
    """Serialize the extracted data (not the workspace) as JSON.

    Signed zeros are normalized (+0.0) so identical slices always render
    byte-identically, even after a load/save cycle.
    """
    payload = {
        "schema_version": 1,
        "xi": sl.xi + 0.0,
        "lambda": None if sl.lam is None else sl.lam + 0.0,
        "chi": sl.chi,
        "C0": [sl.C0.real + 0.0, sl.C0.imag + 0.0],
        "nodes": (sl.nodes + 0.0).tolist(),
        "K0_re": (sl.K0.real + 0.0).tolist(),
        "K0_im": (sl.K0.imag + 0.0).tolist(),
    }
    return json.dumps(payload, sort_keys=True)


def slice_from_json(text: str) -> SpectralSlice:
    """Rebuild a bare slice (no evaluator) from its JSON form."""
    d = json.loads(text)
    return SpectralSlice(
        xi=float(d["xi"]),
        lam=None if d["lambda"] is None else float(d["lambda"]),
        chi=int(d["chi"]),
        C0=complex(d["C0"][0], d["C0"][1]),
        nodes=np.asarray(d["nodes"], dtype=float),
        K0=np.asarray(d["K0_re"], dtype=float) + 1j * np.asarray(d["K0_im"], dtype=float))
