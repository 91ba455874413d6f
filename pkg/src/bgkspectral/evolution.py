"""Time evolution of a wavenumber slice from its spectral data.

The propagated slice is

    fhat(t, v) = e^{lam t} C0 / (1 + lam + i xi v)                 (chi = -1 part)
               + e^{-t} [ i p.v. int e^{-i xi w t} K0(w)/(w - v) dw
                          + e^{-i xi v t} (xi - 2 i D(v)) K0(v)/phi(v) ],

i.e. the eigencoefficient rotates by e^{lam t} while the continuous-spectrum
density K picks up the free-streaming phase e^{(-1 - i xi v) t}. At t = 0 the
formula is the inverse of the coefficient extraction (transform identity).

The diffusion attractor ("GDS") is the pure eigen part with amplitude equal
to the initial density moment; general solutions decay onto it like e^{-t}.

An independent method-of-lines oracle (classical RK4 on the Gauss-Hermite
collocation of the generator) cross-checks the spectral propagation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .coefficients import InitialData, SliceWorkspace, SpectralSlice, extract_slice
from .dispersion import lambda_of_xi
from .errors import AccuracyWarning, DomainError, TimeStepError
from .operator import VSliceFunction
from .quadrature import VelocityGrid, gauss_hermite, phi_norm, pv_batch
from .specfun import dawson, gaussian_weight

__all__ = [
    "ComplexField2D",
    "evolve_spectral",
    "gds_solution",
    "density_moment",
    "oracle_integrate",
    "oracle_trajectory",
    "DecayReport",
    "decay_study",
    "reconstruction_error",
]


@dataclass
class ComplexField2D:
    """Complex field on a wavenumber grid x velocity grid, at one time."""

    xi_values: np.ndarray
    grid: VelocityGrid
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.xi_values = np.asarray(self.xi_values, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.xi_values.size, self.grid.nodes.size):
            raise ValueError("field shape must be (n_xi, n_v)")


def _kred_on_grid(sl: SpectralSlice, grid: VelocityGrid) -> np.ndarray:
    """Cache K0/phi at the grid nodes on the slice (t-independent)."""
    cache = getattr(sl, "_grid_cache", None)
    if cache is None:
        cache = {}
        object.__setattr__(sl, "_grid_cache", cache)
    key = (grid.order, float(grid.nodes[0]))
    if key not in cache:
        cache[key] = sl.kred_at(grid.nodes)
    return cache[key]


def _check_resolution(sl: SpectralSlice, t: float):
    ws = sl.workspace
    tau = ws.tau
    core = np.abs(tau) <= 6.0
    h = float(np.max(np.diff(tau[core])))
    if sl.xi == 0.0 or t == 0.0:
        return
    wavelength = 2.0 * np.pi / (abs(sl.xi) * t)
    if wavelength < 8.0 * h:
        need = int(np.ceil(tau.size * 8.0 * h / wavelength))
        warnings.warn(
            f"oscillation e^(-i xi v t) under-resolved on the mesh "
            f"(xi*t = {sl.xi * t:.3g}); need roughly {need} nodes",
            AccuracyWarning, stacklevel=3)


def evolve_spectral(sl: SpectralSlice, t: float,
                    grid: VelocityGrid | None = None) -> VSliceFunction:
    """Propagate one extracted slice to time t >= 0 on a velocity grid."""
    if t < 0.0:
        raise DomainError("spectral propagation is a forward semigroup; t >= 0")
    ws = sl._require_workspace()
    grid = grid or gauss_hermite(200)
    _check_resolution(sl, t)
    v = grid.nodes
    xi = sl.xi
    kred_v = _kred_on_grid(sl, grid)
    phase_v = np.exp(-1j * xi * v * t)
    densK = np.exp(-1j * xi * ws.tau * t) * sl.K0
    spl = CubicSpline(ws.tau, densK)
    K0_v = gaussian_weight(v) * kred_v
    T = ws.sol.cfg.truncation
    I = pv_batch(ws.tau, ws.w, densK, v, phase_v * K0_v, spl(v, 1), -T, T)
    bracket = 1j * I + phase_v * (xi - 2j * dawson(v)) * kred_v
    out = np.exp(-t) * bracket
    if sl.chi == -1:
        out = out + np.exp(sl.lam * t) * sl.C0 * ws.eigen_profile(v)
    return VSliceFunction(grid=grid, values=out, xi=xi)


def gds_solution(rho0_hat: complex, xi: float, t: float,
                 grid: VelocityGrid | None = None) -> VSliceFunction:
    """Diffusion-attractor slice e^{lam t} rho0 / (1 + lam + i xi v)."""
    grid = grid or gauss_hermite(200)
    lam = lambda_of_xi(xi)
    vals = np.exp(lam * t) * complex(rho0_hat) / (1.0 + lam + 1j * xi * grid.nodes)
    return VSliceFunction(grid=grid, values=vals, xi=float(xi))


def density_moment(f: VSliceFunction) -> complex:
    """int phi(v) fhat(v) dv; the hydrodynamic density of the slice."""
    return complex(f.grid.integrate(f.values))


def _rk4_rhs(y: np.ndarray, xi: float, grid: VelocityGrid) -> np.ndarray:
    return -(1.0 + 1j * xi * grid.nodes) * y + np.dot(grid.weights, y)


def oracle_trajectory(fhat0_slice: VSliceFunction, times, dt: float = 0.01):
    """Classical RK4 on the collocated generator; snapshots at given times."""
    if not 0.0 < dt <= 0.01:
        raise DomainError("oracle step must satisfy 0 < dt <= 0.01")
    times = [float(t) for t in times]
    if any(t < 0 for t in times) or any(b < a for a, b in zip(times, times[1:])):
        raise DomainError("oracle times must be nonnegative and ascending")
    grid, xi = fhat0_slice.grid, fhat0_slice.xi
    y = fhat0_slice.values.astype(complex).copy()
    out = []
    t_prev = 0.0
    for t_target in times:
        span = t_target - t_prev
        steps = max(1, int(np.ceil(span / dt - 1e-12)))
        h = span / steps if steps else 0.0
        for _ in range(steps):
            k1 = _rk4_rhs(y, xi, grid)
            k2 = _rk4_rhs(y + 0.5 * h * k1, xi, grid)
            k3 = _rk4_rhs(y + 0.5 * h * k2, xi, grid)
            k4 = _rk4_rhs(y + h * k3, xi, grid)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(y)):
                raise TimeStepError("non-finite stage values in the RK4 oracle")
        out.append(VSliceFunction(grid=grid, values=y.copy(), xi=xi))
        t_prev = t_target
    return out


def oracle_integrate(fhat0_slice: VSliceFunction, t_end: float,
                     dt: float = 0.01) -> VSliceFunction:
    """RK4 oracle state at a single final time."""
    return oracle_trajectory(fhat0_slice, [t_end], dt=dt)[-1]


def reconstruction_error(sl: SpectralSlice, grid: VelocityGrid) -> float:
    """Relative phi-L2 error of the t = 0 transform identity on the grid."""
    recon = evolve_spectral(sl, 0.0, grid)
    f0 = np.asarray(sl._sampler(grid.nodes), dtype=complex)
    denom = phi_norm(grid, f0)
    if denom == 0.0:
        raise DomainError("zero initial slice has no relative error")
    return phi_norm(grid, recon.values - f0) / denom


@dataclass
class DecayReport:
    """Norm histories and fitted rates of the approach to the attractor."""

    times: np.ndarray
    xis: list[float]
    lambdas: list[float | None]
    gds_norms: np.ndarray
    residual_norms: np.ndarray
    gds_slopes: list[float | None]
    residual_slopes: list[float | None]
    burn_in: float

    def residual_monotone(self, i: int) -> bool:
        """Residual norm strictly decreasing beyond the burn-in for slice i."""
        sel = self.times >= self.burn_in
        r = self.residual_norms[i, sel]
        return bool(np.all(np.diff(r) < 0.0))

    def ratio_monotone(self, i: int) -> bool:
        """Residual/attractor norm ratio strictly decreasing beyond burn-in.

        False when the attractor part vanishes (the ratio is undefined).
        """
        sel = self.times >= self.burn_in
        g = self.gds_norms[i, sel]
        if np.any(g <= 0.0):
            return False
        ratio = self.residual_norms[i, sel] / g
        return bool(np.all(np.diff(ratio) < 0.0))


def _fit_slope(times: np.ndarray, norms: np.ndarray) -> float | None:
    if norms.size < 3 or np.any(norms <= 0.0) or not np.all(np.isfinite(norms)):
        return None
    return float(np.polyfit(times, np.log(norms), 1)[0])


def decay_study(initial: InitialData, times, grid: VelocityGrid | None = None,
                burn_in: float = 1.0) -> DecayReport:
    """Evolve every slice of the initial data and fit decay rates.

    The attractor part is e^{lam t} C0 eigenprofile (zero for chi = 0); the
    residual is the full spectral solution minus that part. Slopes are least
    squares fits of log-norms over times >= burn_in (at least 3 samples).
    """
    grid = grid or gauss_hermite(200)
    times = np.sort(np.asarray(times, dtype=float))
    fit_sel = times >= burn_in
    if int(np.sum(fit_sel)) < 3:
        raise DomainError("need at least 3 sample times beyond the burn-in")
    xis = initial.xis()
    gds_norms = np.zeros((len(xis), times.size))
    res_norms = np.zeros_like(gds_norms)
    lams: list[float | None] = []
    for i, xi in enumerate(xis):
        ws = SliceWorkspace(xi)
        sl = extract_slice(ws, initial.samplers[xi])
        lams.append(sl.lam if sl.chi == -1 else None)
        for j, t in enumerate(times):
            ev = evolve_spectral(sl, float(t), grid)
            if sl.chi == -1:
                gds_vals = np.exp(sl.lam * t) * sl.C0 * ws.eigen_profile(grid.nodes)
            else:
                gds_vals = np.zeros_like(ev.values)
            gds_norms[i, j] = phi_norm(grid, gds_vals)
            res_norms[i, j] = phi_norm(grid, ev.values - gds_vals)
    gds_slopes = [_fit_slope(times[fit_sel], gds_norms[i, fit_sel])
                  for i in range(len(xis))]
    res_slopes = [_fit_slope(times[fit_sel], res_norms[i, fit_sel])
                  for i in range(len(xis))]
    return DecayReport(times=times, xis=xis, lambdas=lams,
                       gds_norms=gds_norms, residual_norms=res_norms,
                       gds_slopes=gds_slopes, residual_slopes=res_slopes,
                       burn_in=burn_in)
