"""Self-verification suites for the CLI `verify` subcommand.

Each suite runs a handful of fast invariant checks and reports
(name, passed, detail) triples. The checks compare independent routes
(quadrature vs closed forms, explicit vs ratio forms, adaptive winding vs
the proven rule), so an injected fault in a primitive shows up as a suite
failure; `inject_fault("dawson-sign-flip")` is the standard canary.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from . import specfun
from .dispersion import constraint_residual, lambda_of_xi
from .errors import DomainError, QuadratureError, SpectralProximityError
from .operator import VSliceFunction, apply_L, apply_resolvent, collision_moment, spectrum_distance
from .quadrature import PVKernelSpec, gauss_hermite, phi_inner, phi_norm, pv_integral
from .riemann import boundary_G, boundary_G_from_AB, get_canonical, winding_index
from .specfun import SQRT_PI, gaussian_weight

__all__ = ["Check", "run_suite", "run_suites", "inject_fault", "SUITES"]

# Frozen reference: Dawson integral at 1, from the defining quadrature
# exp(-1) * int_0^1 exp(x^2) dx evaluated independently.
DAWSON_1 = 0.5380795069127684


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


@contextmanager
def inject_fault(name: str | None):
    """Temporarily corrupt a primitive so the suites can prove they bite."""
    if name is None:
        yield
        return
    if name == "dawson-sign-flip":
        orig = specfun.dawson
        specfun.dawson = lambda v: -orig(v)
        try:
            yield
        finally:
            specfun.dawson = orig
        return
    raise DomainError(f"unknown fault {name!r}")


def _check(name, passed, detail) -> Check:
    return Check(name=name, passed=bool(passed), detail=detail)


def _suite_specfun() -> list[Check]:
    out = []
    g = gauss_hermite(120)
    mass = float(np.sum(g.weights))
    out.append(_check("maxwellian unit mass", abs(mass - 1.0) < 1e-13,
                      f"|sum w - 1| = {abs(mass - 1.0):.2e}"))
    vs = np.array([-2.5, -1.0, -0.3, 0.4, 1.0, 2.2])
    odd = np.max(np.abs(specfun.dawson(vs) + specfun.dawson(-vs)))
    out.append(_check("dawson odd", odd < 1e-15, f"max asym = {odd:.2e}"))
    h = 1e-5
    ode = np.max(np.abs((specfun.dawson(vs + h) - specfun.dawson(vs - h)) / (2 * h)
                        - (1.0 - 2.0 * vs * specfun.dawson(vs))))
    out.append(_check("dawson ODE D' = 1 - 2vD", ode < 1e-8, f"max resid = {ode:.2e}"))
    d1 = abs(float(specfun.dawson(1.0)) - DAWSON_1)
    out.append(_check("dawson(1) frozen value", d1 < 1e-12, f"|D(1) - ref| = {d1:.2e}"))
    worst = 0.0
    for v in (-3.0, -1.0, -0.1, 0.1, 1.0, 3.0):
        pv = pv_integral(PVKernelSpec(pole=v, integrand=gaussian_weight))
        worst = max(worst, abs(pv - (-2.0 * float(specfun.dawson(v)))))
    out.append(_check("hilbert transform is -2 dawson", worst < 1e-8,
                      f"max |pv + 2D| = {worst:.2e}"))
    xi1 = abs(specfun.xi_function(1.0) - 0.757872156141312)
    out.append(_check("xi_function(1) frozen value", xi1 < 1e-12, f"err = {xi1:.2e}"))
    lim = abs(specfun.xi_function(1e-8) - SQRT_PI)
    out.append(_check("xi_function limit sqrt(pi)", lim < 1e-6, f"err = {lim:.2e}"))
    tail = 20.0 * specfun.xi_function(20.0)
    out.append(_check("xi_function ~ 1/eta tail", 0.99 < tail < 1.0, f"20*Xi(20) = {tail:.6f}"))
    grid = np.linspace(0.05, 4.0, 40)
    mono = bool(np.all(np.diff(specfun.xi_function(grid)) < 0))
    out.append(_check("xi_function strictly decreasing", mono, "checked on (0.05, 4)"))
    return out


def _suite_quadrature() -> list[Check]:
    out = []
    g = gauss_hermite(64)
    m2 = abs(g.integrate(g.nodes ** 2) - 0.5)
    m4 = abs(g.integrate(g.nodes ** 4) - 0.75)
    out.append(_check("gauss-hermite moments", max(m2, m4) < 1e-12,
                      f"|m2 - 1/2| = {m2:.2e}, |m4 - 3/4| = {m4:.2e}"))
    sym = np.max(np.abs(g.nodes + g.nodes[::-1]))
    out.append(_check("node symmetry", sym < 1e-12, f"max = {sym:.2e}"))
    rng = np.random.default_rng(7)
    a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))

    def g1(w):
        return np.exp(-w * w)

    def g2(w):
        return w * np.exp(-0.5 * w * w)

    lin = abs(pv_integral(PVKernelSpec(0.7, lambda w: a * g1(w) + b * g2(w)))
              - (a * pv_integral(PVKernelSpec(0.7, g1))
                 + b * pv_integral(PVKernelSpec(0.7, g2))))
    out.append(_check("pv linearity", lin < 1e-10, f"defect = {lin:.2e}"))
    coarse = pv_integral(PVKernelSpec(1.0, gaussian_weight, refinement=256))
    fine = pv_integral(PVKernelSpec(1.0, gaussian_weight, refinement=512))
    out.append(_check("pv self-convergence", abs(coarse - fine) < 1e-10,
                      f"|delta| = {abs(coarse - fine):.2e}"))
    ident = abs(coarse - (-2.0 * float(specfun.dawson(1.0))))
    out.append(_check("pv matches -2 dawson at v=1", ident < 1e-8, f"err = {ident:.2e}"))
    try:
        pv_integral(PVKernelSpec(9.5, gaussian_weight, truncation=8.0))
        out.append(_check("pole outside window rejected", False, "no error raised"))
    except QuadratureError:
        out.append(_check("pole outside window rejected", True, "QuadratureError"))
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            pv_integral(PVKernelSpec(0.0, lambda w: 1.0 / w))
        out.append(_check("non-finite samples rejected", False, "no error raised"))
    except QuadratureError:
        out.append(_check("non-finite samples rejected", True, "QuadratureError"))
    return out


def _suite_operator() -> list[Check]:
    out = []
    grid = gauss_hermite(200)
    xi = 0.5
    one = VSliceFunction(grid=grid, values=np.ones_like(grid.nodes, dtype=complex), xi=xi)
    m0 = abs(collision_moment(one) - 1.0)
    v1 = VSliceFunction(grid=grid, values=grid.nodes.astype(complex), xi=xi)
    m1 = abs(collision_moment(v1))
    v2 = VSliceFunction(grid=grid, values=grid.nodes.astype(complex) ** 2, xi=xi)
    m2 = abs(collision_moment(v2) - 0.5)
    out.append(_check("collision moments 1, v, v^2", max(m0, m1, m2) < 1e-12,
                      f"errors {m0:.1e}, {m1:.1e}, {m2:.1e}"))
    lam = lambda_of_xi(xi)
    eig = VSliceFunction(grid=grid, values=1.0 / (1.0 + lam + 1j * xi * grid.nodes), xi=xi)
    resid = phi_norm(grid, apply_L(eig).values - lam * eig.values)
    out.append(_check("eigen relation L B = lam B", resid < 1e-8, f"residual = {resid:.2e}"))
    rng = np.random.default_rng(11)
    hv = rng.normal(size=grid.nodes.size) + 1j * rng.normal(size=grid.nodes.size)
    hv *= np.exp(-0.25 * grid.nodes ** 2)
    h = VSliceFunction(grid=grid, values=hv, xi=xi)
    worst = 0.0
    for lam_r in (1.0, 2.0 + 1.0j):
        r = apply_resolvent(h, lam_r)
        back = apply_L(r).values - lam_r * r.values
        worst = max(worst, phi_norm(grid, back - h.values) / phi_norm(grid, h.values))
    out.append(_check("resolvent round trip", worst < 1e-10, f"rel err = {worst:.2e}"))
    dissip = phi_inner(grid, apply_L(h).values, h.values).real
    dissip_ok = dissip <= 1e-12 * phi_norm(grid, h.values) ** 2
    out.append(_check("generator dissipative", dissip_ok, f"Re<Lh,h> = {dissip:.2e}"))
    dists = [spectrum_distance(-0.5), spectrum_distance(-1 + 2j),
             spectrum_distance(1.0), spectrum_distance(-2.0)]
    dist_ok = (dists[0] == 0.0 and dists[1] == 0.0
               and abs(dists[2] - 1.0) < 1e-15 and abs(dists[3] - 1.0) < 1e-15)
    out.append(_check("spectrum distances", dist_ok, f"{dists}"))
    rejected = 0
    for bad in (-0.5, -1 + 2j):
        try:
            apply_resolvent(h, bad)
        except SpectralProximityError:
            rejected += 1
    out.append(_check("spectral proximity rejected", rejected == 2, f"{rejected}/2"))
    res = abs(constraint_residual(lam, xi))
    out.append(_check("dispersion constraint", res < 1e-10, f"|resid| = {res:.2e}"))
    return out


def _suite_riemann(light: bool = False) -> list[Check]:
    out = []
    vs = np.linspace(-6.0, 6.0, 241)
    worst = max(np.max(np.abs(boundary_G(xi, vs) - boundary_G_from_AB(xi, vs)))
                for xi in (0.5, 2.0))
    out.append(_check("G explicit form vs (A-B)/(A+B)", worst < 1e-12, f"max = {worst:.2e}"))
    g0 = abs(boundary_G(0.5, 0.0) - (0.5 + SQRT_PI) / (0.5 - SQRT_PI))
    out.append(_check("G(0) endpoint value", g0 < 1e-12, f"err = {g0:.2e}"))
    gi = abs(boundary_G(0.5, 12.0) - 1.0) + abs(boundary_G(0.5, -12.0) - 1.0)
    out.append(_check("G -> 1 at infinity", gi < 1e-12, f"err = {gi:.2e}"))
    conj = np.max(np.abs(boundary_G(0.5, -vs) - np.conj(boundary_G(0.5, vs))))
    out.append(_check("G conjugate symmetry", conj < 1e-13, f"max = {conj:.2e}"))
    out.extend(_suite_index())
    sol = get_canonical(0.5)
    net = abs(sol.L.imag[0] + sol.L.imag[-1])
    out.append(_check("tracked log conjugate ends", net < 1e-12, f"|sum| = {net:.2e}"))
    gsym = abs(sol.gamma_plus_at(1.7) - np.conj(sol.gamma_plus_at(-1.7)))
    out.append(_check("gamma conjugate symmetry", gsym < 1e-10, f"err = {gsym:.2e}"))
    mags = np.abs(np.exp(sol.gamma_mesh))
    out.append(_check("canonical factor nonvanishing",
                      bool(np.all((mags > 1e-3) & (mags < 1e3))),
                      f"range [{mags.min():.3f}, {mags.max():.3f}]"))
    worst = 0.0
    pts = (0.3,) if light else (0.3, 1.0)
    for xi in (0.5, 2.0):
        s = get_canonical(xi)
        for v in pts:
            xp, xm = s.plemelj_oracle(v)
            worst = max(worst, abs(xp / xm - boundary_G(xi, v)))
    out.append(_check("plemelj boundary relation", worst < 1e-6, f"max = {worst:.2e}"))
    return out


def _suite_index() -> list[Check]:
    out = []
    neg = all(winding_index(x).chi == -1 for x in (0.1, 0.5, 1.0, 1.7))
    zer = all(winding_index(x).chi == 0 for x in (-2.0, 1.8, 3.75))
    out.append(_check("winding -1 inside the critical band", neg, "xi in {0.1,0.5,1,1.7}"))
    out.append(_check("winding 0 outside", zer, "xi in {-2,1.8,3.75}"))
    stable = all(winding_index(x, n_start=4003).chi == winding_index(x).chi
                 for x in (0.5, 1.7, 1.8))
    out.append(_check("winding stable under refinement", stable, "n doubled"))
    curve = winding_index(0.5).image_curve
    closed = abs(complex(curve[0, 1], curve[0, 2]) - complex(curve[-1, 1], curve[-1, 2]))
    out.append(_check("image curve closes near 1", closed < 1e-12, f"gap = {closed:.2e}"))
    return out


SUITES = {
    "specfun": _suite_specfun,
    "quadrature": _suite_quadrature,
    "operator": _suite_operator,
    "riemann": _suite_riemann,
    "index": _suite_index,
}


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name]()


def run_suites(names=None, inject: str | None = None) -> dict:
    """Run the named suites (all by default) under an optional fault."""
    names = list(names) if names else ["specfun", "quadrature", "operator", "riemann"]
    report: dict = {"schema_version": 1, "inject": inject, "suites": {}}
    with inject_fault(inject):
        for name in names:
            checks = run_suite(name)
            report["suites"][name] = {
                "passed": all(c.passed for c in checks),
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                           for c in checks],
            }
    report["passed"] = all(s["passed"] for s in report["suites"].values())
    return report
