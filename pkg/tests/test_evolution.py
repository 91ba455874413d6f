"""Propagation: spectral formula vs RK4 oracle, attractor algebra, decay fits."""

import numpy as np
import pytest

from bgkspectral.corpus import corpus_sampler, make_initial_data
from bgkspectral.dispersion import lambda_of_xi
from bgkspectral.errors import AccuracyWarning, DomainError
from bgkspectral.evolution import (ComplexField2D, DecayReport, decay_study,
                                   density_moment, evolve_spectral,
                                   gds_solution, oracle_integrate,
                                   oracle_trajectory, reconstruction_error)
from bgkspectral.operator import VSliceFunction
from bgkspectral.quadrature import gauss_hermite, phi_norm


def test_evolve_rejects_negative_time(slice_cache, gh200):
    sl = slice_cache("gaussian", 0.5)
    with pytest.raises(DomainError):
        evolve_spectral(sl, -0.1, gh200)


def test_gds_solution_closed_form(gh200):
    xi = 0.5
    lam = lambda_of_xi(xi)
    rho0 = 0.7 - 0.2j
    for t in (0.0, 1.0, 3.5):
        f = gds_solution(rho0, xi, t, gh200)
        expect = np.exp(lam * t) * rho0 / (1.0 + lam + 1j * xi * gh200.nodes)
        assert np.max(np.abs(f.values - expect)) == 0.0
        # the density moment reproduces e^{lam t} rho0 (normalization = 1)
        assert density_moment(f) == pytest.approx(np.exp(lam * t) * rho0,
                                                  abs=1e-9)


def test_attractor_evolution_matches_gds_solution(slice_cache, gh200):
    sl = slice_cache("gds", 0.5)
    assert sl.C0 == pytest.approx(1.0 + 0.0j, abs=1e-12)
    for t in (0.0, 0.8, 2.0):
        spectral = evolve_spectral(sl, t, gh200)
        closed = gds_solution(1.0 + 0.0j, 0.5, t, gh200)
        assert phi_norm(gh200, spectral.values - closed.values) < 1e-8


def test_gds_semigroup_property():
    grid = gauss_hermite(300)
    xi, rho0 = 0.5, 1.0 + 0.0j
    for t1, t2 in ((0.5, 0.5), (0.3, 1.7), (1.0, 2.0)):
        stepwise = gds_solution(density_moment(gds_solution(rho0, xi, t1, grid)),
                                xi, t2, grid)
        direct = gds_solution(rho0, xi, t1 + t2, grid)
        assert phi_norm(grid, stepwise.values - direct.values) < 1e-10


def test_oracle_validation(gh200):
    start = VSliceFunction(grid=gh200,
                           values=np.exp(-gh200.nodes ** 2).astype(complex),
                           xi=0.5)
    with pytest.raises(DomainError):
        oracle_trajectory(start, [1.0], dt=0.05)
    with pytest.raises(DomainError):
        oracle_trajectory(start, [2.0, 1.0])
    with pytest.raises(DomainError):
        oracle_trajectory(start, [-1.0])


def test_oracle_step_refinement(gh200):
    start = VSliceFunction(grid=gh200,
                           values=np.exp(-gh200.nodes ** 2).astype(complex),
                           xi=0.5)
    coarse = oracle_integrate(start, 1.0, dt=0.01)
    fine = oracle_integrate(start, 1.0, dt=0.004)
    assert phi_norm(gh200, coarse.values - fine.values) < 1e-10


def test_spectral_matches_oracle(slice_cache, gh200):
    sl = slice_cache("shifted-gaussian", 0.5)
    start = VSliceFunction(
        grid=gh200,
        values=corpus_sampler("shifted-gaussian", 0.5)(gh200.nodes).astype(complex),
        xi=0.5)
    snaps = oracle_trajectory(start, [0.5, 1.0, 2.0], dt=0.01)
    for t, snap in zip((0.5, 1.0, 2.0), snaps):
        spec = evolve_spectral(sl, t, gh200)
        rel = (phi_norm(gh200, spec.values - snap.values)
               / phi_norm(gh200, snap.values))
        assert rel < 1e-3


def test_reconstruction_error_zero_data(gh200, workspace_cache):
    from bgkspectral.coefficients import extract_slice

    sl = extract_slice(workspace_cache(0.5), lambda v: np.zeros_like(v, dtype=complex))
    with pytest.raises(DomainError):
        reconstruction_error(sl, gh200)


def test_resolution_warning_at_late_times(slice_cache, gh200):
    sl = slice_cache("gaussian", 1.5)
    with pytest.warns(AccuracyWarning):
        evolve_spectral(sl, 60.0, gh200)


def test_complex_field_validation(gh200):
    with pytest.raises(ValueError):
        ComplexField2D(xi_values=np.array([0.5, 1.0]), grid=gh200,
                       values=np.zeros((3, gh200.nodes.size), dtype=complex),
                       time=0.0)


def test_decay_study_needs_fit_window(gh200):
    initial = make_initial_data("gaussian", (0.5,))
    with pytest.raises(DomainError):
        decay_study(initial, np.linspace(0.0, 4.0, 5), gh200, burn_in=3.9)


def test_decay_study_report(gh200):
    initial = make_initial_data("shifted-gaussian", (0.5, 1.0))
    times = np.linspace(0.0, 4.0, 9)
    report = decay_study(initial, times, gh200, burn_in=1.0)
    assert isinstance(report, DecayReport)
    assert report.xis == [0.5, 1.0]
    for i, xi in enumerate(report.xis):
        lam = lambda_of_xi(xi)
        assert report.lambdas[i] == pytest.approx(lam, abs=1e-14)
        assert report.gds_slopes[i] == pytest.approx(lam, rel=1e-6)
        assert abs(report.residual_slopes[i] + 1.0) < 0.05
        assert report.ratio_monotone(i)
        assert report.residual_monotone(i)


def test_decay_study_attractor_has_no_transient(gh200):
    initial = make_initial_data("gds", (0.5,))
    report = decay_study(initial, np.linspace(0.0, 4.0, 9), gh200)
    assert float(np.max(report.residual_norms)) < 1e-6
