"""Generator and resolvent: collocation-solve oracle and spectral guards."""

import numpy as np
import pytest

from bgkspectral.dispersion import lambda_of_xi
from bgkspectral.errors import SpectralProximityError
from bgkspectral.operator import (VSliceFunction, apply_L, apply_resolvent,
                                  collision_moment, spectrum_distance)
from bgkspectral.quadrature import gauss_hermite, phi_inner, phi_norm


def _random_profile(grid, xi, seed=11):
    rng = np.random.default_rng(seed)
    vals = rng.normal(size=grid.nodes.size) + 1j * rng.normal(size=grid.nodes.size)
    vals *= np.exp(-0.25 * grid.nodes ** 2)
    return VSliceFunction(grid=grid, values=vals, xi=xi)


def _resolvent_oracle(h, lam):
    """Independent route: solve the collocated linear system (L - lam) f = h."""
    n = h.grid.nodes.size
    mat = np.diag(-(1.0 + 1j * h.xi * h.grid.nodes) - lam).astype(complex)
    mat += np.ones((n, 1)) @ h.grid.weights[None, :]
    return np.linalg.solve(mat, h.values)


def test_collision_moments(gh200):
    one = VSliceFunction(grid=gh200, values=np.ones(gh200.nodes.size), xi=0.5)
    assert collision_moment(one) == pytest.approx(1.0, abs=1e-13)
    v1 = VSliceFunction(grid=gh200, values=gh200.nodes, xi=0.5)
    assert collision_moment(v1) == pytest.approx(0.0, abs=1e-13)
    v2 = VSliceFunction(grid=gh200, values=gh200.nodes ** 2, xi=0.5)
    assert collision_moment(v2) == pytest.approx(0.5, abs=1e-12)


def test_vslice_validation(gh200):
    with pytest.raises(ValueError):
        VSliceFunction(grid=gh200, values=np.ones(3), xi=0.5)


def test_apply_L_is_linear(gh200):
    f = _random_profile(gh200, 0.7, seed=3)
    g = _random_profile(gh200, 0.7, seed=4)
    combo = VSliceFunction(grid=gh200, values=2.0 * f.values - 1j * g.values, xi=0.7)
    direct = apply_L(combo).values
    parts = 2.0 * apply_L(f).values - 1j * apply_L(g).values
    assert np.max(np.abs(direct - parts)) < 1e-12


def test_eigen_relation(gh200):
    for xi in (0.25, 0.5, 1.0):
        lam = lambda_of_xi(xi)
        prof = VSliceFunction(grid=gh200,
                              values=1.0 / (1.0 + lam + 1j * xi * gh200.nodes),
                              xi=xi)
        resid = phi_norm(gh200, apply_L(prof).values - lam * prof.values)
        assert resid < 1e-8


def test_generator_dissipative(gh200):
    h = _random_profile(gh200, 0.5)
    val = phi_inner(gh200, apply_L(h).values, h.values).real
    assert val <= 1e-12 * phi_norm(gh200, h.values) ** 2


def test_resolvent_matches_collocation_solve():
    grid = gauss_hermite(160)
    h = _random_profile(grid, 0.5)
    for lam in (1.0, 2.0 + 1.0j, -0.5 + 3.0j, -2.0):
        closed = apply_resolvent(h, lam).values
        oracle = _resolvent_oracle(h, lam)
        rel = phi_norm(grid, closed - oracle) / phi_norm(grid, oracle)
        assert rel < 1e-10


def test_resolvent_round_trip(gh200):
    h = _random_profile(gh200, 1.0)
    for lam in (1.0, 2.0 + 1.0j, -2.0):
        r = apply_resolvent(h, lam)
        back = apply_L(r).values - lam * r.values
        rel = phi_norm(gh200, back - h.values) / phi_norm(gh200, h.values)
        assert rel < 1e-10


def test_spectrum_distance():
    assert spectrum_distance(-0.5) == 0.0
    assert spectrum_distance(-1.0 + 2.0j) == 0.0
    assert spectrum_distance(1.0) == pytest.approx(1.0)
    assert spectrum_distance(-2.0) == pytest.approx(1.0)
    assert spectrum_distance(-0.5 + 0.2j) == pytest.approx(0.2)
    assert spectrum_distance(0.5 + 0.3j) == pytest.approx(np.hypot(0.5, 0.3))


def test_resolvent_rejects_spectrum(gh200):
    h = _random_profile(gh200, 0.5)
    for lam in (-0.5, -1.0 + 2.0j, -0.999999, 1e-8):
        with pytest.raises(SpectralProximityError):
            apply_resolvent(h, lam)
