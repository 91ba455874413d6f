"""Quadrature rules: exactness, mesh grading, and PV integral behavior."""

import numpy as np
import pytest
from scipy import integrate

from bgkspectral import specfun
from bgkspectral.errors import DomainError, QuadratureError
from bgkspectral.quadrature import (PVKernelSpec, build_pv_mesh, gauss_hermite,
                                    gaussian_tail_bound, graded_edges,
                                    panel_nodes, phi_norm, pv_batch,
                                    pv_integral, pv_on_samples)

# -2 D(1), the exact value of p.v. int phi(w)/(w - 1) dw
HILBERT_AT_1 = -1.0761590138255368


def test_gauss_hermite_moments():
    g = gauss_hermite(64)
    # int phi v^{2k}: 1, 1/2, 3/4, 15/8
    assert float(np.sum(g.weights)) == pytest.approx(1.0, abs=1e-14)
    assert g.integrate(g.nodes ** 2) == pytest.approx(0.5, abs=1e-13)
    assert g.integrate(g.nodes ** 4) == pytest.approx(0.75, abs=1e-13)
    assert g.integrate(g.nodes ** 6) == pytest.approx(1.875, abs=1e-12)
    assert np.max(np.abs(g.nodes + g.nodes[::-1])) < 1e-12


def test_gauss_hermite_order_validation():
    with pytest.raises(DomainError):
        gauss_hermite(1)


def test_phi_norm_matches_quadrature():
    g = gauss_hermite(80)
    vals = np.exp(-0.5 * g.nodes ** 2) * (1.0 + 0.3j * g.nodes)
    oracle, _ = integrate.quad(
        lambda v: specfun.gaussian_weight(v) * np.exp(-v * v) * (1.0 + 0.09 * v * v),
        -np.inf, np.inf)
    assert phi_norm(g, vals) == pytest.approx(np.sqrt(oracle), abs=1e-12)


def test_graded_edges_cover_and_refine():
    edges = graded_edges(-8.0, 8.0, centers=(0.7,), inner=1e-4, max_width=1.0)
    assert edges[0] == -8.0 and edges[-1] == 8.0
    assert np.all(np.diff(edges) > 0.0)
    widths = np.diff(edges)
    assert widths.min() <= 1e-4 * (1 + 1e-12)
    assert widths.max() <= 1.0 + 1e-12
    # the finest panels bracket the requested center
    k = int(np.argmin(np.abs(edges - 0.7)))
    assert abs(edges[k] - 0.7) < 1e-3


def test_panel_nodes_weight_sum():
    edges = graded_edges(-3.0, 5.0, centers=(1.0,), inner=1e-3, max_width=0.5)
    nodes, weights = panel_nodes(edges, order=12)
    assert float(np.sum(weights)) == pytest.approx(8.0, abs=1e-12)
    assert np.all((nodes > -3.0) & (nodes < 5.0))


def test_pv_log_term_for_constant_density():
    # g == 1: the subtracted quotient vanishes and only the log term remains
    spec = PVKernelSpec(pole=0.6, integrand=lambda w: np.ones_like(w))
    expect = np.log((8.0 - 0.6) / (0.6 + 8.0))
    assert pv_integral(spec) == pytest.approx(expect, abs=1e-12)


def test_pv_matches_hilbert_oracle():
    spec = PVKernelSpec(pole=1.0, integrand=specfun.gaussian_weight)
    val = pv_integral(spec)
    assert val == pytest.approx(HILBERT_AT_1, abs=1e-10)
    fine = pv_integral(PVKernelSpec(pole=1.0, integrand=specfun.gaussian_weight,
                                    refinement=512))
    assert val == pytest.approx(fine, abs=1e-10)


def test_pv_linearity():
    def g1(w):
        return np.exp(-w * w)

    def g2(w):
        return w * np.exp(-0.5 * w * w)

    a, b = 1.3 - 0.2j, -0.4 + 2.1j
    combo = pv_integral(PVKernelSpec(0.7, lambda w: a * g1(w) + b * g2(w)))
    parts = (a * pv_integral(PVKernelSpec(0.7, g1))
             + b * pv_integral(PVKernelSpec(0.7, g2)))
    assert combo == pytest.approx(parts, abs=1e-11)


def test_pv_rejects_bad_input():
    with pytest.raises(QuadratureError):
        pv_integral(PVKernelSpec(pole=9.5, integrand=specfun.gaussian_weight))
    with pytest.raises(QuadratureError):
        with np.errstate(divide="ignore", invalid="ignore"):
            pv_integral(PVKernelSpec(pole=0.0, integrand=lambda w: 1.0 / w))


def test_pv_batch_matches_single_pole_route():
    poles = np.array([-1.3, 0.2, 0.7])
    nodes, weights = build_pv_mesh(0.0, 8.0, refinement=512,
                                   feature_centers=tuple(poles))

    def dens(w):
        return np.exp(-w * w) * (np.cos(w) + 0.5j * np.sin(w))

    def ddens(w):
        return (np.exp(-w * w) * (-2.0 * w * (np.cos(w) + 0.5j * np.sin(w))
                                  - np.sin(w) + 0.5j * np.cos(w)))

    vals = dens(nodes)
    batch = pv_batch(nodes, weights, vals, poles, dens(poles), ddens(poles),
                     -8.0, 8.0)
    for k, p in enumerate(poles):
        single = pv_on_samples(nodes, weights, vals, float(p),
                               complex(dens(p)), complex(ddens(p)), -8.0, 8.0)
        assert batch[k] == pytest.approx(single, abs=1e-13)


def test_pv_pole_on_a_node_uses_derivative_fallback():
    nodes, weights = build_pv_mesh(0.0, 8.0, refinement=256)
    pole = float(nodes[len(nodes) // 2])

    def dens(w):
        return np.exp(-w * w)

    on_node = pv_on_samples(nodes, weights, dens(nodes), pole,
                            complex(dens(pole)),
                            complex(-2.0 * pole * dens(pole)), -8.0, 8.0)
    shifted = pv_integral(PVKernelSpec(pole=pole + 1e-7,
                                       integrand=dens, refinement=512))
    assert on_node == pytest.approx(shifted, abs=1e-5)


def test_gaussian_tail_bound_dominates_true_tail():
    for T, pole in ((6.0, 0.0), (8.0, 1.0)):
        right, _ = integrate.quad(
            lambda w: specfun.gaussian_weight(w) / (w - pole), T, np.inf)
        left, _ = integrate.quad(
            lambda w: specfun.gaussian_weight(w) / (w - pole), -np.inf, -T)
        assert abs(right + left) <= gaussian_tail_bound(T, pole)
