"""Coefficient extraction: amplitudes, reduced solution, serialization."""

import numpy as np
import pytest

from bgkspectral.coefficients import (InitialData, SliceWorkspace, as_sampler,
                                      compute_C0, compute_K0, extract_slice,
                                      slice_from_json, slice_to_json)
from bgkspectral.corpus import corpus_sampler, make_initial_data
from bgkspectral.errors import DegenerateDataError, SmoothnessWarning
from bgkspectral.evolution import reconstruction_error
from bgkspectral.operator import VSliceFunction
from bgkspectral.quadrature import gauss_hermite

# Pinned regression value for the Gaussian profile at xi = 0.5; its
# correctness is established by the reconstruction identity tested below.
C0_GAUSSIAN_HALF = 0.8182317317923969


def test_as_sampler_passthrough_and_grid_adapter(gh200):
    def f(v):
        return np.exp(-np.asarray(v) ** 2)

    assert as_sampler(f) is f
    gridded = VSliceFunction(grid=gh200, values=f(gh200.nodes), xi=0.5)
    s = as_sampler(gridded)
    v = np.array([-1.2, 0.0, 2.5])
    # cubic-spline accuracy on the ~0.16 node spacing of the 200-point rule
    assert np.max(np.abs(s(v) - f(v))) < 1e-4
    assert np.max(np.abs(s(gh200.nodes) - f(gh200.nodes))) < 1e-13
    # zero extension beyond the node range
    assert np.all(s(np.array([-60.0, 60.0])) == 0.0)
    with pytest.raises(TypeError):
        as_sampler(3.0)


def test_initial_data_bundle():
    data = make_initial_data("gaussian", (0.5, 0.25))
    assert data.xis() == [0.25, 0.5]
    assert data.label == "gaussian"
    assert isinstance(data, InitialData)


def test_c0_gaussian_regression(workspace_cache):
    ws = workspace_cache(0.5)
    c0 = compute_C0(ws, corpus_sampler("gaussian", 0.5))
    assert abs(c0.imag) < 1e-10
    assert c0.real == pytest.approx(C0_GAUSSIAN_HALF, abs=1e-10)


def test_c0_is_one_for_attractor_data(workspace_cache):
    # fhat0 = eigen profile: the solvability ratio collapses to exactly 1
    ws = workspace_cache(0.5)
    c0 = compute_C0(ws, corpus_sampler("gds", 0.5))
    assert c0 == pytest.approx(1.0 + 0.0j, abs=1e-12)


def test_c0_vanishes_outside_the_band(workspace_cache):
    ws = workspace_cache(2.0)
    assert ws.chi == 0
    assert compute_C0(ws, corpus_sampler("gaussian", 2.0)) == 0.0


def test_attractor_data_has_no_continuous_part(workspace_cache, slice_cache):
    sl = slice_cache("gds", 0.5)
    assert np.max(np.abs(sl.K0)) < 1e-10
    assert np.max(np.abs(sl.kred_at(np.array([-1.0, 0.3, 2.0])))) < 1e-8


def test_smoothness_screen_warns_on_jumps(workspace_cache):
    ws = SliceWorkspace(0.5, holder_bound=5.0)

    def heaviside(v):
        return np.where(np.asarray(v) >= 0.0, 1.0 + 0.0j, 0.0j)

    with pytest.warns(SmoothnessWarning):
        extract_slice(ws, heaviside)
    # a smooth profile stays silent under the same bound
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("error", SmoothnessWarning)
        extract_slice(ws, corpus_sampler("gaussian", 0.5))


def test_k0_consistent_on_and_off_mesh(slice_cache):
    sl = slice_cache("gaussian", 0.5)
    idx = np.linspace(40, sl.nodes.size - 40, 7, dtype=int)
    on_mesh = sl.K0[idx]
    off_mesh = sl.K0_at(sl.nodes[idx])
    assert np.max(np.abs(on_mesh - off_mesh)) < 1e-8


def test_reconstruction_identity(gh200, slice_cache):
    for profile in ("gds", "gaussian", "shifted-gaussian"):
        for xi in (0.5, 1.5):
            sl = slice_cache(profile, xi)
            assert reconstruction_error(sl, gh200) < 1e-4


def test_chi_zero_slice_reconstructs(gh200, slice_cache):
    sl = slice_cache("gaussian", 2.0)
    assert sl.chi == 0 and sl.lam is None
    assert reconstruction_error(sl, gh200) < 1e-6


def test_slice_json_round_trip(slice_cache):
    sl = slice_cache("gaussian", 0.5)
    text = slice_to_json(sl)
    assert '"schema_version": 1' in text
    back = slice_from_json(text)
    assert back.xi == sl.xi
    assert back.chi == sl.chi
    assert back.lam == sl.lam
    assert back.C0 == sl.C0
    assert np.array_equal(back.nodes, sl.nodes)
    assert np.allclose(back.K0, sl.K0, rtol=0, atol=0)
    # identical payload when re-serialized from the bare slice
    assert slice_to_json(back) == text
    with pytest.raises(DegenerateDataError):
        back.kred_at(0.3)


def test_compute_k0_matches_extract(workspace_cache):
    ws = workspace_cache(0.5)
    sampler = corpus_sampler("shifted-gaussian", 0.5)
    c0 = compute_C0(ws, sampler)
    k0 = compute_K0(ws, sampler, c0)
    sl = extract_slice(ws, sampler)
    assert np.max(np.abs(k0 - sl.K0)) == 0.0
