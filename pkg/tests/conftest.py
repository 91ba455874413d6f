import pytest

from bgkspectral import SliceWorkspace, extract_slice, gauss_hermite
from bgkspectral.corpus import corpus_sampler


@pytest.fixture(scope="session")
def gh200():
    return gauss_hermite(200)


@pytest.fixture(scope="session")
def workspace_cache():
    """Shared per-wavenumber workspaces (canonical factor is expensive)."""
    cache = {}

    def get(xi):
        if xi not in cache:
            cache[xi] = SliceWorkspace(xi)
        return cache[xi]

    return get


@pytest.fixture(scope="session")
def slice_cache(workspace_cache):
    """Shared extracted slices keyed by (corpus profile, xi)."""
    cache = {}

    def get(profile, xi):
        key = (profile, xi)
        if key not in cache:
            cache[key] = extract_slice(workspace_cache(xi),
                                       corpus_sampler(profile, xi))
        return cache[key]

    return get
