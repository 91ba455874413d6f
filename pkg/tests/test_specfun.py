"""Special-function checks against independent quadrature oracles."""

import numpy as np
import pytest
from scipy import integrate

from bgkspectral import specfun
from bgkspectral.errors import DomainError
from bgkspectral.quadrature import PVKernelSpec, pv_integral

# Frozen oracle values, each from adaptive quadrature of the defining
# integral (re-derived inside the matching test).
DAWSON_1 = 0.5380795069127684     # e^{-1} int_0^1 e^{x^2} dx
XI_AT_1 = 0.757872156141312       # 2 e int_1^inf e^{-x^2} dx


def test_dawson_matches_defining_integral():
    inner, err = integrate.quad(lambda x: np.exp(x * x), 0.0, 1.0)
    oracle = float(np.exp(-1.0) * inner)
    assert err < 1e-12
    assert oracle == pytest.approx(DAWSON_1, abs=1e-13)
    assert float(specfun.dawson(1.0)) == pytest.approx(DAWSON_1, abs=1e-12)


def test_dawson_odd_and_solves_its_ode():
    v = np.array([-2.5, -1.0, -0.3, 0.4, 1.0, 2.2])
    assert np.max(np.abs(specfun.dawson(v) + specfun.dawson(-v))) < 1e-15
    h = 1e-5
    deriv = (specfun.dawson(v + h) - specfun.dawson(v - h)) / (2.0 * h)
    assert np.max(np.abs(deriv - (1.0 - 2.0 * v * specfun.dawson(v)))) < 1e-8


def test_gaussian_weight_normalization_and_underflow():
    total, err = integrate.quad(specfun.gaussian_weight, -np.inf, np.inf)
    assert total == pytest.approx(1.0, abs=1e-12)
    assert specfun.gaussian_weight(0.0) == pytest.approx(1.0 / specfun.SQRT_PI)
    # doubles underflow to an exact zero well before |v| = 28
    assert float(specfun.gaussian_weight(28.0)) == 0.0


def test_hilbert_gaussian_is_principal_value_integral():
    for v in (-2.0, -0.5, 0.0, 0.7, 1.9):
        pv = pv_integral(PVKernelSpec(pole=v, integrand=specfun.gaussian_weight))
        assert specfun.hilbert_gaussian(v) == pytest.approx(pv / 1j, abs=1e-8)
        assert specfun.hilbert_gaussian(v) == pytest.approx(
            2j * float(specfun.dawson(v)), abs=1e-14)


def test_xi_function_matches_defining_integral():
    tail, err = integrate.quad(lambda x: np.exp(-x * x), 1.0, np.inf)
    oracle = float(2.0 * np.exp(1.0) * tail)
    assert err < 1e-9  # quad's (conservative) error estimate
    assert oracle == pytest.approx(XI_AT_1, abs=1e-9)
    assert specfun.xi_function(1.0) == pytest.approx(XI_AT_1, abs=1e-12)


def test_xi_function_shape():
    # odd, strictly decreasing on eta > 0, sqrt(pi) limit, 1/eta tail
    eta = np.linspace(0.05, 4.0, 50)
    vals = specfun.xi_function(eta)
    assert np.all(np.diff(vals) < 0.0)
    assert np.allclose(specfun.xi_function(-eta), -vals, rtol=0, atol=1e-15)
    assert specfun.xi_function(1e-8) == pytest.approx(specfun.SQRT_PI, abs=1e-6)
    assert 0.99 < 20.0 * specfun.xi_function(20.0) < 1.0
    with pytest.raises(DomainError):
        specfun.xi_function(0.0)
