import math

import numpy as np
import pytest
from scipy import integrate, special, stats

from mgini.errors import DomainError
from mgini.expectation import expected_estimator, expected_estimator_exponential, expected_estimator_gamma
from mgini.population import Exponential, Gamma, ig_exponential_closed, ig_gamma_quadrature


@pytest.mark.parametrize("n, m, expected", [(5, 3, 0.5), (10, 2, 0.5), (8, 4, 11 / 24)])
def test_exponential_examples(n, m, expected):
    assert expected_estimator_exponential(n, m) == pytest.approx(expected, abs=1e-8)


@pytest.mark.parametrize("alpha, n, m, expected", [(1.0, 5, 3, 0.5), (2.0, 5, 2, 0.375)])
def test_gamma_examples(alpha, n, m, expected):
    assert expected_estimator_gamma(alpha, n, m) == pytest.approx(expected, abs=1e-7)


def test_gamma_cross_module():
    assert expected_estimator_gamma(2.0, 10, 3) == pytest.approx(ig_gamma_quadrature(2.0, 3), abs=1e-7)


@pytest.mark.parametrize("m", [2, 3, 5])
def test_exponential_independent_of_n(m):
    values = [expected_estimator_exponential(n, m) for n in (m, m + 3, 20, 50)]
    assert max(values) - min(values) < 1e-8
    assert values[0] == pytest.approx(ig_exponential_closed(m), abs=1e-8)


@pytest.mark.parametrize("alpha", [0.5, 3.0])
@pytest.mark.parametrize("n, m", [(4, 2), (12, 4), (50, 3)])
def test_gamma_unbiased(alpha, n, m):
    assert expected_estimator_gamma(alpha, n, m) == pytest.approx(ig_gamma_quadrature(alpha, m), abs=1e-7)


def test_dispatch():
    assert expected_estimator(Exponential(2.0), 6, 3) == pytest.approx(0.5, abs=1e-8)
    assert expected_estimator(Gamma(2.0, 3.0), 6, 2) == pytest.approx(0.375, abs=1e-7)


@pytest.mark.parametrize("n, m", [(3, 4), (51, 3), (10, 1)])
def test_size_limits(n, m):
    with pytest.raises(DomainError):
        expected_estimator_exponential(n, m)


def _truncated_laplace(alpha, t, z):
    """E[1{X<=t} e^{-zX}] and E[1{X>=t} e^{-zX}] for X ~ Gamma(alpha, 1)."""
    scale = (1.0 + z) ** -alpha
    s = (1.0 + z) * t
    return scale * special.gammainc(alpha, s), scale * special.gammaincc(alpha, s)


@pytest.mark.parametrize("alpha, t, z", [(1.0, 0.7, 0.3), (2.0, 1.5, 2.0), (0.5, 0.2, 5.0)])
def test_truncated_laplace_expectations_by_direct_integration(alpha, t, z):
    pdf = stats.gamma(alpha).pdf
    below = integrate.quad(lambda x: math.exp(-z * x) * pdf(x), 0.0, t)[0]
    above = integrate.quad(lambda x: math.exp(-z * x) * pdf(x), t, math.inf)[0]
    assert _truncated_laplace(alpha, t, z) == pytest.approx((below, above), rel=1e-7)


def _literal_double_integral(alpha, n, m):
    """Laplace-transform representation of E[IG_hat_m], integrated in (t, z) by scipy."""

    def integrand(t, z):
        lap = (1.0 + z) ** -alpha
        below, above = _truncated_laplace(alpha, t, z)
        return (n / m) * (lap**m - below**m - above**m) * lap ** (n - m)

    return integrate.dblquad(integrand, 0.0, np.inf, 0.0, np.inf, epsabs=1e-11, epsrel=1e-9)[0]


@pytest.mark.parametrize("alpha, n, m", [(1.0, 5, 3), (1.0, 4, 2), (2.0, 5, 2), (2.0, 6, 3)])
def test_factorized_form_matches_literal_double_integral(alpha, n, m):
    literal = _literal_double_integral(alpha, n, m)
    assert expected_estimator_gamma(alpha, n, m) == pytest.approx(literal, abs=1e-6)
