"""Expected value of the sample index via the Laplace-transform representation.

For a sample of size n, writing 1/sum(X) = int_0^inf exp(-z sum X) dz turns

    E[IG_hat_m] = (n/m) int_0^inf L^(n-m)(z) int_0^inf {L^m(z) - E^m[1{X<=t} e^{-zX}]
                                                         - E^m[1{X>=t} e^{-zX}]} dt dz

with L the Laplace transform of the population. For exponential and gamma
populations the inner t-integral factorizes, leaving a one-dimensional
z-integral that is evaluated here by quadrature. The rate is fixed to 1;
the result does not depend on it.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError
from .population import Exponential, Gamma, check_order, gamma_power_integrals
from .quadrature import QuadratureConfig, integrate_semi_infinite
from .special import alt_binomial_sum_exact

__all__ = ["MAX_SAMPLE_SIZE", "expected_estimator_exponential", "expected_estimator_gamma", "expected_estimator"]

MAX_SAMPLE_SIZE = 50


def _check_sizes(n: int, m: int) -> tuple[int, int]:
    m = check_order(m)
    if int(n) != n or not m <= n <= MAX_SAMPLE_SIZE:
        raise DomainError(f"need m <= n <= {MAX_SAMPLE_SIZE}, got n={n}, m={m}")
    return int(n), m


def expected_estimator_exponential(n: int, m: int, config: QuadratureConfig | None = None) -> float:
    """E[IG_hat_m] for an exponential sample of size ``n``.

    Inner integral: int_0^inf {1 - [1 - e^{-(z+1)t}]^m - e^{-m(z+1)t}} dt
    = (sum_k C(m,k)(-1)^(k+1)/k - 1/m) / (z + 1).
    """
    n, m = _check_sizes(n, m)
    dist = Exponential(1.0)
    inner = float(alt_binomial_sum_exact(m) - Fraction(1, m))

    def integrand(z):
        return (n / m) * dist.laplace(z) ** n * inner / (z + 1.0)

    return integrate_semi_infinite(integrand, config).unwrap("z-integral")


def expected_estimator_gamma(alpha: float, n: int, m: int, config: QuadratureConfig | None = None) -> float:
    """E[IG_hat_m] for a Gamma(alpha, 1) sample of size ``n``.

    Substituting u = (z+1)t in the inner integral separates it into
    (z+1)^(-1) [int (1 - P^m(alpha,u)) du - int Q^m(alpha,u) du].
    """
    n, m = _check_sizes(n, m)
    dist = Gamma(alpha, 1.0)
    upper, lower = gamma_power_integrals(dist.shape, m, config)
    inner = upper.unwrap("int (1 - P^m)") - lower.unwrap("int Q^m")

    def outer(z):
        return n * dist.laplace(z) ** n / (z + 1.0)

    return integrate_semi_infinite(outer, config).unwrap("z-integral") * inner / m


def expected_estimator(dist, n: int, m: int, config: QuadratureConfig | None = None) -> float:
    if isinstance(dist, Exponential):
        return expected_estimator_exponential(n, m, config)
    return expected_estimator_gamma(dist.shape, n, m, config)
