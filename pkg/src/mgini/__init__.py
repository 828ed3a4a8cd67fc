"""Generalized (m-th) Gini index for exponential and gamma populations."""

from .errors import ConvergenceError, DomainError, EstimatorError
from .estimator import gini_hat, ig_hat_fast, ig_hat_naive
from .expectation import expected_estimator_exponential, expected_estimator_gamma
from .population import (
    Exponential,
    Gamma,
    gini_gamma_closed,
    ig_exponential_closed,
    ig_gamma_quadrature,
    ig_generic,
    parse_distribution,
    population_index,
)
from .quadrature import QuadratureConfig, QuadratureResult, integrate_finite, integrate_semi_infinite
from .simulate import SimulationConfig, SimulationRecord, draw_sample, run_simulation
from .special import alt_binomial_sum, binomial, ln_gamma, regularized_gamma

__version__ = "0.1.0"
