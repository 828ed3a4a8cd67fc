"""Sample m-th Gini index.

    IG_hat_m = (m-1)! / ((n-1)(n-2)...(n-m+1)) * sum_{|S|=m} (max S - min S) / sum_i x_i

The sum over all m-subsets collapses onto the order statistics: x_(i) is the
maximum of C(i-1, m-1) subsets and the minimum of C(n-i, m-1) subsets. The
leading coefficient equals 1 / C(n-1, m-1), so the weight on x_(i) is

    w_i = [C(i-1, m-1) - C(n-i, m-1)] / C(n-1, m-1).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DomainError, EstimatorError
from .population import check_order

__all__ = ["as_sample", "order_weights", "ig_hat_naive", "ig_hat_fast", "ig_hat_batch", "gini_hat"]

_EXACT_MAX_N = 64
_NAIVE_MAX_SUBSETS = 10**7


def as_sample(values) -> np.ndarray:
    """Validate observations and return them as a fresh float array."""
    x = np.array(values, dtype=float).ravel()
    if x.size < 2:
        raise DomainError(f"a sample needs at least 2 observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DomainError("sample values must be finite")
    if np.any(x < 0.0):
        raise DomainError("sample values must be non-negative")
    return x


def _check(x: np.ndarray, m: int) -> int:
    m = check_order(m)
    if m > x.size:
        raise EstimatorError(f"order m={m} exceeds sample size n={x.size}")
    return m


def _upper_ratios(n: int, m: int) -> np.ndarray:
    """r[k] = C(k, m-1) / C(n-1, m-1) for k = 0..n-1."""
    if n <= _EXACT_MAX_N:
        top = math.comb(n - 1, m - 1)
        return np.array([float(Fraction(math.comb(k, m - 1), top)) for k in range(n)])
    # downward recurrence r[k-1] = r[k] * (k - m + 1) / k; factors lie in [0, 1)
    r = np.empty(n)
    r[n - 1] = 1.0
    for k in range(n - 1, 0, -1):
        r[k - 1] = r[k] * max(k - m + 1, 0) / k
    return r


def order_weights(n: int, m: int) -> np.ndarray:
    """Weights on the ascending order statistics, antisymmetric and in [-1, 1]."""
    r = _upper_ratios(n, m)
    return r - r[::-1]


def _weighted_spread(sorted_x: np.ndarray, w: np.ndarray) -> np.ndarray:
    # w is antisymmetric: pair x_(i) with x_(n+1-i) so every term is >= 0
    n = sorted_x.shape[-1]
    half = n // 2
    gaps = sorted_x[..., n - half :] - sorted_x[..., :half][..., ::-1]
    return gaps @ w[n - half :]


def ig_hat_naive(values, m: int) -> float:
    """Reference estimator by explicit enumeration of every m-subset."""
    x = as_sample(values)
    m = _check(x, m)
    n = x.size
    if math.comb(n, m) > _NAIVE_MAX_SUBSETS:
        raise DomainError(f"C({n}, {m}) subsets is too many to enumerate")
    total = x.sum()
    if total == 0.0:
        raise EstimatorError("sample sum is zero; the estimator is undefined")
    spread = math.fsum(max(s) - min(s) for s in combinations(x.tolist(), m))
    coef = math.factorial(m - 1) / math.prod(range(n - m + 1, n))
    return coef * spread / total


def ig_hat_fast(values, m: int) -> float:
    """Estimator in O(n log n) from sorted order statistics."""
    x = as_sample(values)
    m = _check(x, m)
    x.sort()
    total = x.sum()
    if total == 0.0:
        raise EstimatorError("sample sum is zero; the estimator is undefined")
    return float(_weighted_spread(x, order_weights(x.size, m))) / total


def ig_hat_batch(samples: np.ndarray, m: int) -> np.ndarray:
    """Row-wise ``ig_hat_fast`` for a 2-D array of equally sized samples.

    No validation beyond shape; rows summing to zero produce NaN.
    """
    samples = np.sort(np.asarray(samples, dtype=float), axis=1)
    w = order_weights(samples.shape[1], m)
    with np.errstate(invalid="ignore", divide="ignore"):
        return _weighted_spread(samples, w) / samples.sum(axis=1)


def gini_hat(values) -> float:
    """Classical sample Gini coefficient, sum_{i<j} |x_i - x_j| / ((n-1) sum x)."""
    return ig_hat_fast(values, 2)
