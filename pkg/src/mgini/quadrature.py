"""Adaptive quadrature on finite intervals and on [0, inf).

Each panel is integrated with an n-point Gauss-Legendre rule, once over the
whole panel and once over its two halves; the difference is the local error
estimate. The panel with the largest estimate is bisected until the total
estimate meets the tolerance or the subdivision budget runs out.

Integrands are called with a 1-D numpy array of nodes and must return an
array of the same shape.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError

__all__ = [
    "QuadratureConfig",
    "QuadratureResult",
    "integrate_finite",
    "integrate_semi_infinite",
]

Integrand = Callable[[np.ndarray], np.ndarray]

_ORDER = 15
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)
# the same rule mapped onto the left and right halves of [-1, 1]
_HALF_NODES = np.concatenate([(_NODES - 1.0) / 2.0, (_NODES + 1.0) / 2.0])
_HALF_WEIGHTS = np.concatenate([_WEIGHTS, _WEIGHTS]) / 2.0


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def target(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    converged: bool

    def unwrap(self, what: str = "integral") -> float:
        """Return ``value``, raising if the integration did not converge."""
        if not self.converged:
            raise ConvergenceError(
                f"{what} did not converge: value={self.value!r}, error estimate={self.error_estimate:.3g}"
            )
        return self.value


def _panel(f: Integrand, lo: float, hi: float) -> tuple[float, float]:
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    fx = np.asarray(f(mid + half * np.concatenate([_NODES, _HALF_NODES])), dtype=float)
    if not np.all(np.isfinite(fx)):
        raise ConvergenceError(f"integrand is not finite on [{lo!r}, {hi!r}]")
    coarse = half * float(_WEIGHTS @ fx[:_ORDER])
    fine = half * float(_HALF_WEIGHTS @ fx[_ORDER:])
    return fine, abs(fine - coarse)


def integrate_finite(f: Integrand, lo: float, hi: float, config: QuadratureConfig | None = None) -> QuadratureResult:
    """Integrate ``f`` over ``[lo, hi]`` adaptively."""
    config = config or QuadratureConfig()
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"need finite lo < hi, got [{lo!r}, {hi!r}]")

    value, err = _panel(f, lo, hi)
    # max-heap on local error
    heap = [(-err, lo, hi, value)]
    total_value, total_err = value, err
    splits = 0
    while total_err > config.target(total_value) and splits < config.max_subdivisions:
        neg_err, a, b, v = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not a < m < b:
            # panel cannot be split further in floating point
            heapq.heappush(heap, (neg_err, a, b, v))
            break
        left, left_err = _panel(f, a, m)
        right, right_err = _panel(f, m, b)
        heapq.heappush(heap, (-left_err, a, m, left))
        heapq.heappush(heap, (-right_err, m, b, right))
        splits += 1
        # re-sum from scratch to keep rounding drift out of the totals
        total_value = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)

    return QuadratureResult(total_value, total_err, total_err <= config.target(total_value))


def integrate_semi_infinite(f: Integrand, config: QuadratureConfig | None = None) -> QuadratureResult:
    """Integrate ``f`` over ``[0, inf)`` via the substitution ``t = u / (1 - u)``."""

    def mapped(u: np.ndarray) -> np.ndarray:
        one_minus = 1.0 - u
        t = u / one_minus
        with np.errstate(over="ignore"):
            out = np.asarray(f(t), dtype=float) / (one_minus * one_minus)
        # far tail: integrand has underflowed, the Jacobian may not have
        return np.where(np.isinf(t), 0.0, out)

    return integrate_finite(mapped, 0.0, 1.0, config)
