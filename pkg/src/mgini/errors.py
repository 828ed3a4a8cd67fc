"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class ConvergenceError(ArithmeticError):
    """An iterative or adaptive numerical method failed to reach its tolerance."""


class EstimatorError(ValueError):
    """The sample estimator is undefined for the given data."""
