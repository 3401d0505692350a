"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class NumericalError(ArithmeticError):
    """A numerical procedure failed to converge or to meet its tolerance."""


class QuadratureError(NumericalError):
    """Quadrature could not reach the requested tolerance.

    Attributes
    ----------
    estimate : float
        Best estimate obtained before giving up.
    error_bound : float
        Error estimate attached to ``estimate``.
    """

    def __init__(self, message, estimate=float("nan"), error_bound=float("inf")):
        super().__init__(f"{message} (estimate={estimate!r}, error_bound={error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound


class EstimationError(NumericalError):
    """Monte Carlo estimation produced no usable sample."""
