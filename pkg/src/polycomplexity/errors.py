"""Exception types shared across the package."""


class ParameterDomainError(ValueError):
    """A family parameter, argument, or evaluation point lies outside its
    validity domain (e.g. Laguerre alpha <= -1, x outside the support)."""


class IntegrationError(ArithmeticError):
    """A quadrature routine could not deliver the requested tolerance.

    Carries the best available estimate so callers can decide whether the
    partial result is still usable.
    """

    def __init__(self, message, estimate=None, error_estimate=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


class NumericallyDivergentError(IntegrationError):
    """Adaptive refinement exhausted its budget without converging; the
    integral is reported as numerically divergent (distinct from a finite
    result and from a closed-form infinity)."""
