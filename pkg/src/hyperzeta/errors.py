"""Exception hierarchy shared by every module."""


class HyperzetaError(Exception):
    """Base class for all numerical failures raised by the package."""


class DomainError(HyperzetaError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class PoleError(DomainError):
    """The function has a pole at the requested argument."""


class SingularityError(DomainError):
    """A density or integral is infinite at the requested point."""


class ConvergenceError(HyperzetaError):
    """A quadrature or series did not reach its tolerance within budget.

    The best available estimate is kept on ``result`` so callers can still
    inspect it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class IntegrandError(HyperzetaError):
    """The integrand produced NaN or an array of the wrong shape."""
