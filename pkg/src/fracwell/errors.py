"""Exception hierarchy shared by all fracwell modules."""


class FracwellError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FracwellError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ConvergenceError(FracwellError, ArithmeticError):
    """An iterative or adaptive numerical procedure failed to converge.

    ``estimate`` carries the last achieved error estimate when one is known.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class DegenerateSpectrumError(FracwellError, ArithmeticError):
    """Two parity sectors produced energies too close to order reliably."""


class DiagnosticError(FracwellError, ArithmeticError):
    """A derived diagnostic could not be formed from the available data."""
