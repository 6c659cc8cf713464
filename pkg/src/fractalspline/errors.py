"""Exception types shared across the package.

The CLI maps these onto exit codes (validation -> 2, necessary-condition
failures -> 3, resource caps -> 4), and the HTTP layer onto status codes,
so library code should raise the most specific class that applies.
"""


class FractalSplineError(Exception):
    """Base class for all errors raised by this package."""


class MalformedDataError(FractalSplineError, ValueError):
    """Interpolation data violates a structural invariant (ordering, length, size)."""


class MalformedParametersError(FractalSplineError, ValueError):
    """Parameter vectors have the wrong length or violate an admissibility constraint."""


class DenominatorPositivityError(FractalSplineError, ArithmeticError):
    """The rational denominator lost positivity; unreachable for admissible parameters."""


class SmoothnessOrderError(FractalSplineError, ValueError):
    """Scaling factors too large for the requested smoothness order."""


class ContractionViolationError(FractalSplineError, ArithmeticError):
    """Fixed-point iteration ran with a non-contractive operator."""


class ResourceLimitError(FractalSplineError, RuntimeError):
    """A requested evaluation would exceed the configured sample-count cap."""


class NecessaryConditionError(FractalSplineError, ValueError):
    """Data fails a necessary condition for the requested shape mode.

    ``index`` is the 0-based knot or interval index where the condition
    first fails, or None when the failure is global.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InsufficientDataError(FractalSplineError, ValueError):
    """Too few samples to run the requested check."""


class DivergentBoundError(FractalSplineError, ValueError):
    """The a-priori error bound is undefined because the scaling norm is >= 1."""
