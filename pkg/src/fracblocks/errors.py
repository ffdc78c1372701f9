"""Exception types raised by the library."""


class FracBlocksError(Exception):
    """Base class for all library errors."""


class DomainError(FracBlocksError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularResolventError(FracBlocksError, ZeroDivisionError):
    """The resolvent was requested at a point of the spectrum."""


class BranchCutError(FracBlocksError, ValueError):
    """A matrix eigenvalue lies on the branch cut of the principal power."""


class DiagonalizationError(FracBlocksError, ArithmeticError):
    """A matrix is defective or too ill-conditioned to diagonalize."""


class ConvergenceError(FracBlocksError, ArithmeticError):
    """A quadrature failed to reach its tolerance.

    The last estimate is kept on ``estimate`` so callers can still inspect it.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
