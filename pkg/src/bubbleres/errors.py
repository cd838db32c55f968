"""Exception types shared by the solver modules."""


class BubbleResError(Exception):
    """Base class for all library errors."""


class DomainError(BubbleResError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class RegimeError(BubbleResError, ValueError):
    """Asymptotic formula requested outside its regime of validity."""


class WindowError(RegimeError):
    """Scaled-system state outside the admissible solve window."""


class PrecisionError(BubbleResError, ArithmeticError):
    """Double-precision complex Newton cannot resolve the imaginary part.

    Callers should switch to the scaled solver.
    """

    def __init__(self, message, log_ratio=None):
        super().__init__(message)
        self.log_ratio = log_ratio


class ConvergenceError(BubbleResError, RuntimeError):
    """Iteration failed to converge; carries the best iterate."""

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class InsufficientPointsError(BubbleResError, ValueError):
    """Too few sweep points for a fit."""


class SingularJacobianError(ConvergenceError):
    """Newton Jacobian is numerically singular."""
