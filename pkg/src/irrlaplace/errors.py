"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class IrrLaplaceError(Exception):
    """Base class for all package errors."""


class DomainError(IrrLaplaceError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class NonConvergent(IrrLaplaceError, ArithmeticError):
    """A numerical scheme could not certify the requested accuracy.

    The best available estimate is attached so callers can still inspect it.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class UnsupportedExpr(IrrLaplaceError, ValueError):
    """The Laplace-domain expression is outside the supported families."""


class DivergentTransform(IrrLaplaceError, ValueError):
    """The forward Laplace integral does not converge at the requested s."""


class QuadratureFailure(IrrLaplaceError, ArithmeticError):
    """Adaptive quadrature did not meet its error target."""


class StepTooCoarse(IrrLaplaceError, ArithmeticError):
    """The Grünwald–Letnikov extrapolation difference exceeds the tolerance."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
