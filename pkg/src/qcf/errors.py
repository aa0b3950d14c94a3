"""Exception hierarchy shared by every module."""


class VerificationError(Exception):
    """Base class for all errors raised by qcf."""


class DomainError(VerificationError, ValueError):
    """Parameters outside the region where a quantity is defined."""


class DivergenceError(DomainError):
    """A series or product does not converge for the given parameters."""


class PoleError(VerificationError, ZeroDivisionError):
    """A denominator vanishes (or is numerically indistinguishable from 0)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateError(VerificationError, ArithmeticError):
    """The object degenerates (vanishing denominators, coincident roots)."""


class ConditioningError(VerificationError, ArithmeticError):
    """A quotient is too badly conditioned to give a meaningful residual."""


class MassPointWarning(UserWarning):
    """G(rho) is close to zero: x is near a pole of X(x)."""
