"""Exception types raised across the package."""

from __future__ import annotations


class MultShiftError(Exception):
    """Base class for all package errors."""


class MalformedMatrix(MultShiftError, ValueError):
    pass


class NotPrimitive(MultShiftError, ValueError):
    pass


class NotPrimitiveWithinCap(NotPrimitive):
    """No power A^r with r <= cap is entrywise positive."""

    def __init__(self, cap: int, wielandt: int):
        self.cap = cap
        self.wielandt = wielandt
        if cap >= wielandt:
            why = f"cap {cap} reaches the Wielandt bound {wielandt}, so A is not primitive"
        else:
            why = f"cap {cap} is below the Wielandt bound {wielandt}; A may still be primitive"
        super().__init__(f"no power A^r with r <= {cap} is entrywise positive ({why})")


class EnumerationTooLarge(MultShiftError, ValueError):
    pass


class IndexOutOfRange(MultShiftError, IndexError):
    pass


class NoConvergence(MultShiftError, RuntimeError):
    def __init__(self, max_iter: int, residual: float):
        self.max_iter = max_iter
        self.residual = residual
        super().__init__(f"no convergence after {max_iter} iterations (residual {residual:.3e})")


class DomainError(MultShiftError, ValueError):
    pass


class NotAdmissible(MultShiftError, ValueError):
    pass


class LengthNotPowerOfTwo(MultShiftError, ValueError):
    pass


class IdentityViolation(MultShiftError, AssertionError):
    pass


class ParseError(MultShiftError, ValueError):
    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
