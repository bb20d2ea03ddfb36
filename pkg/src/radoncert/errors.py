"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RadonCertError(Exception):
    """Base class for all errors raised by radoncert."""


class DomainError(RadonCertError, ValueError):
    """An input lies outside the validity domain of an operation.

    ``predicate`` names the violated condition, e.g. ``"r < s+1"``.
    """

    def __init__(self, predicate: str, message: str | None = None):
        self.predicate = predicate
        super().__init__(message or f"domain violation: {predicate}")


class NegativeBaseFractionalExponent(DomainError):
    def __init__(self, base, exponent):
        super().__init__("base < 0 with fractional exponent",
                         f"cannot raise {base} to fractional power {exponent}")


class ZeroToNegativePower(DomainError):
    def __init__(self, exponent):
        super().__init__("0 ** negative", f"0 raised to negative power {exponent}")


class DivisionByZero(DomainError, ZeroDivisionError):
    def __init__(self, message: str = "division by zero"):
        super().__init__("denominator == 0", message)


class NotATriangle(DomainError):
    def __init__(self, sides):
        super().__init__("triangle inequality",
                         "sides {} do not form a non-degenerate triangle".format(
                             ", ".join(str(x) for x in sides)))


class ProductNotOne(DomainError):
    def __init__(self, product):
        super().__init__("x*y*z == 1", f"x*y*z = {product}, expected 1")


class NotCertified(DomainError):
    """Positivity of a piecewise polynomial could not be proven.

    ``subinterval`` is the deepest offending (lo, hi) pair.
    """

    def __init__(self, subinterval, message: str | None = None):
        self.subinterval = subinterval
        lo, hi = subinterval
        super().__init__("f > 0", message or f"positivity not certified on [{lo}, {hi}]")


class NonIntegerExponent(RadonCertError, ValueError):
    pass


class InsufficientPrecision(RadonCertError, ArithmeticError):
    """Interval evaluation could not proceed at the current precision
    (e.g. a divisor enclosure contains zero)."""


class InstanceError(RadonCertError, ValueError):
    """Structurally malformed instance (length mismatch, missing parameter)."""


class ParseError(RadonCertError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class InfeasibleSpec(RadonCertError, ValueError):
    pass
