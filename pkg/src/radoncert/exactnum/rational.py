"""Exact rationals: parsing, formatting and integer roots.

``fractions.Fraction`` already keeps numerator/denominator in canonical
form, so it is used directly as the rational type.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from ..errors import NegativeBaseFractionalExponent, ParseError, ZeroToNegativePower

Rational = Fraction

_RATIONAL_RE = re.compile(r"(-?[0-9]+)(?:/([0-9]+))?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (decimal integers, optional leading minus, q > 0)."""
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {type(text).__name__}")
    m = _RATIONAL_RE.fullmatch(text.strip())
    if m is None:
        raise ParseError(f"malformed rational {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ParseError(f"malformed rational {text!r}: zero denominator")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def as_rationals(xs) -> tuple[Fraction, ...]:
    return tuple(as_rational(x) for x in xs)


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if n < 0:
        raise ValueError("iroot of negative integer")
    if k < 1:
        raise ValueError("root degree must be >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton from above: x_{i+1} = ((k-1) x_i + n // x_i^(k-1)) // k decreases to the floor root
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def exact_root(x: Fraction, k: int) -> Fraction | None:
    """The k-th root of ``x >= 0`` when it is rational, else None."""
    if x < 0:
        raise ValueError("exact_root of negative value")
    u = iroot(x.numerator, k)
    if u ** k != x.numerator:
        return None
    v = iroot(x.denominator, k)
    if v ** k != x.denominator:
        return None
    return Fraction(u, v)


def int_pow(x: Fraction, n: int) -> Fraction:
    """x**n with the 0**0 == 1 convention."""
    if n == 0:
        return Fraction(1)
    if x == 0:
        if n < 0:
            raise ZeroToNegativePower(n)
        return Fraction(0)
    return x ** n


def exact_pow(x: Fraction, e: Fraction) -> Fraction | None:
    """x**e when the result is rational (integer e, or exact root), else None."""
    if e.denominator == 1:
        return int_pow(x, e.numerator)
    if x < 0:
        raise NegativeBaseFractionalExponent(x, e)
    if x == 0:
        if e < 0:
            raise ZeroToNegativePower(e)
        return Fraction(0)
    root = exact_root(x, e.denominator)
    if root is None:
        return None
    return root ** e.numerator
