"""Dyadic intervals: enclosures with endpoints of the form m * 2**e.

Precision is relative: an endpoint rounded at ``p`` bits sits on a grid of
spacing at most ``2**-p * |value|``.  All rounding is outward, and every
operation is computed exactly on the (dyadic) endpoints before rounding,
so no floating point is involved anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import (
    DivisionByZero,
    InsufficientPrecision,
    NegativeBaseFractionalExponent,
    ParseError,
    ZeroToNegativePower,
)
from .rational import as_rational, exact_pow, iroot

DEFAULT_PRECISION = 64


def _make(m: int, e: int) -> Fraction:
    if e >= 0:
        return Fraction(m << e)
    return Fraction(m, 1 << -e)


def _grid_exponent(v: Fraction, prec: int) -> int:
    # 2**e <= |v| * 2**-prec
    return abs(v.numerator).bit_length() - v.denominator.bit_length() - prec - 1


def round_down(v: Fraction, prec: int) -> Fraction:
    """Largest grid point <= v on the ``prec``-bit relative grid around v."""
    if v == 0:
        return v
    n, d = v.numerator, v.denominator
    e = _grid_exponent(v, prec)
    if e >= 0:
        m = n // (d << e)
    else:
        m = (n << -e) // d
    return _make(m, e)


def round_up(v: Fraction, prec: int) -> Fraction:
    return -round_down(-v, prec)


def is_dyadic(v: Fraction) -> bool:
    d = v.denominator
    return d & (d - 1) == 0


def format_dyadic(v: Fraction) -> str:
    """Canonical ``"mantissa*2^exp"`` form with odd mantissa (``0*2^0`` for zero)."""
    if not is_dyadic(v):
        raise ValueError(f"{v} is not dyadic")
    if v == 0:
        return "0*2^0"
    n = v.numerator
    e = -(v.denominator.bit_length() - 1)
    tz = (n & -n).bit_length() - 1
    return f"{n >> tz}*2^{e + tz}"


_DYADIC_RE = re.compile(r"(-?[0-9]+)\*2\^(-?[0-9]+)")


def parse_dyadic(text: str) -> Fraction:
    m = _DYADIC_RE.fullmatch(text.strip())
    if m is None:
        raise ParseError(f"malformed dyadic {text!r}")
    return _make(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class DyadicInterval:
    lo: Fraction
    hi: Fraction
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if not (is_dyadic(self.lo) and is_dyadic(self.hi)):
            raise ValueError("DyadicInterval endpoints must be dyadic")
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def enclose(cls, q, precision: int = DEFAULT_PRECISION) -> "DyadicInterval":
        """Tightest outward enclosure of a rational at the given precision."""
        q = as_rational(q)
        return cls(round_down(q, precision), round_up(q, precision), precision)

    @classmethod
    def hull(cls, a: Fraction, b: Fraction, precision: int) -> "DyadicInterval":
        lo, hi = min(a, b), max(a, b)
        return cls(round_down(lo, precision), round_up(hi, precision), precision)

    # -- queries --------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, q) -> bool:
        q = as_rational(q)
        return self.lo <= q <= self.hi

    def __contains__(self, q) -> bool:
        return self.contains(q)

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def overlaps(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def is_subset(self, other: "DyadicInterval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def to_pair(self) -> tuple[str, str]:
        return format_dyadic(self.lo), format_dyadic(self.hi)

    def __str__(self):
        lo, hi = self.to_pair()
        return f"[{lo}, {hi}]"

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "DyadicInterval":
        if isinstance(other, DyadicInterval):
            return other
        return DyadicInterval.enclose(other, self.precision)

    def __neg__(self):
        return DyadicInterval(-self.hi, -self.lo, self.precision)

    def __add__(self, other):
        other = self._coerce(other)
        p = max(self.precision, other.precision)
        return DyadicInterval(round_down(self.lo + other.lo, p),
                              round_up(self.hi + other.hi, p), p)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = max(self.precision, other.precision)
        prods = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return DyadicInterval(round_down(min(prods), p), round_up(max(prods), p), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        p = max(self.precision, other.precision)
        if other.contains_zero():
            if other.lo == other.hi:
                raise DivisionByZero()
            raise InsufficientPrecision("divisor enclosure contains zero")
        quots = (self.lo / other.lo, self.lo / other.hi,
                 self.hi / other.lo, self.hi / other.hi)
        return DyadicInterval(round_down(min(quots), p), round_up(max(quots), p), p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def pow_int(self, n: int) -> "DyadicInterval":
        """Integer power; interval**0 is [1, 1] (0**0 == 1)."""
        p = self.precision
        if n == 0:
            return DyadicInterval(Fraction(1), Fraction(1), p)
        if n < 0:
            if self.lo == self.hi == 0:
                raise ZeroToNegativePower(n)
            return DyadicInterval(Fraction(1), Fraction(1), p) / self.pow_int(-n)
        lo, hi = self.lo, self.hi
        if lo >= 0:
            a, b = lo ** n, hi ** n
        elif hi <= 0:
            a, b = (hi ** n, lo ** n) if n % 2 == 0 else (lo ** n, hi ** n)
        elif n % 2 == 0:
            a, b = Fraction(0), max(-lo, hi) ** n
        else:
            a, b = lo ** n, hi ** n
        return DyadicInterval(round_down(a, p), round_up(b, p), p)

    def __pow__(self, e):
        e = as_rational(e)
        if e.denominator == 1:
            return self.pow_int(e.numerator)
        # caller guarantees the enclosed value is >= 0; clip the rounding spill-over
        if self.hi < 0:
            raise NegativeBaseFractionalExponent(self.hi, e)
        lo = max(self.lo, Fraction(0))
        p = self.precision
        if e > 0:
            return DyadicInterval(rat_pow(lo, e, p).lo, rat_pow(self.hi, e, p).hi, p)
        if lo == 0:
            if self.hi == 0:
                raise ZeroToNegativePower(e)
            raise InsufficientPrecision("negative power of an enclosure touching zero")
        return DyadicInterval(rat_pow(self.hi, e, p).lo, rat_pow(lo, e, p).hi, p)


def _root_enclosure(x: Fraction, q: int, prec: int) -> DyadicInterval:
    """[r * 2**k, (r+1) * 2**k] containing x**(1/q), x > 0, relative width ~2**-prec."""
    n, d = x.numerator, x.denominator
    k = (n.bit_length() - d.bit_length()) // q - prec - 2
    shift = -k * q
    if shift >= 0:
        num, den = n << shift, d
    else:
        num, den = n, d << -shift
    big = num // den
    r = iroot(big, q)
    lo = _make(r, k)
    if r ** q == big and big * den == num:
        return DyadicInterval(lo, lo, prec)
    return DyadicInterval(lo, _make(r + 1, k), prec)


def rat_pow(x, e, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """Certified enclosure of ``x**e`` for rational x >= 0 and rational e.

    The width is at most ``2**-precision * max(1, |x**e|)``.  Integer
    exponents and exact roots (e.g. ``4**(1/2)``, ``8**(2/3)``) take an exact
    path; the result is degenerate whenever the exact value is dyadic.
    Other roots are bracketed by integer k-th roots with exact checks.
    """
    x = as_rational(x)
    e = as_rational(e)
    if precision < 1:
        raise ValueError("precision must be positive")
    exact = exact_pow(x, e)  # raises the domain errors
    if exact is not None:
        return DyadicInterval.enclose(exact, precision)
    p, q = e.numerator, e.denominator
    extra = abs(p).bit_length() + 4
    while True:
        w = precision + extra
        root = _root_enclosure(x, q, w)
        val = root.pow_int(p)
        out = DyadicInterval(round_down(val.lo, precision + 1),
                             round_up(val.hi, precision + 1), precision)
        bound = max(Fraction(1), out.lo)
        if out.width * (1 << precision) <= bound:
            return out
        extra += 16
