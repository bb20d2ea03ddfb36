"""Evaluation trees over rationals and certified comparison of two trees.

Trees are built from ``Const``, ``Add``, ``Mul``, ``Div`` and ``Pow`` (rational
exponent) nodes; the usual Python operators build them::

    lhs = total(power(a, m + 1) / power(b, m) for a, b in zip(xs, ys))

Comparison tries, in order: exact rational evaluation (with exact roots),
an exact "radical monomial" comparison after clearing root denominators,
a registered symbolic equality, then interval refinement at doubling
precision.  Equality is never inferred from overlapping intervals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from ..errors import (
    DivisionByZero,
    InsufficientPrecision,
    NegativeBaseFractionalExponent,
    NonIntegerExponent,
    ZeroToNegativePower,
)
from .dyadic import DEFAULT_PRECISION, DyadicInterval
from .rational import as_rational, exact_pow, format_rational, int_pow

DEFAULT_BUDGET = 8192
MAX_RADICAL_BITS = 1 << 18


class Expr:
    """Base class of tree nodes; supplies operator overloading."""

    def __add__(self, other):
        return Add((self, lift(other)))

    def __radd__(self, other):
        return Add((lift(other), self))

    def __sub__(self, other):
        return Add((self, -lift(other)))

    def __rsub__(self, other):
        return Add((lift(other), -self))

    def __neg__(self):
        return Mul((Const(Fraction(-1)), self))

    def __mul__(self, other):
        return Mul((self, lift(other)))

    def __rmul__(self, other):
        return Mul((lift(other), self))

    def __truediv__(self, other):
        return Div(self, lift(other))

    def __rtruediv__(self, other):
        return Div(lift(other), self)

    def __pow__(self, exponent):
        return Pow(self, as_rational(exponent))

    def __str__(self):
        return render(self)


@dataclass(frozen=True, eq=True, repr=False)
class Const(Expr):
    value: Fraction

    def __repr__(self):
        return f"Const({format_rational(self.value)})"


@dataclass(frozen=True, eq=True, repr=False)
class Add(Expr):
    terms: tuple

    def __repr__(self):
        return f"Add{self.terms!r}"


@dataclass(frozen=True, eq=True, repr=False)
class Mul(Expr):
    factors: tuple

    def __repr__(self):
        return f"Mul{self.factors!r}"


@dataclass(frozen=True, eq=True, repr=False)
class Div(Expr):
    num: Expr
    den: Expr

    def __repr__(self):
        return f"Div({self.num!r}, {self.den!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Pow(Expr):
    base: Expr
    exponent: Fraction

    def __repr__(self):
        return f"Pow({self.base!r}, {format_rational(self.exponent)})"


def lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Const(as_rational(x))


def power(base, exponent) -> Expr:
    return Pow(lift(base), as_rational(exponent))


def total(items: Iterable) -> Expr:
    return Add(tuple(lift(t) for t in items))


def product(items: Iterable) -> Expr:
    return Mul(tuple(lift(t) for t in items))


def render(node: Expr) -> str:
    if isinstance(node, Const):
        v = node.value
        s = format_rational(v)
        return f"({s})" if v < 0 or v.denominator != 1 else s
    if isinstance(node, Add):
        return "(" + " + ".join(render(t) for t in node.terms) + ")" if node.terms else "0"
    if isinstance(node, Mul):
        return "*".join(render(f) for f in node.factors) if node.factors else "1"
    if isinstance(node, Div):
        return f"{render(node.num)}/{render(node.den)}"
    if isinstance(node, Pow):
        e = format_rational(node.exponent)
        return f"{render(node.base)}^{e if node.exponent.denominator == 1 and node.exponent >= 0 else '(' + e + ')'}"
    raise TypeError(node)


# -- exact evaluation ------------------------------------------------------

def eval_exact(node: Expr) -> Fraction:
    """Exact value of a tree whose exponents are all integers (0**0 == 1)."""
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Add):
        return sum((eval_exact(t) for t in node.terms), Fraction(0))
    if isinstance(node, Mul):
        out = Fraction(1)
        for f in node.factors:
            out *= eval_exact(f)
        return out
    if isinstance(node, Div):
        num = eval_exact(node.num)
        den = eval_exact(node.den)
        if den == 0:
            raise DivisionByZero()
        return num / den
    if isinstance(node, Pow):
        if node.exponent.denominator != 1:
            raise NonIntegerExponent(f"exponent {format_rational(node.exponent)} is not an integer")
        return int_pow(eval_exact(node.base), node.exponent.numerator)
    raise TypeError(f"not an expression node: {node!r}")


def has_integer_exponents(node: Expr) -> bool:
    if isinstance(node, Const):
        return True
    if isinstance(node, Add):
        return all(has_integer_exponents(t) for t in node.terms)
    if isinstance(node, Mul):
        return all(has_integer_exponents(f) for f in node.factors)
    if isinstance(node, Div):
        return has_integer_exponents(node.num) and has_integer_exponents(node.den)
    if isinstance(node, Pow):
        return node.exponent.denominator == 1 and has_integer_exponents(node.base)
    raise TypeError(node)


# -- interval evaluation ---------------------------------------------------

def _combine(node: Expr, values, prec: int) -> DyadicInterval:
    ivs = [v if isinstance(v, DyadicInterval) else DyadicInterval.enclose(v, prec) for v in values]
    if isinstance(node, Add):
        out = DyadicInterval.enclose(0, prec)
        for iv in ivs:
            out = out + iv
        return out
    if isinstance(node, Mul):
        out = DyadicInterval.enclose(1, prec)
        for iv in ivs:
            out = out * iv
        return out
    if isinstance(node, Div):
        return ivs[0] / ivs[1]
    if isinstance(node, Pow):
        return ivs[0] ** node.exponent
    raise TypeError(node)


def _children(node: Expr) -> tuple:
    if isinstance(node, Add):
        return node.terms
    if isinstance(node, Mul):
        return node.factors
    if isinstance(node, Div):
        return (node.num, node.den)
    if isinstance(node, Pow):
        return (node.base,)
    return ()


def eval_interval(node: Expr, precision: int = DEFAULT_PRECISION) -> DyadicInterval:
    """Pure interval evaluation: every leaf is enclosed and every operation
    rounded outward at ``precision`` bits.

    Raises InsufficientPrecision when an enclosure of a divisor (or the base
    of a negative power) straddles zero.
    """
    if isinstance(node, Const):
        return DyadicInterval.enclose(node.value, precision)
    return _combine(node, [eval_interval(c, precision) for c in _children(node)], precision)


@dataclass
class _Radical:
    """coef * prod(base**exp) with rational bases > 0 and exponents in (0, 1)."""

    coef: Fraction
    factors: dict = field(default_factory=dict)

    @property
    def sign(self) -> int:
        return (self.coef > 0) - (self.coef < 0)


def _normalize(coef: Fraction, factors: dict) -> _Radical:
    if coef == 0:
        return _Radical(Fraction(0))
    out = {}
    for base, e in factors.items():
        if base == 1 or e == 0:
            continue
        whole = math.floor(e)
        frac = e - whole
        coef *= base ** whole
        if frac:
            exact = exact_pow(base, frac)
            if exact is not None:
                coef *= exact
            else:
                out[base] = frac
    return _Radical(coef, out)


class _Evaluator:
    """Memoized exact / radical / mixed evaluation of one pair of trees."""

    def __init__(self):
        self._exact: dict[int, Union[Fraction, None]] = {}
        self._radical: dict[int, Union[_Radical, None]] = {}

    def exact(self, node: Expr):
        key = id(node)
        if key in self._exact:
            return self._exact[key]
        val = self._exact_uncached(node)
        self._exact[key] = val
        return val

    def _exact_uncached(self, node: Expr):
        if isinstance(node, Const):
            return node.value
        vals = [self.exact(c) for c in _children(node)]
        if any(v is None for v in vals):
            return None
        if isinstance(node, Add):
            return sum(vals, Fraction(0))
        if isinstance(node, Mul):
            out = Fraction(1)
            for v in vals:
                out *= v
            return out
        if isinstance(node, Div):
            if vals[1] == 0:
                raise DivisionByZero()
            return vals[0] / vals[1]
        if isinstance(node, Pow):
            return exact_pow(vals[0], node.exponent)
        raise TypeError(node)

    def radical(self, node: Expr):
        key = id(node)
        if key in self._radical:
            return self._radical[key]
        val = self._radical_uncached(node)
        self._radical[key] = val
        return val

    def _radical_uncached(self, node: Expr):
        v = self.exact(node)
        if v is not None:
            return _Radical(v)
        if isinstance(node, Add):
            # like radicals only: sum of c_i * R over one common radical R
            parts = [self.radical(t) for t in node.terms]
            if any(r is None for r in parts):
                return None
            parts = [r for r in parts if r.coef != 0]
            if not parts:
                return _Radical(Fraction(0))
            if any(r.factors != parts[0].factors for r in parts):
                return None
            return _normalize(sum((r.coef for r in parts), Fraction(0)), dict(parts[0].factors))
        if isinstance(node, Mul):
            coef, factors = Fraction(1), {}
            for f in node.factors:
                r = self.radical(f)
                if r is None:
                    return None
                coef *= r.coef
                for b, e in r.factors.items():
                    factors[b] = factors.get(b, 0) + e
            if coef == 0:
                return _Radical(Fraction(0))
            return _normalize(coef, factors)
        if isinstance(node, Div):
            num, den = self.radical(node.num), self.radical(node.den)
            if num is None or den is None:
                return None
            if den.coef == 0:
                raise DivisionByZero()
            factors = dict(num.factors)
            for b, e in den.factors.items():
                factors[b] = factors.get(b, 0) - e
            return _normalize(num.coef / den.coef, factors)
        if isinstance(node, Pow):
            base = self.radical(node.base)
            if base is None:
                return None
            e = node.exponent
            if base.coef == 0:
                if e < 0:
                    raise ZeroToNegativePower(e)
                return _Radical(Fraction(1) if e == 0 else Fraction(0))
            if e.denominator == 1:
                coef = base.coef ** e.numerator
                factors = {b: x * e for b, x in base.factors.items()}
            else:
                if base.coef < 0:
                    raise NegativeBaseFractionalExponent(base.coef, e)
                factors = {b: x * e for b, x in base.factors.items()}
                factors[base.coef] = factors.get(base.coef, 0) + e
                coef = Fraction(1)
            return _normalize(coef, factors)
        return None

    def mixed(self, node: Expr, prec: int):
        """Exact value when available, otherwise an enclosure built on exact subtrees."""
        v = self.exact(node)
        if v is not None:
            return v
        return _combine(node, [self.mixed(c, prec) for c in _children(node)], prec)

    def enclosure(self, node: Expr, prec: int) -> DyadicInterval:
        v = self.mixed(node, prec)
        return v if isinstance(v, DyadicInterval) else DyadicInterval.enclose(v, prec)


def _bits(q: Fraction) -> int:
    return abs(q.numerator).bit_length() + q.denominator.bit_length()


def _radical_cmp(left: _Radical, right: _Radical) -> int | None:
    """Exact sign of left - right, or None when the cleared powers are too large."""
    sl, sr = left.sign, right.sign
    if sl != sr or sl == 0:
        return (sl > sr) - (sl < sr)
    d = 1
    for r in (left, right):
        for e in r.factors.values():
            d = d * e.denominator // math.gcd(d, e.denominator)
    cost = 0
    for r in (left, right):
        cost += d * _bits(r.coef) + sum(int(e * d) * _bits(b) for b, e in r.factors.items())
    if cost > MAX_RADICAL_BITS:
        return None

    def cleared(r: _Radical) -> Fraction:
        out = abs(r.coef) ** d
        for b, e in r.factors.items():
            out *= b ** int(e * d)
        return out

    lv, rv = cleared(left), cleared(right)
    c = (lv > rv) - (lv < rv)
    # t -> t**d is increasing on positives and reverses the order on negatives
    return c if sl > 0 else -c


class Ordering3(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    INDETERMINATE = "Indeterminate"

    def flipped(self) -> "Ordering3":
        if self is Ordering3.LESS:
            return Ordering3.GREATER
        if self is Ordering3.GREATER:
            return Ordering3.LESS
        return self


def _ordering(sign: int) -> Ordering3:
    return {-1: Ordering3.LESS, 0: Ordering3.EQUAL, 1: Ordering3.GREATER}[sign]


@dataclass(frozen=True)
class Certificate:
    """Outcome of a certified comparison together with its evidence."""

    ordering: Ordering3
    lhs: DyadicInterval | None
    rhs: DyadicInterval | None
    lhs_exact: Fraction | None
    rhs_exact: Fraction | None
    precision: int
    method: str  # exact | radical | symbolic | interval

    @property
    def exhausted(self) -> bool:
        return self.ordering is Ordering3.INDETERMINATE


def precision_schedule(budget: int, start: int = DEFAULT_PRECISION) -> list[int]:
    if budget < 1:
        raise ValueError("precision budget must be positive")
    if budget < start:
        return [budget]
    out, p = [], start
    while p <= budget:
        out.append(p)
        p *= 2
    return out


MODES = ("auto", "interval", "exact")


def certify(lhs: Expr, rhs: Expr, budget: int = DEFAULT_BUDGET, *,
            symbolic_equal: bool = False, mode: str = "auto") -> Certificate:
    """Certified comparison of two trees with the evidence attached.

    ``symbolic_equal`` signals that a proven equality condition holds for the
    instance the trees came from.  ``mode`` selects the pipeline: ``auto``
    (exact, radical, symbolic, interval), ``interval`` (symbolic conditions
    and pure interval evaluation only) or ``exact`` (integer exponents only).
    """
    lhs, rhs = lift(lhs), lift(rhs)
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    start = min(DEFAULT_PRECISION, budget)

    if mode == "exact":
        lv, rv = eval_exact(lhs), eval_exact(rhs)
        return Certificate(_ordering((lv > rv) - (lv < rv)),
                           DyadicInterval.enclose(lv, start), DyadicInterval.enclose(rv, start),
                           lv, rv, start, "exact")

    if mode == "interval":
        if symbolic_equal:
            for p in precision_schedule(budget):
                try:
                    li, ri = eval_interval(lhs, p), eval_interval(rhs, p)
                except InsufficientPrecision:
                    continue
                _check_not_disjoint(li, ri)
                return Certificate(Ordering3.EQUAL, li, ri, None, None, p, "symbolic")
            return Certificate(Ordering3.EQUAL, None, None, None, None, budget, "symbolic")
        return _refine(lhs, rhs, budget, eval_interval)

    ev = _Evaluator()
    lv, rv = ev.exact(lhs), ev.exact(rhs)
    lrad = rrad = None
    if lv is None:
        lrad = ev.radical(lhs)
        if lrad is not None and not lrad.factors:
            lv = lrad.coef
    if rv is None:
        rrad = ev.radical(rhs)
        if rrad is not None and not rrad.factors:
            rv = rrad.coef

    if lv is not None and rv is not None:
        if symbolic_equal and lv != rv:
            raise AssertionError("registered equality condition contradicted by exact values")
        return Certificate(_ordering((lv > rv) - (lv < rv)),
                           DyadicInterval.enclose(lv, start), DyadicInterval.enclose(rv, start),
                           lv, rv, start, "exact")

    if symbolic_equal:
        li, ri = ev.enclosure(lhs, start), ev.enclosure(rhs, start)
        _check_not_disjoint(li, ri)
        return Certificate(Ordering3.EQUAL, li, ri, lv, rv, start, "symbolic")

    lrad = lrad if lrad is not None else (ev.radical(lhs) if lv is None else _Radical(lv))
    rrad = rrad if rrad is not None else (ev.radical(rhs) if rv is None else _Radical(rv))
    if lrad is not None and rrad is not None:
        sign = _radical_cmp(lrad, rrad)
        if sign is not None:
            return Certificate(_ordering(sign), ev.enclosure(lhs, start), ev.enclosure(rhs, start),
                               lv, rv, start, "radical")

    cert = _refine(lhs, rhs, budget, ev.enclosure)
    if lv is not None or rv is not None:
        cert = Certificate(cert.ordering, cert.lhs, cert.rhs, lv, rv, cert.precision, cert.method)
    return cert


def _check_not_disjoint(li: DyadicInterval, ri: DyadicInterval) -> None:
    if not li.overlaps(ri):
        raise AssertionError("registered equality condition contradicted by disjoint enclosures")


def _refine(lhs: Expr, rhs: Expr, budget: int, evaluate) -> Certificate:
    li = ri = None
    used = 0
    for p in precision_schedule(budget):
        try:
            li, ri = evaluate(lhs, p), evaluate(rhs, p)
        except InsufficientPrecision:
            continue
        used = p
        if li.hi < ri.lo:
            return Certificate(Ordering3.LESS, li, ri, None, None, p, "interval")
        if li.lo > ri.hi:
            return Certificate(Ordering3.GREATER, li, ri, None, None, p, "interval")
    return Certificate(Ordering3.INDETERMINATE, li, ri, None, None, used or budget, "interval")


def compare_certified(lhs, rhs, budget: int = DEFAULT_BUDGET, *,
                      symbolic_equal: bool = False, mode: str = "auto") -> Ordering3:
    """Certified ordering of two trees.

    LESS/GREATER only from disjoint enclosures or exact arithmetic; EQUAL only
    from exact evaluation or ``symbolic_equal``; INDETERMINATE once the
    precision budget is exhausted.
    """
    return certify(lhs, rhs, budget, symbolic_equal=symbolic_equal, mode=mode).ordering
