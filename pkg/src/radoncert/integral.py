"""Integral forms of the Radon inequalities over piecewise polynomials.

Integrals are bracketed by rigorous Riemann-type sums: on each cell the
range of each polynomial is bounded exactly (monotone pieces are exact,
otherwise a mean-value bound after a few bisections), pushed through the
certified power/divide operations, and weighted by the cell width.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InsufficientPrecision, NotCertified, ParseError
from .exactnum import DyadicInterval, as_rational, format_rational, parse_rational, round_down, round_up
from .exactnum.expr import Certificate, Ordering3
from .inequalities import Verdict, verdict_from_certificate

DEFAULT_START = 16
DEFAULT_MAX_PARTITIONS = 4096
DEFAULT_PRECISION = 128
POSITIVITY_DEPTH = 24


# -- polynomials ------------------------------------------------------------

def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def poly_deriv(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(k * c for k, c in enumerate(coeffs))[1:]


def poly_range(coeffs: Sequence[Fraction], u: Fraction, v: Fraction, depth: int = 4) -> tuple[Fraction, Fraction]:
    """Exact rational bounds (lo, hi) on the polynomial over [u, v].

    Exact when the derivative has constant sign (certified recursively);
    otherwise the interval is bisected ``depth`` times and the leaves use the
    mean-value form P(mid) +- max|P'| * (v-u)/2.
    """
    if len(coeffs) <= 1:
        c = coeffs[0] if coeffs else Fraction(0)
        return c, c
    dlo, dhi = poly_range(poly_deriv(coeffs), u, v, 0)
    if dlo >= 0:
        return poly_eval(coeffs, u), poly_eval(coeffs, v)
    if dhi <= 0:
        return poly_eval(coeffs, v), poly_eval(coeffs, u)
    if depth > 0:
        mid = (u + v) / 2
        lo1, hi1 = poly_range(coeffs, u, mid, depth - 1)
        lo2, hi2 = poly_range(coeffs, mid, v, depth - 1)
        return min(lo1, lo2), max(hi1, hi2)
    mid = (u + v) / 2
    pm = poly_eval(coeffs, mid)
    slack = max(-dlo, dhi) * (v - u) / 2
    return pm - slack, pm + slack


# -- piecewise polynomials --------------------------------------------------

@dataclass(frozen=True)
class Segment:
    lo: Fraction
    hi: Fraction
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        coeffs = [as_rational(c) for c in self.coeffs] or [Fraction(0)]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))
        if not self.lo < self.hi:
            raise ValueError(f"segment [{self.lo}, {self.hi}] is empty")


@dataclass(frozen=True)
class PiecewisePoly:
    """Contiguous polynomial pieces with rational coefficients (c0 + c1 x + ...)."""

    segments: tuple[Segment, ...]

    def __post_init__(self):
        segs = tuple(s if isinstance(s, Segment) else Segment(*s) for s in self.segments)
        if not segs:
            raise ValueError("PiecewisePoly needs at least one segment")
        for left, right in zip(segs, segs[1:]):
            if left.hi != right.lo:
                raise ValueError(f"segments not contiguous at {left.hi} / {right.lo}")
        object.__setattr__(self, "segments", segs)

    @classmethod
    def polynomial(cls, coeffs, lo=0, hi=1) -> "PiecewisePoly":
        return cls((Segment(lo, hi, tuple(coeffs)),))

    @classmethod
    def constant(cls, value, lo=0, hi=1) -> "PiecewisePoly":
        return cls.polynomial((value,), lo, hi)

    @classmethod
    def step(cls, values, lo=0, hi=1) -> "PiecewisePoly":
        """Piecewise constant on len(values) equal cells of [lo, hi]."""
        lo, hi = as_rational(lo), as_rational(hi)
        n = len(values)
        h = (hi - lo) / n
        return cls(tuple(Segment(lo + k * h, lo + (k + 1) * h, (v,)) for k, v in enumerate(values)))

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.segments[0].lo, self.segments[-1].hi

    @property
    def breakpoints(self) -> list[Fraction]:
        return [s.lo for s in self.segments] + [self.segments[-1].hi]

    def segment_for(self, u: Fraction, v: Fraction) -> Segment:
        """The segment containing the cell [u, v] (cells never straddle breakpoints)."""
        starts = [s.lo for s in self.segments]
        k = bisect.bisect_right(starts, u) - 1
        seg = self.segments[max(k, 0)]
        if not (seg.lo <= u and v <= seg.hi):
            raise ValueError(f"cell [{u}, {v}] is not inside one segment")
        return seg

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        lo, hi = self.domain
        if not lo <= x <= hi:
            raise ValueError(f"{x} outside [{lo}, {hi}]")
        for seg in self.segments:
            if x <= seg.hi:
                return poly_eval(seg.coeffs, x)
        raise AssertionError  # pragma: no cover

    def to_records(self) -> list[dict]:
        return [{"lo": format_rational(s.lo), "hi": format_rational(s.hi),
                 "coeffs": [format_rational(c) for c in s.coeffs]} for s in self.segments]

    @classmethod
    def from_records(cls, records) -> "PiecewisePoly":
        if not isinstance(records, list) or not records:
            raise ParseError("piecewise polynomial must be a non-empty list of {lo, hi, coeffs} records")
        segs = []
        for i, rec in enumerate(records):
            if not isinstance(rec, dict) or set(rec) != {"lo", "hi", "coeffs"}:
                raise ParseError(f"segment {i}: expected exactly the fields lo, hi, coeffs")
            if not isinstance(rec["coeffs"], list):
                raise ParseError(f"segment {i}: coeffs must be a list")
            try:
                segs.append(Segment(parse_rational(rec["lo"]), parse_rational(rec["hi"]),
                                    tuple(parse_rational(c) for c in rec["coeffs"])))
            except ValueError as exc:
                raise ParseError(f"segment {i}: {exc}") from None
        try:
            return cls(tuple(segs))
        except ValueError as exc:
            raise ParseError(str(exc)) from None


def _resolve_interval(interval, *funcs: PiecewisePoly) -> tuple[Fraction, Fraction]:
    if interval is None:
        lo = max(f.domain[0] for f in funcs)
        hi = min(f.domain[1] for f in funcs)
    else:
        lo, hi = (as_rational(x) for x in interval)
    if not lo < hi:
        raise DomainError("a >= b", f"empty integration interval [{lo}, {hi}]")
    for f in funcs:
        flo, fhi = f.domain
        if lo < flo or hi > fhi:
            raise DomainError("interval outside function domain",
                              f"[{lo}, {hi}] not inside [{flo}, {fhi}]")
    return lo, hi


def certify_positive(f: PiecewisePoly, interval=None, *, max_depth: int = POSITIVITY_DEPTH) -> None:
    """Prove f > 0 on the closed interval, or raise NotCertified.

    Every segment is checked on its own closed range, so a function that
    touches zero at a breakpoint is rejected.
    """
    lo, hi = _resolve_interval(interval, f)
    stack = []
    for seg in f.segments:
        u, v = max(seg.lo, lo), min(seg.hi, hi)
        if u < v:
            stack.append((u, v, seg.coeffs, 0))
    while stack:
        u, v, coeffs, depth = stack.pop()
        for x in (u, v):
            if poly_eval(coeffs, x) <= 0:
                raise NotCertified((u, v), f"f({x}) = {poly_eval(coeffs, x)} is not positive")
        rlo, rhi = poly_range(coeffs, u, v)
        if rlo > 0:
            continue
        if rhi <= 0 or depth >= max_depth:
            raise NotCertified((u, v))
        mid = (u + v) / 2
        stack.append((u, mid, coeffs, depth + 1))
        stack.append((mid, v, coeffs, depth + 1))


# -- Riemann enclosures -----------------------------------------------------

@dataclass(frozen=True)
class Integrand:
    """h = f**alpha / g**beta; ``g`` may be omitted when beta == 0."""

    f: PiecewisePoly
    alpha: Fraction = Fraction(1)
    g: PiecewisePoly | None = None
    beta: Fraction = Fraction(0)

    def functions(self) -> tuple[PiecewisePoly, ...]:
        return (self.f,) if self.g is None else (self.f, self.g)


@dataclass(frozen=True)
class RiemannEnclosure:
    partition_count: int
    lower: Fraction
    upper: Fraction
    precision: int = DEFAULT_PRECISION

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, q) -> bool:
        return self.lower <= as_rational(q) <= self.upper

    def as_interval(self) -> DyadicInterval:
        return DyadicInterval(self.lower, self.upper, self.precision)


def _cells(lo: Fraction, hi: Fraction, n: int, funcs) -> list[tuple[Fraction, Fraction]]:
    h = (hi - lo) / n
    points = {lo + k * h for k in range(n + 1)}
    for f in funcs:
        points.update(x for x in f.breakpoints if lo < x < hi)
    pts = sorted(points)
    return list(zip(pts, pts[1:]))


def _range_interval(f: PiecewisePoly, u: Fraction, v: Fraction, prec: int) -> DyadicInterval:
    rlo, rhi = poly_range(f.segment_for(u, v).coeffs, u, v)
    return DyadicInterval(round_down(rlo, prec), round_up(rhi, prec), prec)


def _pow_range(lo: Fraction, hi: Fraction, k: int) -> tuple[Fraction, Fraction]:
    """Exact range of x**k over [lo, hi] for integer k."""
    if k < 0:
        if lo <= 0 <= hi:
            raise InsufficientPrecision("negative power of a range containing zero")
        a, b = _pow_range(lo, hi, -k)
        return 1 / b, 1 / a
    cands = (lo ** k, hi ** k)
    if lo < 0 < hi and k % 2 == 0:
        return Fraction(0), max(cands)
    return min(cands), max(cands)


def _cell_bounds(h: Integrand, u: Fraction, v: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    alpha, beta = as_rational(h.alpha), as_rational(h.beta)
    use_g = h.g is not None and beta != 0
    if alpha.denominator == 1 and (not use_g or beta.denominator == 1):
        # exact rational bounds; nothing is rounded until the final sum
        lo, hi = _pow_range(*poly_range(h.f.segment_for(u, v).coeffs, u, v), int(alpha))
        if use_g:
            glo, ghi = _pow_range(*poly_range(h.g.segment_for(u, v).coeffs, u, v), -int(beta))
            cands = (lo * glo, lo * ghi, hi * glo, hi * ghi)
            lo, hi = min(cands), max(cands)
        return lo, hi
    val = _range_interval(h.f, u, v, prec) ** alpha
    if use_g:
        val = val / (_range_interval(h.g, u, v, prec) ** beta)
    return val.lo, val.hi


def enclose_integral(h, interval=None, partitions: int = DEFAULT_START,
                     precision: int = DEFAULT_PRECISION) -> RiemannEnclosure:
    """Sound lower/upper bounds on the integral of ``h`` over ``interval``.

    ``h`` is an Integrand or a bare PiecewisePoly (alpha = 1).  Cells are the
    uniform partition refined by the functions' breakpoints.  Cell bounds
    are summed exactly and rounded outward once at the end.
    """
    if isinstance(h, PiecewisePoly):
        h = Integrand(h)
    if partitions < 1:
        raise ValueError("partitions must be positive")
    funcs = h.functions()
    lo, hi = _resolve_interval(interval, *funcs)
    lower = upper = Fraction(0)
    for u, v in _cells(lo, hi, partitions, funcs):
        clo, chi = _cell_bounds(h, u, v, precision)
        lower += clo * (v - u)
        upper += chi * (v - u)
    return RiemannEnclosure(partitions, round_down(lower, precision), round_up(upper, precision), precision)


# -- integral inequalities --------------------------------------------------

def _common_pieces(f: PiecewisePoly, g: PiecewisePoly, lo, hi):
    pts = sorted({lo, hi} | {x for x in f.breakpoints + g.breakpoints if lo < x < hi})
    for u, v in zip(pts, pts[1:]):
        yield f.segment_for(u, v).coeffs, g.segment_for(u, v).coeffs


def proportional_functions(f: PiecewisePoly, g: PiecewisePoly, interval=None) -> bool:
    """f = c * g on the interval for one rational constant c (g nonzero)."""
    lo, hi = _resolve_interval(interval, f, g)
    ratio = None
    for cf, cg in _common_pieces(f, g, lo, hi):
        width = max(len(cf), len(cg))
        cf = cf + (Fraction(0),) * (width - len(cf))
        cg = cg + (Fraction(0),) * (width - len(cg))
        pivot = next((k for k, c in enumerate(cg) if c != 0), None)
        if pivot is None:
            return False
        c = cf[pivot] / cg[pivot]
        if ratio is None:
            ratio = c
        if c != ratio or any(x != ratio * y for x, y in zip(cf, cg)):
            return False
    return True


def is_constant_function(f: PiecewisePoly, interval=None) -> bool:
    lo, hi = _resolve_interval(interval, f)
    values = set()
    for seg in f.segments:
        if seg.hi <= lo or seg.lo >= hi:
            continue
        if len(seg.coeffs) > 1:
            return False
        values.add(seg.coeffs[0])
    return len(values) == 1


def _partition_schedule(start: int, max_partitions: int) -> list[int]:
    if start < 1 or max_partitions < start:
        raise ValueError("need 1 <= start <= max_partitions")
    out, n = [], start
    while n <= max_partitions:
        out.append(n)
        n *= 2
    return out


def _integral_verdict(f, g, lo, hi, alpha, beta, rhs_of, witness, family,
                      start, max_partitions, precision) -> Verdict:
    schedule = _partition_schedule(start, max_partitions)
    lhs = rhs = None
    used = schedule[0]
    for n in schedule:
        try:
            lhs = enclose_integral(Integrand(f, alpha, g, beta), (lo, hi), n, precision).as_interval()
            rhs = rhs_of(enclose_integral(f, (lo, hi), n, precision).as_interval(),
                         enclose_integral(g, (lo, hi), n, precision).as_interval())
        except InsufficientPrecision:
            continue
        used = n
        if witness is not None:
            if not lhs.overlaps(rhs):
                raise AssertionError("structural equality contradicted by disjoint enclosures")
            order, method = Ordering3.EQUAL, "symbolic"
        elif lhs.lo > rhs.hi:
            order, method = Ordering3.GREATER, "interval"
        elif lhs.hi < rhs.lo:
            order, method = Ordering3.LESS, "interval"
        else:
            continue
        cert = Certificate(order, lhs, rhs, None, None, precision, method)
        return verdict_from_certificate(cert, family=family, witness=witness, partitions=used)
    cert = Certificate(Ordering3.INDETERMINATE, lhs, rhs, None, None, precision, "interval")
    return verdict_from_certificate(cert, family=family, partitions=used)


def check_integral_radon(f: PiecewisePoly, g: PiecewisePoly, m, interval=None, *,
                         start: int = DEFAULT_START, max_partitions: int = DEFAULT_MAX_PARTITIONS,
                         precision: int = DEFAULT_PRECISION) -> Verdict:
    """int f^(m+1)/g^m >= (int f)^(m+1) / (int g)^m for m >= 0 or m <= -1, f, g > 0.

    Partitions double from ``start`` until the enclosures separate; the
    result is Indeterminate past ``max_partitions``.  Equality is reported
    only for m in {0, -1} or f proportional to g.
    """
    m = as_rational(m)
    if -1 < m < 0:
        raise DomainError("-1 < m < 0")
    lo, hi = _resolve_interval(interval, f, g)
    certify_positive(f, (lo, hi))
    certify_positive(g, (lo, hi))
    if m == 0:
        witness = "m = 0"
    elif m == -1:
        witness = "m = -1"
    elif proportional_functions(f, g, (lo, hi)):
        witness = "f proportional to g"
    else:
        witness = None

    def rhs_of(int_f, int_g):
        return int_f ** (m + 1) / int_g ** m

    return _integral_verdict(f, g, lo, hi, m + 1, m, rhs_of, witness, "IntegralRadon",
                             start, max_partitions, precision)


def check_integral_radon_general(f: PiecewisePoly, g: PiecewisePoly, r, s, interval=None, *,
                                 start: int = DEFAULT_START,
                                 max_partitions: int = DEFAULT_MAX_PARTITIONS,
                                 precision: int = DEFAULT_PRECISION) -> Verdict:
    """int f^r/g^s >= (int f)^r / ((b-a)^(r-s-1) (int g)^s) for r*s >= 0, r >= s+1."""
    r, s = as_rational(r), as_rational(s)
    if r * s < 0:
        raise DomainError("r*s < 0")
    if r < s + 1:
        raise DomainError("r < s+1")
    lo, hi = _resolve_interval(interval, f, g)
    certify_positive(f, (lo, hi))
    certify_positive(g, (lo, hi))
    if is_constant_function(f, (lo, hi)) and is_constant_function(g, (lo, hi)):
        witness = "f and g constant"
    elif r == s + 1 and proportional_functions(f, g, (lo, hi)):
        witness = "r = s+1 and f proportional to g"
    else:
        witness = None
    length = DyadicInterval.enclose(hi - lo, precision)

    def rhs_of(int_f, int_g):
        return int_f ** r / (length ** (r - s - 1) * int_g ** s)

    return _integral_verdict(f, g, lo, hi, r, s, rhs_of, witness, "IntegralRadonGeneral",
                             start, max_partitions, precision)
