"""Exact rational arithmetic and certified dyadic-interval evaluation."""

from .dyadic import (
    DEFAULT_PRECISION,
    DyadicInterval,
    format_dyadic,
    is_dyadic,
    parse_dyadic,
    rat_pow,
    round_down,
    round_up,
)
from .expr import (
    DEFAULT_BUDGET,
    Add,
    Certificate,
    Const,
    Div,
    Expr,
    Mul,
    Ordering3,
    Pow,
    certify,
    compare_certified,
    eval_exact,
    eval_interval,
    has_integer_exponents,
    lift,
    power,
    precision_schedule,
    product,
    render,
    total,
)
from .rational import (
    Rational,
    as_rational,
    as_rationals,
    exact_pow,
    exact_root,
    format_rational,
    int_pow,
    iroot,
    parse_rational,
)
