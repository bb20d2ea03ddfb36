import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import random_tree
from radoncert.errors import DomainError, InsufficientPrecision, NonIntegerExponent
from radoncert.exactnum import (
    Const,
    Ordering3,
    certify,
    compare_certified,
    eval_exact,
    eval_interval,
    has_integer_exponents,
    lift,
    power,
    precision_schedule,
    render,
    total,
)

F = Fraction
sqrt2 = power(2, F(1, 2))


def _evaluable(seed):
    tree = random_tree(random.Random(seed))
    try:
        return tree, eval_exact(tree)
    except (ZeroDivisionError, DomainError):
        return None, None


@given(st.integers(min_value=0, max_value=10 ** 9))
def test_interval_contains_exact_value(seed):
    tree, value = _evaluable(seed)
    if tree is None:
        return
    widths = []
    for p in (64, 128, 256):
        iv = eval_interval(tree, p)
        assert iv.contains(value)
        widths.append(iv.width)
    assert widths[0] >= widths[1] >= widths[2]


def test_eval_exact_refuses_roots():
    with pytest.raises(NonIntegerExponent):
        eval_exact(sqrt2)
    assert not has_integer_exponents(sqrt2 + 1)
    assert has_integer_exponents(power(3, -2) * 5)


def test_zero_to_zero_is_one():
    assert eval_exact(power(0, 0)) == 1
    assert eval_interval(power(0, 0)).to_pair() == ("1*2^0", "1*2^0")


def test_operators_build_trees():
    tree = (lift(1) + 2) * 3 / 4 - 1
    assert eval_exact(tree) == F(5, 4)
    assert "1" in render(tree)


@pytest.mark.parametrize("lhs, rhs, expected", [
    (lift(F(1, 3)), lift(F(1, 3)), Ordering3.EQUAL),
    (lift(F(1, 3)), lift(F(1, 2)), Ordering3.LESS),
    (power(F(5, 2), F(1, 2)), lift(F(3, 2)), Ordering3.GREATER),
    (power(4, F(1, 2)) + power(9, F(1, 2)), lift(5), Ordering3.EQUAL),
    (sqrt2 * sqrt2, lift(2), Ordering3.EQUAL),
    (power(2 * sqrt2, 2), lift(8), Ordering3.EQUAL),
    (sqrt2 + power(3, F(1, 2)), power(10, F(1, 2)), Ordering3.LESS),
])
def test_certify_orderings(lhs, rhs, expected):
    assert compare_certified(lhs, rhs) is expected


def test_equality_is_never_inferred_from_intervals():
    # sqrt2 + sqrt3 vs sqrt(5 + 2 sqrt6): equal, but nested radicals defeat the
    # exact and radical paths, so only intervals remain
    nested = power(5 + 2 * power(6, F(1, 2)), F(1, 2))
    cert = certify(sqrt2 + power(3, F(1, 2)), nested, budget=512)
    assert cert.ordering is Ordering3.INDETERMINATE
    assert cert.lhs.overlaps(cert.rhs)


def test_symbolic_equality_witness():
    nested = power(5 + 2 * power(6, F(1, 2)), F(1, 2))
    cert = certify(sqrt2 + power(3, F(1, 2)), nested, symbolic_equal=True)
    assert cert.ordering is Ordering3.EQUAL
    assert cert.method == "symbolic"


def test_contradicted_witness_raises():
    with pytest.raises(AssertionError):
        certify(lift(1), lift(2), symbolic_equal=True)


def test_budget_exhaustion_is_indeterminate():
    # a difference of 2**-300 cannot be resolved with 128 bits
    tiny = power(2, F(1, 2)) + F(1, 2 ** 300)
    cert = certify(tiny, sqrt2, budget=128)
    assert cert.ordering is Ordering3.INDETERMINATE
    assert cert.precision == 128
    assert certify(tiny, sqrt2, budget=1024).ordering is Ordering3.GREATER


@given(st.integers(min_value=0, max_value=10 ** 9))
def test_compare_is_antisymmetric(seed):
    rng = random.Random(seed)
    tree_a = random_tree(rng, 3)
    tree_b = random_tree(rng, 3)
    try:
        forward = compare_certified(tree_a, tree_b, 256)
        backward = compare_certified(tree_b, tree_a, 256)
    except (ZeroDivisionError, DomainError, InsufficientPrecision):
        return
    assert backward is forward.flipped()


@given(st.fractions(min_value=F(1, 100), max_value=100, max_denominator=100),
       st.fractions(min_value=F(1, 100), max_value=100, max_denominator=100))
def test_interval_mode_agrees_with_exact_mode(x, y):
    lhs = power(x, 3) / y + x
    rhs = total([y, power(x, 2)])
    exact = certify(lhs, rhs, mode="exact").ordering
    assert certify(lhs, rhs, 256, mode="interval").ordering in (exact, Ordering3.INDETERMINATE)
    if exact is not Ordering3.EQUAL:
        assert certify(lhs, rhs, 4096, mode="interval").ordering is exact


def test_precision_schedule():
    assert precision_schedule(8192) == [64, 128, 256, 512, 1024, 2048, 4096, 8192]
    assert precision_schedule(100) == [64]
    assert precision_schedule(32) == [32]
    with pytest.raises(ValueError):
        precision_schedule(0)


def test_unknown_mode():
    with pytest.raises(ValueError):
        certify(Const(F(1)), Const(F(1)), mode="fast")
