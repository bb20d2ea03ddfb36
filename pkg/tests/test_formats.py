from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radoncert.errors import ParseError
from radoncert.formats import parse_instance, parse_integral_problem, serialize_instance
from radoncert.inequalities import Family, InequalityInstance

rat = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def test_minimal_bergstrom():
    inst = parse_instance('{"family": "Bergstrom", "a": ["1", "1"], "b": ["1", "1"]}')
    assert inst == InequalityInstance(Family.BERGSTROM, [1, 1], [1, 1])


def test_missing_parameter():
    with pytest.raises(ParseError, match="missing m"):
        parse_instance('{"family": "radon", "a": ["1"], "b": ["1"]}')


def test_canonical_round_trip():
    inst = parse_instance('{"family": "radon", "a": ["2/4"], "b": ["3"], "params": {"m": "4/2"}}')
    text = serialize_instance(inst)
    assert '"1/2"' in text and '"m": "2"' in text
    assert parse_instance(text) == inst


@given(st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.tuples(st.lists(rat, min_size=n, max_size=n), st.lists(rat, min_size=n, max_size=n))),
    rat)
def test_round_trip_property(ab, m):
    inst = InequalityInstance(Family.RADON, ab[0], ab[1], {"m": m})
    assert parse_instance(serialize_instance(inst)) == inst


@pytest.mark.parametrize("text, line, column", [
    ('{"family": "Radon",\n "a": ["1/0"], "b": ["1"], "params": {"m": "1"}}', 2, 8),
    ('{"family": "Nope", "a": ["1"]}', 1, 12),
    ('{"family": ', 1, 12),
    ('{"family": "Bergstrom", "a": [1.5], "b": ["1"]}', 1, 31),
])
def test_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_unknown_field():
    with pytest.raises(ParseError, match="unknown field"):
        parse_instance('{"family": "Bergstrom", "a": ["1"], "b": ["1"], "c": []}')


def test_integral_problem():
    prob = parse_integral_problem(
        '{"f": [{"lo": "0", "hi": "1", "coeffs": ["1", "1"]}],'
        ' "g": [{"lo": "0", "hi": "1", "coeffs": ["1"]}], "params": {"m": "1"}}')
    assert prob["params"] == {"m": 1}
    assert prob["f"](Fraction(1, 2)) == Fraction(3, 2)
    with pytest.raises(ParseError):
        parse_integral_problem('{"f": []}')
