from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import fraction_sides
from radoncert.errors import DomainError, InfeasibleSpec
from radoncert.inequalities import Family, Outcome, validate_domain
from radoncert.search import (
    OVERRIDES,
    STANDARD_SEEDS,
    SearchSpec,
    find_counterexample,
    gen_instance,
    normalize_override,
)

F = Fraction


@given(st.integers(min_value=0, max_value=2 ** 64 - 1), st.integers(min_value=0, max_value=10 ** 6))
def test_generation_is_deterministic(seed, index):
    spec = SearchSpec("RadonGeneral", "r < s+1", seed=seed)
    assert gen_instance(spec, index) == gen_instance(spec, index)


def test_fixed_parameters_are_respected():
    spec = SearchSpec("RadonGeneral", "r >= s+1", fixed={"r": 1, "s": 1})
    for i in range(50):
        assert gen_instance(spec, i).params == {"r": 1, "s": 1}


def test_n_range_is_respected():
    spec = SearchSpec("Bergstrom", n_range=(2, 2))
    assert {gen_instance(spec, i).n for i in range(50)} == {2}


@pytest.mark.parametrize("family, override", [(f, o) for f, os in OVERRIDES.items() for o in os])
def test_overrides_violate_exactly_the_named_predicate(family, override):
    spec = SearchSpec(family, override)
    for i in range(40):
        with pytest.raises(DomainError) as info:
            validate_domain(gen_instance(spec, i))
        assert info.value.predicate == override


@pytest.mark.parametrize("family", list(Family))
def test_valid_domain_generation(family):
    spec = SearchSpec(family, n_range=(1, 4))
    for i in range(40):
        validate_domain(gen_instance(spec, i))


def test_values_stay_in_range():
    spec = SearchSpec("CauchySchwarz", value_range=(0, 3), max_denominator=4)
    for i in range(100):
        inst = gen_instance(spec, i)
        assert all(0 <= x <= 3 for x in inst.a + inst.b)
        assert all(x.denominator <= 1000 for x in inst.a + inst.b)


@pytest.mark.parametrize("kwargs", [
    dict(family="RadonGeneral", domain_override="p < 1"),
    dict(family="Chrystal", domain_override="r < s+1"),
    dict(family="Bergstrom", n_range=(3, 1)),
    dict(family="Bergstrom", fixed={"m": 1}),
    dict(family="Bernoulli", n_range=(2, 3)),
])
def test_infeasible_specs(kwargs):
    with pytest.raises(InfeasibleSpec):
        spec = SearchSpec(**kwargs)
        gen_instance(spec, 0)


def test_fixed_parameters_contradicting_the_override():
    spec = SearchSpec("RadonGeneral", "r < s+1", fixed={"r": 3, "s": 1})
    with pytest.raises(InfeasibleSpec):
        gen_instance(spec, 0)


def test_override_spellings():
    assert normalize_override("r ≥ s + 1") == "r < s+1"
    assert normalize_override("0 > m > −1") == "-1 < m < 0"
    assert normalize_override(None) is None


def test_sharpness_witness():
    result = find_counterexample(SearchSpec("RadonGeneral", "r < s+1", fixed={"r": 1, "s": 1},
                                            n_range=(2, 3), trials=10_000))
    assert result.found
    assert result.verdict.outcome is Outcome.VIOLATED
    inst = result.instance
    lhs, rhs = fraction_sides(Family.RADON_GENERAL, inst.a, inst.b, inst.params)
    assert lhs < rhs
    assert (result.verdict.lhs_exact, result.verdict.rhs_exact) == (lhs, rhs)


def test_bernoulli_below_one():
    result = find_counterexample(SearchSpec("Bernoulli", "r < 1", fixed={"r": F(1, 2)}, trials=100))
    assert result.found and result.verdict.outcome is Outcome.VIOLATED


def test_valid_domain_finds_nothing():
    result = find_counterexample(SearchSpec("RadonGeneral", fixed={"r": 3, "s": 1}, trials=1000))
    assert not result.found and result.trials == 1000 and result.errors == 0


@pytest.mark.parametrize("seed", STANDARD_SEEDS)
@pytest.mark.parametrize("family", list(Family))
def test_no_false_positives_across_standard_seeds(family, seed):
    result = find_counterexample(SearchSpec(family, seed=seed, trials=150))
    assert not result.found


def test_parallel_search_matches_serial():
    spec = SearchSpec("RadonGeneral", "r, s of mixed sign", trials=200)
    serial = find_counterexample(spec)
    parallel = find_counterexample(spec, workers=3, block=4)
    assert serial.found and parallel.found
    assert (serial.trial_index, serial.instance) == (parallel.trial_index, parallel.instance)
