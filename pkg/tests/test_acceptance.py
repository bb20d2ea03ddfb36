"""Acceptance criteria 1-9.

Run ``python tests/test_acceptance.py`` for one PASS/FAIL line per
criterion, or let pytest collect it (the lines are repeated in the
terminal summary).
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from oracles import fraction_sides, random_tree  # noqa: E402
from radoncert.errors import DomainError  # noqa: E402
from radoncert.exactnum import eval_exact, eval_interval  # noqa: E402
from radoncert.inequalities import (  # noqa: E402
    Family,
    Outcome,
    check_bergstrom,
    check_instance,
    check_radon,
)
from radoncert.integral import PiecewisePoly, check_integral_radon  # noqa: E402
from radoncert.reductions import (  # noqa: E402
    powermean_to_radon,
    radon_to_powermean,
    triangle_bound,
    unit_product_bound,
    verify_reduction,
)
from radoncert.search import STANDARD_SEED, SearchSpec, find_counterexample, gen_instance  # noqa: E402

F = Fraction
OK = {Outcome.HOLDS, Outcome.EQUALITY_CERTIFIED}
RESULTS: dict[int, str] = {}


def _record(number: int, ok: bool, detail: str) -> bool:
    RESULTS[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


# 1 -------------------------------------------------------------------------------

def criterion_1() -> bool:
    t0 = time.perf_counter()
    sym = unit_product_bound(1, 1, 1)
    x, y, z = F(2), F(1, 2), F(1)
    oracle = x ** 3 / ((1 + y) * (1 + z)) + y ** 3 / ((1 + z) * (1 + x)) + z ** 3 / ((1 + x) * (1 + y))
    asym = unit_product_bound(x, y, z)
    elapsed = time.perf_counter() - t0
    ok = (sym.outcome is Outcome.EQUALITY_CERTIFIED and sym.lhs_exact == F(3, 4)
          and asym.outcome is Outcome.HOLDS and asym.lhs_exact == oracle == F(419, 144)
          and elapsed < 1)
    return _record(1, ok, f"(1,1,1) {sym.outcome.value} lhs={sym.lhs_exact}; (2,1/2,1) "
                          f"{asym.outcome.value} lhs={asym.lhs_exact} oracle={oracle}; {elapsed:.3f}s < 1s")


# 2 -------------------------------------------------------------------------------

def criterion_2() -> bool:
    t0 = time.perf_counter()
    v = triangle_bound(1, 1, 1, 1)
    elapsed = time.perf_counter() - t0
    oracle = fraction_sides(Family.TRIANGLE, [1, 1, 1], params={"n": 1})
    ok = (v.outcome is Outcome.EQUALITY_CERTIFIED and (v.lhs_exact, v.rhs_exact) == oracle == (F(3, 2), F(3, 2))
          and elapsed < 1)
    return _record(2, ok, f"{v.outcome.value} lhs={v.lhs_exact} rhs={v.rhs_exact}; {elapsed:.3f}s < 1s")


# 3 -------------------------------------------------------------------------------

SUITE_FAMILIES = (
    Family.BERGSTROM, Family.RADON, Family.RADON_GENERAL, Family.POWER_MEAN, Family.GEO_SUPERADD,
    Family.CHRYSTAL, Family.CAUCHY_SCHWARZ, Family.BERNOULLI, Family.WEIGHTED_AMGM, Family.HOLDER,
    Family.MINKOWSKI,
)
INTEGER_EXPONENT_FAMILIES = {Family.RADON, Family.RADON_GENERAL}


def criterion_3(per_family: int = 1000, budget: int = 256) -> bool:
    t0 = time.perf_counter()
    bad, radon_ms = [], set()
    for fam in SUITE_FAMILIES:
        spec = SearchSpec(fam, integer_exponents=fam in INTEGER_EXPONENT_FAMILIES)
        for i in range(per_family):
            inst = gen_instance(spec, i)
            if fam is Family.RADON:
                radon_ms.add(inst.params["m"])
            v = check_instance(inst, budget=budget)
            if v.outcome not in OK:
                bad.append((fam.value, i, v.outcome.value))
    elapsed = time.perf_counter() - t0
    ms_ok = radon_ms == {F(k) for k in (*range(6), -1, -2, -3, -4)}
    ok = not bad and ms_ok and elapsed < 60
    return _record(3, ok, f"{per_family} x {len(SUITE_FAMILIES)} families at {budget} bits, "
                          f"{len(bad)} Violated/Indeterminate, Radon m covers 0..5,-1..-4: {ms_ok}; "
                          f"{elapsed:.1f}s < 60s")


# 4 -------------------------------------------------------------------------------

ORACLE_FAMILIES = (Family.BERGSTROM, Family.RADON, Family.RADON_GENERAL, Family.BERNOULLI,
                   Family.TRIANGLE, Family.CONSTRAINED_SUM, Family.UNIT_PRODUCT)


def _sign(v) -> int | None:
    if v.outcome is Outcome.EQUALITY_CERTIFIED:
        return 0
    if v.margin_exact is not None:
        return (v.margin_exact > 0) - (v.margin_exact < 0)
    if v.margin is not None and v.margin.lo > 0:
        return 1
    if v.margin is not None and v.margin.hi < 0:
        return -1
    return None


def criterion_4(total: int = 1000) -> bool:
    t0 = time.perf_counter()
    count, mismatches = 0, []
    per = -(-total // len(ORACLE_FAMILIES))
    for fam in ORACLE_FAMILIES:
        spec = SearchSpec(fam, integer_exponents=True, n_range=(2, 4) if fam is not Family.BERNOULLI else (1, 4),
                          seed=STANDARD_SEED + 4)
        i = taken = 0
        while taken < per and count < total:
            inst = gen_instance(spec, i)
            i += 1
            exact = check_instance(inst, mode="exact")
            interval = check_instance(inst, mode="interval", budget=8192)
            taken += 1
            count += 1
            if exact.outcome is not interval.outcome or _sign(exact) != _sign(interval):
                mismatches.append((fam.value, i - 1))
    elapsed = time.perf_counter() - t0
    ok = count == total and not mismatches
    return _record(4, ok, f"{count} integer-exponent instances, {len(mismatches)} outcome/sign mismatches "
                          f"between interval and exact pipelines; {elapsed:.1f}s")


# 5 -------------------------------------------------------------------------------

def criterion_5(total: int = 200) -> bool:
    rng = random.Random(5)
    failures = 0
    for k in range(total):
        n = rng.randint(1, 4)
        if k % 2 == 0:
            a = [F(rng.randint(0, 30), rng.randint(1, 6)) for _ in range(n)]
            b = [F(rng.randint(1, 30), rng.randint(1, 6)) for _ in range(n)]
            rec = powermean_to_radon(a, b, rng.randint(0, 5))
        else:
            p = [F(rng.randint(1, 30), rng.randint(1, 6)) for _ in range(n)]
            y = [F(rng.randint(0, 30), rng.randint(1, 6)) for _ in range(n)]
            s = rng.randint(1, 3)
            rec = radon_to_powermean(p, y, s * rng.randint(1, 4), s)
        terms_equal = all(eval_exact(u) == eval_exact(w) for u, w in zip(rec.source_terms, rec.target_terms))
        src, tgt = verify_reduction(rec)
        if not (rec.identity_checked and terms_equal and src.outcome is tgt.outcome):
            failures += 1
    return _record(5, failures == 0, f"{total} reductions (both directions), {failures} failures "
                                     f"(term identities, verdicts)")


# 6 -------------------------------------------------------------------------------

def criterion_6(total: int = 100) -> bool:
    rng = random.Random(6)
    failures = 0
    for _ in range(total):
        n = rng.randint(1, 5)
        x = [F(rng.randint(0, 40), rng.randint(1, 8)) for _ in range(n)]
        y = [F(rng.randint(1, 40), rng.randint(1, 8)) for _ in range(n)]
        berg, radon = check_bergstrom(x, y), check_radon(x, y, 1)
        if berg.margin_exact is None or berg.margin_exact != radon.margin_exact or berg.outcome is not radon.outcome:
            failures += 1
    return _record(6, failures == 0, f"{total} instances, {failures} margin mismatches between Radon m=1 and Bergstrom")


# 7 -------------------------------------------------------------------------------

def criterion_7(cases: int = 50) -> bool:
    import sympy as sp

    t0 = time.perf_counter()
    t = sp.symbols("t")
    lhs_oracle = sp.integrate((t + 1) ** 2, (t, 0, 1))
    rhs_oracle = sp.integrate(t + 1, (t, 0, 1)) ** 2 / sp.integrate(sp.Integer(1), (t, 0, 1))
    lhs_q, rhs_q = F(int(lhs_oracle.p), int(lhs_oracle.q)), F(int(rhs_oracle.p), int(rhs_oracle.q))
    v = check_integral_radon(PiecewisePoly.polynomial([1, 1]), PiecewisePoly.constant(1), 1)
    desk = (v.outcome is Outcome.HOLDS and v.lhs.contains(lhs_q) and v.rhs.contains(rhs_q)
            and (lhs_q, rhs_q) == (F(7, 3), F(9, 4)))

    rng = random.Random(7)
    agree = 0
    for _ in range(cases):
        n = rng.randint(1, 6)
        a = [F(rng.randint(1, 40), rng.randint(1, 6)) for _ in range(n)]
        b = [x * 3 for x in a] if rng.random() < 0.2 else [F(rng.randint(1, 40), rng.randint(1, 6)) for _ in range(n)]
        m = rng.choice([0, 1, 2, 3, -1, -2, -3, F(1, 2), F(3, 2)])
        width = F(rng.randint(1, 4))
        vi = check_integral_radon(PiecewisePoly.step(a, 0, width), PiecewisePoly.step(b, 0, width), m)
        vf = check_radon(a, b, m)
        agree += vi.outcome is vf.outcome
    elapsed = time.perf_counter() - t0
    ok = desk and agree == cases and elapsed < 30
    return _record(7, ok, f"x+1 vs 1 on [0,1]: {v.outcome.value} at {v.partitions} partitions, enclosures contain "
                          f"{lhs_q} and {rhs_q}: {desk}; step-function agreement {agree}/{cases}; "
                          f"{elapsed:.1f}s < 30s")


# 8 -------------------------------------------------------------------------------

def criterion_8() -> bool:
    sharp = find_counterexample(SearchSpec("RadonGeneral", "r < s+1", fixed={"r": 1, "s": 1},
                                           trials=10_000, seed=STANDARD_SEED))
    witness_ok = False
    if sharp.found:
        inst = sharp.instance
        lhs, rhs = fraction_sides(Family.RADON_GENERAL, inst.a, inst.b, inst.params)
        witness_ok = sharp.verdict.outcome is Outcome.VIOLATED and lhs < rhs
    valid = find_counterexample(SearchSpec("RadonGeneral", fixed={"r": 3, "s": 1}, trials=1000,
                                           seed=STANDARD_SEED))
    ok = witness_ok and not valid.found and valid.trials == 1000
    where = (f"witness at trial {sharp.trial_index}: a={[str(x) for x in sharp.instance.a]} "
             f"b={[str(x) for x in sharp.instance.b]}") if sharp.found else "no witness"
    return _record(8, ok, f"r=s=1 {where} (oracle-confirmed: {witness_ok}); "
                          f"r=3,s=1 NoneFound after {valid.trials} trials: {not valid.found}")


# 9 -------------------------------------------------------------------------------

def criterion_9(trees: int = 1000) -> bool:
    failures = checked = 0
    seed = 0
    while checked < trees:
        tree = random_tree(random.Random(f"tree:{seed}"))
        seed += 1
        try:
            value = eval_exact(tree)
        except (ZeroDivisionError, DomainError):
            continue
        checked += 1
        widths = []
        for p in (64, 128, 256):
            iv = eval_interval(tree, p)
            if not iv.contains(value):
                failures += 1
            widths.append(iv.width)
        if not widths[0] >= widths[1] >= widths[2]:
            failures += 1
    return _record(9, failures == 0, f"{checked} trees at 64/128/256 bits, {failures} containment or "
                                     f"width-monotonicity failures")


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_acceptance_criterion(number):
    ok = CRITERIA[number]()
    print(RESULTS[number])
    assert ok, RESULTS[number]


def main() -> int:
    passed = 0
    for number, check in sorted(CRITERIA.items()):
        try:
            passed += check()
        except Exception as exc:  # report and keep going
            _record(number, False, f"raised {type(exc).__name__}: {exc}")
        print(RESULTS[number], flush=True)
    print(f"{passed}/{len(CRITERIA)} criteria passed")
    return 0 if passed == len(CRITERIA) else 1


if __name__ == "__main__":
    sys.exit(main())
