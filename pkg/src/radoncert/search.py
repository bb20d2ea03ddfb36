"""Seeded random instances and counterexample search outside validity domains.

Every trial is a pure function of ``(seed, trial_index)``, so trials can be
spread over worker processes and the reported witness is always the one
with the smallest index.
"""

from __future__ import annotations

import logging
import re
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import DomainError, InfeasibleSpec, InstanceError, RadonCertError
from .exactnum import as_rational
from .inequalities import (
    Family,
    InequalityInstance,
    Outcome,
    Verdict,
    check_instance,
    family_shape,
    validate_domain,
)

log = logging.getLogger(__name__)

STANDARD_SEED = 0
STANDARD_SEEDS = (0, 1, 2)
NEAR_ZERO = Fraction(1, 1000)
DEFAULT_SEARCH_BUDGET = 1024

# violated precondition -> families supporting it
OVERRIDES: Mapping[Family, tuple[str, ...]] = {
    Family.BERGSTROM: ("y_k <= 0",),
    Family.RADON: ("-1 < m < 0",),
    Family.RADON_GENERAL: ("r < s+1", "r, s of mixed sign"),
    Family.POWER_MEAN: ("r < s",),
    Family.GEO_SUPERADD: ("sum(weights) != 1",),
    Family.BERNOULLI: ("r < 1", "x < -1"),
    Family.WEIGHTED_AMGM: ("sum(weights) != 1",),
    Family.HOLDER: ("1/p + 1/q != 1",),
    Family.MINKOWSKI: ("p < 1",),
    Family.CONSTRAINED_SUM: ("p < q+1",),
}

_ALIASES = {
    "r >= s+1": "r < s+1",
    "0 > m > -1": "-1 < m < 0",
    "m >= 0 or m <= -1": "-1 < m < 0",
    "r >= s": "r < s",
    "r >= 1": "r < 1",
    "x >= -1": "x < -1",
    "p >= 1": "p < 1",
    "p >= q+1": "p < q+1",
    "y_k > 0": "y_k <= 0",
    "sum(weights) = 1": "sum(weights) != 1",
    "1/p + 1/q = 1": "1/p + 1/q != 1",
}


def normalize_override(text: str | None) -> str | None:
    if text is None:
        return None
    t = " ".join(text.replace("−", "-").replace("≥", ">=").replace("≤", "<=")
                 .replace("≠", "!=").split())
    t = re.sub(r"\b([sq]) \+ 1\b", r"\1+1", t)
    if t.lower() in ("", "none", "valid"):
        return None
    return _ALIASES.get(t, t)


@dataclass(frozen=True)
class SearchSpec:
    """What to search: a family, the precondition to violate (None for the
    valid domain), instance sizes, the value box, and trial count/seed.

    ``fixed`` pins named exponents (e.g. ``{"r": 1, "s": 1}``);
    ``integer_exponents`` restricts every drawn exponent to an integer.
    """

    family: Family
    domain_override: str | None = None
    n_range: tuple[int, int] = (1, 4)
    value_range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(10))
    trials: int = 1000
    seed: int = STANDARD_SEED
    fixed: Mapping[str, Fraction] = field(default_factory=dict)
    max_denominator: int = 8
    budget: int = DEFAULT_SEARCH_BUDGET
    integer_exponents: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "domain_override", normalize_override(self.domain_override))
        object.__setattr__(self, "value_range", tuple(as_rational(v) for v in self.value_range))
        object.__setattr__(self, "fixed", {k: as_rational(v) for k, v in dict(self.fixed).items()})
        lo, hi = self.n_range
        if not 1 <= lo <= hi:
            raise InfeasibleSpec(f"bad n_range {self.n_range}")
        vlo, vhi = self.value_range
        if not vlo < vhi or vhi <= 0:
            raise InfeasibleSpec(f"bad value_range {self.value_range}")
        if self.trials < 0 or self.max_denominator < 1:
            raise InfeasibleSpec("trials must be >= 0 and max_denominator >= 1")
        if self.domain_override is not None and self.domain_override not in OVERRIDES.get(self.family, ()):
            raise InfeasibleSpec(f"{self.family.value} has no override {self.domain_override!r}; "
                                 f"known: {', '.join(OVERRIDES.get(self.family, ())) or 'none'}")
        unknown = set(self.fixed) - set(family_shape(self.family).params)
        if unknown:
            raise InfeasibleSpec(f"{self.family.value} has no parameter(s) {', '.join(sorted(unknown))}")


class _Draw:
    """Corner-biased rational draws from one trial's generator."""

    def __init__(self, rng: random.Random, spec: SearchSpec):
        self.rng = rng
        self.spec = spec

    def rational(self, lo, hi, den_max=None) -> Fraction:
        lo, hi = Fraction(lo), Fraction(hi)
        if den_max is not None and self.spec.integer_exponents:
            den_max = 1  # explicit den_max marks an exponent draw
        den = self.rng.randint(1, den_max or self.spec.max_denominator)
        a, b = -((-lo * den).__floor__()), (hi * den).__floor__()
        if a > b:
            return lo if lo.denominator <= den else (lo + hi) / 2
        return Fraction(self.rng.randint(a, b), den)

    def open_rational(self, lo, hi, den_max=None) -> Fraction:
        """Rational strictly inside (lo, hi)."""
        lo, hi = Fraction(lo), Fraction(hi)
        for _ in range(8):
            x = self.rational(lo, hi, den_max)
            if lo < x < hi:
                return x
        return (lo + hi) / 2

    def value(self, positive=False) -> Fraction:
        lo, hi = self.spec.value_range
        lo = max(lo, Fraction(0))
        if self.rng.random() < 0.25:
            x = NEAR_ZERO if positive or self.rng.random() < 0.5 else Fraction(0)
            return min(x, hi)
        x = self.rational(lo, hi)
        if positive and x <= 0:
            return NEAR_ZERO
        return x

    def signed(self) -> Fraction:
        hi = self.spec.value_range[1]
        if self.rng.random() < 0.25:
            return self.rng.choice((Fraction(0), NEAR_ZERO, -NEAR_ZERO))
        return self.rational(-hi, hi)

    def vector(self, n, positive=False):
        return [self.value(positive) for _ in range(n)]

    def weights(self, n, total=Fraction(1)):
        raw = [0 if self.rng.random() < 0.2 else self.rng.randint(1, 6) for _ in range(n)]
        if not any(raw):
            raw[self.rng.randrange(n)] = 1
        s = sum(raw)
        return [Fraction(w, s) * total for w in raw]

    def param(self, name, default):
        fixed = self.spec.fixed
        return fixed[name] if name in fixed else default()


def _gen(d: _Draw, fam: Family, n: int, violate: str | None) -> InequalityInstance:
    R, rng = d.rational, d.rng
    if fam is Family.BERGSTROM:
        x = [d.signed() for _ in range(n)]
        y = d.vector(n, positive=True)
        if violate:
            k = rng.randrange(n)
            y[k] = -R(0, d.spec.value_range[1])
        return InequalityInstance(fam, x, y)
    if fam is Family.RADON:
        if violate:
            m = d.param("m", lambda: d.open_rational(-1, 0, 6))
        else:
            m = d.param("m", lambda: R(0, 5, 2) if rng.random() < 0.5 else R(-4, -1, 2))
        a = d.vector(n, positive=m < 0)
        return InequalityInstance(fam, a, d.vector(n, positive=True), {"m": m})
    if fam is Family.RADON_GENERAL:
        if violate == "r < s+1":
            s = d.param("s", lambda: R(0, 3, 2))
            r = d.param("r", lambda: R(0, s + 1, 2) if s + 1 > 0 else s)
            if r >= s + 1 and "r" not in d.spec.fixed:
                r = max(Fraction(0), s + Fraction(1, 2))
        elif violate == "r, s of mixed sign":
            s = d.param("s", lambda: -R(Fraction(1, 3), 3, 3))
            r = d.param("r", lambda: R(max(s + 1, Fraction(1, 3)), 4, 3))
        elif rng.random() < 0.5:
            s = d.param("s", lambda: R(0, 3, 2))
            r = d.param("r", lambda: R(s + 1, s + 4, 2))
        else:
            r = d.param("r", lambda: R(-3, 0, 2))
            s = d.param("s", lambda: R(r - 4, r - 1, 2))
        positive = not (r >= 0 and s >= 0)
        return InequalityInstance(fam, d.vector(n, positive), d.vector(n, True), {"r": r, "s": s})
    if fam is Family.POWER_MEAN:
        s = d.param("s", lambda: R(Fraction(1, 3), 4, 3))
        if violate:
            r = d.param("r", lambda: d.open_rational(0, s, 4))
        else:
            r = d.param("r", lambda: R(s, s + 4, 3))
        return InequalityInstance(fam, d.vector(n), d.vector(n, True), {"r": r, "s": s})
    if fam is Family.GEO_SUPERADD:
        total = Fraction(1)
        if violate:
            total = R(Fraction(1, 4), Fraction(3, 4), 4) if rng.random() < 0.5 else R(Fraction(5, 4), 2, 4)
        return InequalityInstance(fam, d.vector(n), d.vector(n), weights=d.weights(n, total))
    if fam is Family.CHRYSTAL:
        return InequalityInstance(fam, d.vector(n, positive=True))
    if fam is Family.CAUCHY_SCHWARZ:
        return InequalityInstance(fam, d.vector(n), d.vector(n))
    if fam is Family.BERNOULLI:
        hi = d.spec.value_range[1]
        if violate == "x < -1":
            r = d.param("r", lambda: Fraction(rng.randint(1, 5)))
            x = -1 - R(NEAR_ZERO, hi)
        else:
            if violate == "r < 1":
                r = d.param("r", lambda: d.open_rational(0, 1, 6))
            else:
                r = d.param("r", lambda: R(1, 5, 3))
            x = rng.choice((Fraction(-1), Fraction(0))) if rng.random() < 0.25 else R(-1, hi)
        return InequalityInstance(fam, [x], params={"r": r})
    if fam is Family.WEIGHTED_AMGM:
        total = R(Fraction(5, 4), 2, 4) if violate else Fraction(1)
        return InequalityInstance(fam, d.vector(n, True), d.weights(n, total))
    if fam is Family.HOLDER:
        if violate:
            p = d.param("p", lambda: d.open_rational(1, 5, 3))
            q = d.param("q", lambda: d.open_rational(1, 5, 3))
            if 1 / p + 1 / q == 1 and "q" not in d.spec.fixed:
                q += Fraction(1, 7)
        else:
            p = d.param("p", lambda: d.open_rational(1, 5, 3))
            if d.spec.integer_exponents and "p" not in d.spec.fixed:
                p = Fraction(2)
            q = d.param("q", lambda: p / (p - 1))
        return InequalityInstance(fam, d.vector(n), d.vector(n), {"p": p, "q": q})
    if fam is Family.MINKOWSKI:
        if violate:
            p = d.param("p", lambda: d.open_rational(0, 1, 4))
        else:
            p = d.param("p", lambda: R(1, 5, 3))
        return InequalityInstance(fam, d.vector(n), d.vector(n), {"p": p})
    if fam is Family.TRIANGLE:
        a, b = d.value(True), d.value(True)
        c = d.open_rational(abs(a - b), a + b)
        return InequalityInstance(fam, [a, b, c], params={"n": d.param("n", lambda: R(1, 5, 2))})
    if fam is Family.CONSTRAINED_SUM:
        q = d.param("q", lambda: R(0, 3, 2))
        if violate:
            p = d.param("p", lambda: d.open_rational(q - 1, q + 1, 3))
        else:
            p = d.param("p", lambda: R(q + 1, q + 4, 2))
        return InequalityInstance(fam, d.vector(n, True), params={"p": p, "q": q})
    if fam is Family.UNIT_PRODUCT:
        x, y = d.value(True), d.value(True)
        return InequalityInstance(fam, [x, y, 1 / (x * y)])
    raise InfeasibleSpec(f"no generator for {fam.value}")  # pragma: no cover


def gen_instance(spec: SearchSpec, trial_index: int) -> InequalityInstance:
    """Deterministic instance for ``(spec.seed, trial_index)``.

    The overridden precondition is violated and every other one holds; a spec
    whose fixed parameters make that impossible raises InfeasibleSpec.
    """
    rng = random.Random(f"radoncert:{spec.seed}:{trial_index}")
    shape = family_shape(spec.family)
    lo, hi = spec.n_range
    if spec.family is Family.CONSTRAINED_SUM:
        lo = max(lo, 2)
    if shape.size is not None:
        if not lo <= shape.size <= hi:
            raise InfeasibleSpec(f"{spec.family.value} has fixed size {shape.size}, outside n_range {spec.n_range}")
        n = shape.size
    elif lo > hi:
        raise InfeasibleSpec(f"n_range {spec.n_range} infeasible for {spec.family.value}")
    else:
        n = rng.randint(lo, hi)
    try:
        inst = _gen(_Draw(rng, spec), spec.family, n, spec.domain_override)
    except (InstanceError, ZeroDivisionError) as exc:
        raise InfeasibleSpec(str(exc)) from None
    try:
        validate_domain(inst)
    except DomainError as exc:
        if spec.domain_override is None:
            raise InfeasibleSpec(f"fixed parameters leave the valid domain: {exc}") from None
        if exc.predicate != spec.domain_override:
            raise InfeasibleSpec(f"instance violates {exc.predicate!r}, not {spec.domain_override!r}") from None
        return inst
    if spec.domain_override is not None:
        raise InfeasibleSpec(f"fixed parameters satisfy {spec.domain_override!r}")
    return inst


@dataclass(frozen=True)
class SearchResult:
    """A certified Violated witness, or NoneFound after ``trials`` trials.

    NoneFound is evidence only, never a proof of validity.
    """

    found: bool
    trials: int
    trial_index: int | None = None
    instance: InequalityInstance | None = None
    verdict: Verdict | None = None
    errors: int = 0


def _run_trial(spec: SearchSpec, index: int):
    inst = gen_instance(spec, index)
    try:
        verdict = check_instance(inst, budget=spec.budget, validate=spec.domain_override is None)
    except (RadonCertError, ZeroDivisionError, ArithmeticError) as exc:
        log.debug("trial %d: evaluation error %s: %s", index, type(exc).__name__, exc)
        return index, inst, None
    return index, inst, verdict


def _run_block(spec: SearchSpec, indices: range):
    return [_run_trial(spec, i) for i in indices]


def find_counterexample(spec: SearchSpec, *, workers: int = 1, block: int = 64) -> SearchResult:
    """First trial (by index) whose instance is certified Violated.

    Indeterminate verdicts and evaluation errors never count as witnesses.
    The result does not depend on ``workers``.
    """
    errors = 0
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        start = 0
        while start < spec.trials:
            stop = min(spec.trials, start + block * max(workers, 1))
            if pool is None:
                results = _run_block(spec, range(start, stop))
            else:
                bounds = list(range(start, stop, block)) + [stop]
                futures = [pool.submit(_run_block, spec, range(a, b)) for a, b in zip(bounds, bounds[1:])]
                results = [r for fut in futures for r in fut.result()]
            for index, inst, verdict in results:
                if verdict is None:
                    errors += 1
                    continue
                if verdict.outcome is Outcome.VIOLATED:
                    log.info("witness at trial %d", index)
                    return SearchResult(True, index + 1, index, inst, verdict, errors)
            start = stop
    finally:
        if pool is not None:
            pool.shutdown()
    return SearchResult(False, spec.trials, errors=errors)
