"""Finite-sum inequality instances and their certified verdicts.

Each family contributes four things: a structural shape (which vectors and
parameters it needs), a domain predicate, the two side expressions, and the
algebraic equality conditions that are allowed to certify equality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .errors import DomainError, InstanceError, NotATriangle, ProductNotOne
from .exactnum import (
    DEFAULT_BUDGET,
    DyadicInterval,
    Expr,
    Ordering3,
    as_rational,
    as_rationals,
    certify,
    format_rational,
    lift,
    power,
    product,
    round_down,
    round_up,
    total,
)
from .exactnum.expr import Certificate


class Family(enum.Enum):
    BERGSTROM = "Bergstrom"
    RADON = "Radon"
    RADON_GENERAL = "RadonGeneral"
    POWER_MEAN = "PowerMean"
    GEO_SUPERADD = "GeoSuperadd"
    CHRYSTAL = "Chrystal"
    CAUCHY_SCHWARZ = "CauchySchwarz"
    BERNOULLI = "Bernoulli"
    WEIGHTED_AMGM = "WeightedAMGM"
    HOLDER = "Holder"
    MINKOWSKI = "Minkowski"
    TRIANGLE = "Triangle"
    CONSTRAINED_SUM = "ConstrainedSum"
    UNIT_PRODUCT = "UnitProduct"

    @classmethod
    def parse(cls, name) -> "Family":
        if isinstance(name, Family):
            return name
        key = "".join(ch for ch in str(name).lower() if ch.isalnum())
        for fam in cls:
            if fam.value.lower() == key:
                return fam
        alias = _ALIASES.get(key)
        if alias is None:
            raise InstanceError(f"unknown family {name!r}")
        return alias


_ALIASES = {
    "amgm": Family.WEIGHTED_AMGM,
    "cbs": Family.CAUCHY_SCHWARZ,
    "geosuperadditivity": Family.GEO_SUPERADD,
    "nesbitt": Family.TRIANGLE,
    "powermeans": Family.POWER_MEAN,
}

COMPANIONS = (Family.BERNOULLI, Family.WEIGHTED_AMGM, Family.HOLDER, Family.MINKOWSKI)


class Outcome(enum.Enum):
    HOLDS = "Holds"
    EQUALITY_CERTIFIED = "EqualityCertified"
    VIOLATED = "Violated"
    INDETERMINATE = "Indeterminate"

    @property
    def ok(self) -> bool:
        return self in (Outcome.HOLDS, Outcome.EQUALITY_CERTIFIED)


@dataclass(frozen=True)
class _Shape:
    needs_b: bool = True
    params: tuple[str, ...] = ()
    weights: bool = False
    size: int | None = None  # fixed length of ``a``


_SHAPES = {
    Family.BERGSTROM: _Shape(),
    Family.RADON: _Shape(params=("m",)),
    Family.RADON_GENERAL: _Shape(params=("r", "s")),
    Family.POWER_MEAN: _Shape(params=("r", "s")),
    Family.GEO_SUPERADD: _Shape(weights=True),
    Family.CHRYSTAL: _Shape(needs_b=False),
    Family.CAUCHY_SCHWARZ: _Shape(),
    Family.BERNOULLI: _Shape(needs_b=False, params=("r",), size=1),
    Family.WEIGHTED_AMGM: _Shape(),
    Family.HOLDER: _Shape(params=("p", "q")),
    Family.MINKOWSKI: _Shape(params=("p",)),
    Family.TRIANGLE: _Shape(needs_b=False, params=("n",), size=3),
    Family.CONSTRAINED_SUM: _Shape(needs_b=False, params=("p", "q")),
    Family.UNIT_PRODUCT: _Shape(needs_b=False, size=3),
}


def family_shape(family: Family) -> _Shape:
    return _SHAPES[Family.parse(family)]


@dataclass(frozen=True)
class InequalityInstance:
    """One inequality to verify.

    ``a`` holds the first vector (a_k, x_k), ``b`` the second (b_k, y_k, or
    the weights p_k / lambda_k for PowerMean and WeightedAMGM), ``weights``
    the convex weights of GeoSuperadd, and ``params`` the named exponents.
    """

    family: Family
    a: tuple
    b: tuple = ()
    params: Mapping[str, Fraction] = field(default_factory=dict)
    weights: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "a", as_rationals(self.a))
        object.__setattr__(self, "b", as_rationals(self.b))
        object.__setattr__(self, "weights", as_rationals(self.weights))
        object.__setattr__(self, "params",
                           {str(k): as_rational(v) for k, v in dict(self.params).items()})
        shape = _SHAPES[self.family]
        name = self.family.value
        if not self.a:
            raise InstanceError(f"{name}: vector a is empty")
        if shape.size is not None and len(self.a) != shape.size:
            raise InstanceError(f"{name}: expected {shape.size} entries in a, got {len(self.a)}")
        if shape.needs_b or shape.weights:
            if len(self.b) != len(self.a):
                raise InstanceError(f"{name}: length mismatch, len(a)={len(self.a)} len(b)={len(self.b)}")
        elif self.b:
            raise InstanceError(f"{name}: takes no vector b")
        if shape.weights:
            if len(self.weights) != len(self.a):
                raise InstanceError(f"{name}: length mismatch, len(weights)={len(self.weights)}")
        elif self.weights:
            raise InstanceError(f"{name}: takes no weights")
        for p in shape.params:
            if p not in self.params:
                raise InstanceError(f"{name}: missing {p}")
        extra = set(self.params) - set(shape.params)
        if extra:
            raise InstanceError(f"{name}: unexpected parameter(s) {', '.join(sorted(extra))}")

    @property
    def n(self) -> int:
        return len(self.a)

    def param(self, name: str) -> Fraction:
        return self.params[name]


@dataclass(frozen=True)
class Verdict:
    """Certified outcome of one inequality check.

    ``margin`` encloses the slack of the inequality as written: lhs - rhs for
    ``>=`` relations, rhs - lhs for ``<=``.  ``*_exact`` hold exact rational
    side values whenever the exact path produced them.
    """

    outcome: Outcome
    lhs: DyadicInterval | None
    rhs: DyadicInterval | None
    margin: DyadicInterval | None
    precision_used: int
    relation: str = ">="
    method: str = "exact"
    family: str | None = None
    lhs_exact: Fraction | None = None
    rhs_exact: Fraction | None = None
    margin_exact: Fraction | None = None
    witness: str | None = None
    partitions: int | None = None
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.outcome.ok

    def to_record(self) -> dict:
        def pair(iv):
            return list(iv.to_pair()) if iv is not None else None

        def rat(q):
            return format_rational(q) if q is not None else None

        rec = {
            "outcome": self.outcome.value,
            "lhs": pair(self.lhs),
            "rhs": pair(self.rhs),
            "margin": pair(self.margin),
            "precision_used": self.precision_used,
            "family": self.family,
            "relation": self.relation,
            "method": self.method,
            "exact": None,
            "witness": self.witness,
            "notes": list(self.notes),
        }
        if self.lhs_exact is not None or self.rhs_exact is not None or self.margin_exact is not None:
            rec["exact"] = {"lhs": rat(self.lhs_exact), "rhs": rat(self.rhs_exact),
                            "margin": rat(self.margin_exact)}
        if self.partitions is not None:
            rec["partitions"] = self.partitions
        return rec


def verdict_from_certificate(cert: Certificate, *, relation: str = ">=", family: str | None = None,
                             witness: str | None = None, partitions: int | None = None,
                             notes: tuple[str, ...] = ()) -> Verdict:
    order = cert.ordering
    if relation == "<=":
        order = order.flipped()
    outcome = {
        Ordering3.GREATER: Outcome.HOLDS,
        Ordering3.EQUAL: Outcome.EQUALITY_CERTIFIED,
        Ordering3.LESS: Outcome.VIOLATED,
        Ordering3.INDETERMINATE: Outcome.INDETERMINATE,
    }[order]
    big, small = (cert.lhs, cert.rhs) if relation == ">=" else (cert.rhs, cert.lhs)
    big_x, small_x = (cert.lhs_exact, cert.rhs_exact) if relation == ">=" else (cert.rhs_exact, cert.lhs_exact)
    p = cert.precision
    margin_exact = None
    if big_x is not None and small_x is not None:
        margin_exact = big_x - small_x
        margin = DyadicInterval.enclose(margin_exact, p)
    else:
        if outcome is Outcome.EQUALITY_CERTIFIED:
            margin_exact = Fraction(0)
        margin = None
        if big is not None and small is not None:
            margin = DyadicInterval(round_down(big.lo - small.hi, p), round_up(big.hi - small.lo, p), p)
    if witness is not None and cert.method != "symbolic":
        witness = None if outcome is not Outcome.EQUALITY_CERTIFIED else witness
    return Verdict(outcome, cert.lhs, cert.rhs, margin, p, relation, cert.method, family,
                   cert.lhs_exact, cert.rhs_exact, margin_exact, witness, partitions, notes)


# -- equality witnesses -----------------------------------------------------

def proportional(a, b) -> bool:
    """(a_k, b_k) all parallel: a_j b_k == a_k b_j for every j, k (exact)."""
    pivot = next((k for k in range(len(a)) if a[k] != 0 or b[k] != 0), None)
    if pivot is None:
        return True
    ap, bp = a[pivot], b[pivot]
    return all(ak * bp == ap * bk for ak, bk in zip(a, b))


def constant(v) -> bool:
    return all(x == v[0] for x in v)


@dataclass(frozen=True)
class EqualityWitness:
    proportional: bool
    all_equal: bool


def equality_witness(inst: InequalityInstance) -> EqualityWitness:
    if inst.b:
        return EqualityWitness(proportional(inst.a, inst.b), constant(inst.a) and constant(inst.b))
    return EqualityWitness(False, constant(inst.a))


# -- domain predicates ------------------------------------------------------

def _require(cond: bool, predicate: str, detail: str = "") -> None:
    if not cond:
        raise DomainError(predicate, f"domain violation: {predicate}" + (f" ({detail})" if detail else ""))


def _nonneg(v, name):
    _require(all(x >= 0 for x in v), f"{name}_k < 0")


def _pos(v, name):
    _require(all(x > 0 for x in v), f"{name}_k <= 0")


def validate_domain(inst: InequalityInstance) -> None:
    """Raise DomainError naming the violated predicate, or return None."""
    f, a, b = inst.family, inst.a, inst.b
    P = inst.params.get
    if f is Family.BERGSTROM:
        _pos(b, "y")
    elif f is Family.RADON:
        m = P("m")
        _pos(b, "b")
        _require(m >= 0 or m <= -1, "-1 < m < 0", f"m = {format_rational(m)}")
        if m >= 0:
            _nonneg(a, "a")
        else:
            _pos(a, "a")
    elif f is Family.RADON_GENERAL:
        r, s = P("r"), P("s")
        _pos(b, "b")
        _require(r >= s + 1, "r < s+1", f"r = {format_rational(r)}, s = {format_rational(s)}")
        if r >= 0 and s >= 0:
            _nonneg(a, "a")
        else:
            _require(r <= 0 and s <= 0, "r, s of mixed sign")
            _pos(a, "a")
    elif f is Family.POWER_MEAN:
        r, s = P("r"), P("s")
        _nonneg(a, "x")
        _pos(b, "p")
        _require(s > 0, "s <= 0")
        _require(r >= s, "r < s")
    elif f is Family.GEO_SUPERADD:
        _nonneg(a, "a")
        _nonneg(b, "b")
        _nonneg(inst.weights, "weights")
        _require(sum(inst.weights) == 1, "sum(weights) != 1")
    elif f is Family.CHRYSTAL:
        _pos(a, "a")
    elif f is Family.CAUCHY_SCHWARZ:
        _nonneg(a, "a")
        _nonneg(b, "b")
    elif f is Family.BERNOULLI:
        _require(a[0] >= -1, "x < -1")
        _require(P("r") >= 1, "r < 1")
    elif f is Family.WEIGHTED_AMGM:
        _pos(a, "x")
        _nonneg(b, "weights")
        _require(sum(b) == 1, "sum(weights) != 1")
    elif f is Family.HOLDER:
        p, q = P("p"), P("q")
        _nonneg(a, "a")
        _nonneg(b, "b")
        _require(p > 1, "p <= 1")
        _require(q > 1, "q <= 1")
        _require(1 / p + 1 / q == 1, "1/p + 1/q != 1")
    elif f is Family.MINKOWSKI:
        _nonneg(a, "a")
        _nonneg(b, "b")
        _require(P("p") >= 1, "p < 1")
    elif f is Family.TRIANGLE:
        _pos(a, "side")
        x, y, z = a
        if not (x < y + z and y < z + x and z < x + y):
            raise NotATriangle(a)
        _require(P("n") >= 1, "n < 1")
    elif f is Family.CONSTRAINED_SUM:
        p, q = P("p"), P("q")
        _pos(a, "a")
        _require(inst.n >= 2, "n < 2", "s - a_k must be positive")
        _require(q >= 0, "q < 0")
        _require(p >= q + 1, "p < q+1")
    elif f is Family.UNIT_PRODUCT:
        _pos(a, "x")
        prod = a[0] * a[1] * a[2]
        if prod != 1:
            raise ProductNotOne(prod)
    else:  # pragma: no cover
        raise InstanceError(f"no domain rule for {f}")


# -- sides and equality conditions ------------------------------------------

def _radon_sides(a, b, m):
    lhs = total(power(ak, m + 1) / power(bk, m) for ak, bk in zip(a, b))
    rhs = power(total(a), m + 1) / power(total(b), m)
    return lhs, rhs


def _general_sides(a, b, r, s):
    n = len(a)
    lhs = total(power(ak, r) / power(bk, s) for ak, bk in zip(a, b))
    rhs = power(total(a), r) / (power(n, r - s - 1) * power(total(b), s))
    return lhs, rhs


def _power_mean(x, p, e):
    return power(total(pk * power(xk, e) for xk, pk in zip(x, p)) / total(p), 1 / e)


def _geo_sides(a, b, w):
    lhs = product(power(ak, wk) for ak, wk in zip(a, w)) + product(power(bk, wk) for bk, wk in zip(b, w))
    rhs = product(power(ak + bk, wk) for ak, bk, wk in zip(a, b, w))
    return lhs, rhs


def sides(inst: InequalityInstance) -> tuple[Expr, Expr, str]:
    """(lhs, rhs, relation) trees for an instance; relation is ``>=`` or ``<=``."""
    f, a, b = inst.family, inst.a, inst.b
    P = inst.params.get
    if f is Family.BERGSTROM:
        return (*_radon_sides(a, b, Fraction(1)), ">=")
    if f is Family.RADON:
        return (*_radon_sides(a, b, P("m")), ">=")
    if f is Family.RADON_GENERAL:
        return (*_general_sides(a, b, P("r"), P("s")), ">=")
    if f is Family.POWER_MEAN:
        return _power_mean(a, b, P("r")), _power_mean(a, b, P("s")), ">="
    if f is Family.GEO_SUPERADD:
        return (*_geo_sides(a, b, inst.weights), "<=")
    if f is Family.CHRYSTAL:
        n = inst.n
        lhs = product(1 + ak for ak in a)
        rhs = power(1 + power(product(a), Fraction(1, n)), n)
        return lhs, rhs, ">="
    if f is Family.CAUCHY_SCHWARZ:
        lhs = total(a) * total(b)
        rhs = power(total(power(ak * bk, Fraction(1, 2)) for ak, bk in zip(a, b)), 2)
        return lhs, rhs, ">="
    if f is Family.BERNOULLI:
        x, r = a[0], P("r")
        return power(1 + x, r), 1 + r * lift(x), ">="
    if f is Family.WEIGHTED_AMGM:
        lhs = total(wk * lift(xk) for xk, wk in zip(a, b))
        rhs = product(power(xk, wk) for xk, wk in zip(a, b))
        return lhs, rhs, ">="
    if f is Family.HOLDER:
        p, q = P("p"), P("q")
        lhs = (power(total(power(ak, p) for ak in a), 1 / p)
               * power(total(power(bk, q) for bk in b), 1 / q))
        rhs = total(ak * bk for ak, bk in zip(a, b))
        return lhs, rhs, ">="
    if f is Family.MINKOWSKI:
        p = P("p")
        lhs = (power(total(power(ak, p) for ak in a), 1 / p)
               + power(total(power(bk, p) for bk in b), 1 / p))
        rhs = power(total(power(ak + bk, p) for ak, bk in zip(a, b)), 1 / p)
        return lhs, rhs, ">="
    if f is Family.TRIANGLE:
        n = P("n")
        x, y, z = a
        half = (x + y + z) / 2
        lhs = power(x, n) / (y + z) + power(y, n) / (z + x) + power(z, n) / (x + y)
        rhs = power(Fraction(2, 3), n - 2) * power(half, n - 1)
        return lhs, rhs, ">="
    if f is Family.CONSTRAINED_SUM:
        p, q = P("p"), P("q")
        s, n = sum(a), inst.n
        lhs = total(power(ak, p) / power(s - ak, q) for ak in a)
        rhs = power(s, p - q) / (power(n - 1, q) * power(n, p - q - 1))
        return lhs, rhs, ">="
    if f is Family.UNIT_PRODUCT:
        x, y, z = a
        lhs = (power(x, 3) / ((1 + y) * (1 + z)) + power(y, 3) / ((1 + z) * (1 + x))
               + power(z, 3) / ((1 + x) * (1 + y)))
        return lhs, lift(Fraction(3, 4)), ">="
    raise InstanceError(f"no side rule for {f}")  # pragma: no cover


def _holder_equal(a, b, p, q) -> bool:
    # a^p proportional to b^q, tested on a^(p d) and b^(q d) with integer exponents
    d = p.denominator * q.denominator
    pa = [ak ** int(p * d) for ak in a]
    qb = [bk ** int(q * d) for bk in b]
    return proportional(pa, qb)


def equality_condition(inst: InequalityInstance) -> str | None:
    """Name of a proven sufficient equality condition that holds, if any."""
    f, a, b = inst.family, inst.a, inst.b
    P = inst.params.get
    if f is Family.BERGSTROM:
        return "x proportional to y" if proportional(a, b) else None
    if f is Family.RADON:
        m = P("m")
        if m == 0:
            return "m = 0"
        if m == -1:
            return "m = -1"
        return "a proportional to b" if proportional(a, b) else None
    if f is Family.RADON_GENERAL:
        r, s = P("r"), P("s")
        if (r, s) in ((1, 0), (0, -1)):
            return f"r = {r}, s = {s}"  # both sides reduce to sum a or sum b
        w = equality_witness(inst)
        if w.all_equal:
            return "a and b constant"
        if r == s + 1 and w.proportional:
            return "r = s+1 and a proportional to b"
        if r > 0 and all(x == 0 for x in a):
            return "a = 0"
        if r == 0 and constant(b):
            return "r = 0 and b constant"  # a drops out; power-mean equality in b
        return None
    if f is Family.POWER_MEAN:
        if P("r") == P("s"):
            return "r = s"
        return "x constant" if constant(a) else None
    if f is Family.GEO_SUPERADD:
        support = [k for k, w in enumerate(inst.weights) if w != 0]
        if proportional([a[k] for k in support], [b[k] for k in support]):
            return "a proportional to b on the weight support"
        return None
    if f is Family.CHRYSTAL:
        geo = _chrystal_as_geo(a)
        return "a constant" if equality_condition(geo) else None
    if f is Family.CAUCHY_SCHWARZ:
        return "a proportional to b" if proportional(a, b) else None
    if f is Family.BERNOULLI:
        if a[0] == 0:
            return "x = 0"
        return "r = 1" if P("r") == 1 else None
    if f is Family.WEIGHTED_AMGM:
        support = [a[k] for k, w in enumerate(b) if w != 0]
        return "x constant on the weight support" if constant(support) else None
    if f is Family.HOLDER:
        return "a^p proportional to b^q" if _holder_equal(a, b, P("p"), P("q")) else None
    if f is Family.MINKOWSKI:
        if P("p") == 1:
            return "p = 1"
        return "a proportional to b" if proportional(a, b) else None
    if f is Family.TRIANGLE:
        return "equilateral" if constant(a) else None
    if f is Family.CONSTRAINED_SUM:
        if P("p") == 1 and P("q") == 0:
            return "p = 1, q = 0"
        return "a constant" if constant(a) else None
    if f is Family.UNIT_PRODUCT:
        return "x = y = z = 1" if all(x == 1 for x in a) else None
    return None


def _chrystal_as_geo(a) -> InequalityInstance:
    n = len(a)
    return InequalityInstance(Family.GEO_SUPERADD, a, (1,) * n, weights=(Fraction(1, n),) * n)


def _notes(inst: InequalityInstance) -> tuple[str, ...]:
    if inst.family is Family.TRIANGLE and inst.param("n").denominator != 1:
        return ("non-integer n",)
    return ()


def check_instance(inst: InequalityInstance, *, budget: int = DEFAULT_BUDGET,
                   mode: str = "auto", validate: bool = True) -> Verdict:
    """Validate the domain and return the certified verdict for ``inst``.

    With ``validate=False`` an out-of-domain instance is still evaluated (for
    counterexample search), but the registered equality conditions are not
    used since several of them are only valid inside the domain.
    """
    try:
        validate_domain(inst)
        in_domain = True
    except DomainError:
        if validate:
            raise
        in_domain = False
    lhs, rhs, relation = sides(inst)
    witness = equality_condition(inst) if in_domain else None
    cert = certify(lhs, rhs, budget, symbolic_equal=witness is not None, mode=mode)
    return verdict_from_certificate(cert, relation=relation, family=inst.family.value,
                                    witness=witness, notes=_notes(inst))


# -- public checkers --------------------------------------------------------

def check_bergstrom(x, y, *, budget: int = DEFAULT_BUDGET, mode: str = "auto") -> Verdict:
    """sum x_k^2/y_k >= (sum x_k)^2 / sum y_k, equality iff x/y is constant."""
    return check_instance(InequalityInstance(Family.BERGSTROM, x, y), budget=budget, mode=mode)


def check_radon(a, b, m, *, budget: int = DEFAULT_BUDGET, mode: str = "auto") -> Verdict:
    """sum a_k^(m+1)/b_k^m >= (sum a)^(m+1)/(sum b)^m for m >= 0 or m <= -1."""
    return check_instance(InequalityInstance(Family.RADON, a, b, {"m": m}), budget=budget, mode=mode)


def check_radon_general(a, b, r, s, *, budget: int = DEFAULT_BUDGET, mode: str = "auto") -> Verdict:
    """sum a_k^r/b_k^s >= (sum a)^r / (n^(r-s-1) (sum b)^s) for r >= s+1 with
    r, s both nonnegative or both nonpositive."""
    inst = InequalityInstance(Family.RADON_GENERAL, a, b, {"r": r, "s": s})
    return check_instance(inst, budget=budget, mode=mode)


def check_power_mean(p, x, r, s, *, budget: int = DEFAULT_BUDGET, mode: str = "auto") -> Verdict:
    """Weighted power mean of order r against order s, r >= s > 0."""
    inst = InequalityInstance(Family.POWER_MEAN, x, p, {"r": r, "s": s})
    return check_instance(inst, budget=budget, mode=mode)


def check_geo_superadd(a, b, weights, *, budget: int = DEFAULT_BUDGET, mode: str = "auto") -> Verdict:
    """prod a^w + prod b^w <= prod (a+b)^w for convex weights w (relation ``<=``)."""
    inst = InequalityInstance(Family.GEO_SUPERADD, a, b, weights=weights)
    return check_instance(inst, budget=budget, mode=mode)


def check_chrystal(a, *, budget: int = DEFAULT_BUDGET, mode: str = "auto") -> Verdict:
    """prod (1+a_k) >= (1 + (prod a_k)^(1/n))^n.

    This is the geometric superadditivity bound with b = 1 and equal weights
    raised to the n-th power; the equality condition is taken from that
    instance.
    """
    return check_instance(InequalityInstance(Family.CHRYSTAL, a), budget=budget, mode=mode)


def check_cauchy_schwarz(a, b, *, budget: int = DEFAULT_BUDGET, mode: str = "auto") -> Verdict:
    return check_instance(InequalityInstance(Family.CAUCHY_SCHWARZ, a, b), budget=budget, mode=mode)


def check_companion(family, a, b=(), *, budget: int = DEFAULT_BUDGET, mode: str = "auto",
                    **params) -> Verdict:
    """Bernoulli (a = x or (x,), r), WeightedAMGM (a = x, b = weights),
    Holder (a, b, p, q) or Minkowski (a, b, p)."""
    family = Family.parse(family)
    if family not in COMPANIONS:
        raise InstanceError(f"{family.value} is not a companion inequality")
    if family is Family.BERNOULLI and not isinstance(a, (list, tuple)):
        a = (a,)
    return check_instance(InequalityInstance(family, a, b, params), budget=budget, mode=mode)


CHECKERS: Mapping[Family, Callable] = {
    Family.BERGSTROM: check_bergstrom,
    Family.RADON: check_radon,
    Family.RADON_GENERAL: check_radon_general,
    Family.POWER_MEAN: check_power_mean,
    Family.GEO_SUPERADD: check_geo_superadd,
    Family.CHRYSTAL: check_chrystal,
    Family.CAUCHY_SCHWARZ: check_cauchy_schwarz,
}
