"""Command-line interface.

Exit status: 0 Holds / EqualityCertified (or no counterexample found),
1 Violated, 2 Indeterminate, 3 domain, parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InfeasibleSpec, InstanceError, ParseError, RadonCertError
from .exactnum import DEFAULT_BUDGET, format_rational, parse_rational
from .formats import instance_record, parse_instance, parse_integral_problem
from .inequalities import (
    Family,
    InequalityInstance,
    Outcome,
    Verdict,
    check_instance,
    equality_witness,
)
from .integral import (
    DEFAULT_MAX_PARTITIONS,
    DEFAULT_START,
    PiecewisePoly,
    check_integral_radon,
    check_integral_radon_general,
)
from .reductions import powermean_to_radon, radon_to_powermean, verify_reduction
from .search import STANDARD_SEED, SearchSpec, find_counterexample

BUDGET_ENV = "RADONCERT_PRECISION_BUDGET"

EXIT_OK, EXIT_VIOLATED, EXIT_INDETERMINATE, EXIT_ERROR = 0, 1, 2, 3
EXIT_CODES = {
    Outcome.HOLDS: EXIT_OK,
    Outcome.EQUALITY_CERTIFIED: EXIT_OK,
    Outcome.VIOLATED: EXIT_VIOLATED,
    Outcome.INDETERMINATE: EXIT_INDETERMINATE,
}

FORMULAS = {
    Family.BERGSTROM: "sum x_k^2/y_k >= (sum x_k)^2 / sum y_k",
    Family.RADON: "sum a_k^(m+1)/b_k^m >= (sum a_k)^(m+1) / (sum b_k)^m",
    Family.RADON_GENERAL: "sum a_k^r/b_k^s >= (sum a_k)^r / (n^(r-s-1) (sum b_k)^s)",
    Family.POWER_MEAN: "(sum p_k x_k^r / sum p_k)^(1/r) >= (sum p_k x_k^s / sum p_k)^(1/s)",
    Family.GEO_SUPERADD: "prod a_k^w_k + prod b_k^w_k <= prod (a_k+b_k)^w_k",
    Family.CHRYSTAL: "prod (1+a_k) >= (1 + (prod a_k)^(1/n))^n",
    Family.CAUCHY_SCHWARZ: "sum a_k * sum b_k >= (sum sqrt(a_k b_k))^2",
    Family.BERNOULLI: "(1+x)^r >= 1 + r x",
    Family.WEIGHTED_AMGM: "sum w_k x_k >= prod x_k^w_k",
    Family.HOLDER: "(sum a_k^p)^(1/p) (sum b_k^q)^(1/q) >= sum a_k b_k",
    Family.MINKOWSKI: "(sum a_k^p)^(1/p) + (sum b_k^p)^(1/p) >= (sum (a_k+b_k)^p)^(1/p)",
    Family.TRIANGLE: "a^n/(b+c) + b^n/(c+a) + c^n/(a+b) >= (2/3)^(n-2) S^(n-1), 2S = a+b+c",
    Family.CONSTRAINED_SUM: "sum a_k^p/(s-a_k)^q >= s^(p-q) / ((n-1)^q n^(p-q-1)), s = sum a_k",
    Family.UNIT_PRODUCT: "x^3/((1+y)(1+z)) + y^3/((1+z)(1+x)) + z^3/((1+x)(1+y)) >= 3/4, xyz = 1",
}
INTEGRAL_FORMULAS = {
    "IntegralRadon": "int f^(m+1)/g^m >= (int f)^(m+1) / (int g)^m",
    "IntegralRadonGeneral": "int f^r/g^s >= (int f)^r / ((hi-lo)^(r-s-1) (int g)^s)",
}

PARAM_FLAGS = ("m", "r", "s", "p", "q", "n")

EPILOG = """\
conventions:
  rationals are written "p" or "p/q"; vectors are comma separated ("1,2/3,0")
  0^0 is taken to be 1 wherever a zero entry meets a zero exponent

exit status:
  0 Holds or EqualityCertified (fuzz: no counterexample found)
  1 Violated (fuzz: counterexample found)
  2 Indeterminate within the precision or partition budget
  3 domain, parse or usage error

environment:
  {env}  default precision budget in bits (default {default})
""".format(env=BUDGET_ENV, default=DEFAULT_BUDGET)


class UsageError(RadonCertError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; 2 means Indeterminate here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# -- argument helpers ----------------------------------------------------------

def _rational_arg(text: str, flag: str = "") -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise ParseError(f"{flag}: {exc}" if flag else str(exc)) from None


def _vector_arg(text: str, flag: str = "") -> tuple[Fraction, ...]:
    items = text.split(",")
    if not text.strip() or any(not t.strip() for t in items):
        raise ParseError(f"{flag}: malformed vector {text!r}" if flag else f"malformed vector {text!r}")
    return tuple(_rational_arg(t, flag) for t in items)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _int_range(text: str) -> tuple[int, int]:
    parts = text.split(",")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or MIN,MAX, got {text!r}") from None
    if len(vals) == 1:
        return vals[0], vals[0]
    if len(vals) == 2:
        return vals[0], vals[1]
    raise argparse.ArgumentTypeError(f"expected N or MIN,MAX, got {text!r}")


def _rational_range(text: str, flag: str = "--range") -> tuple[Fraction, Fraction]:
    vals = _vector_arg(text, flag)
    if len(vals) != 2:
        raise ParseError(f"{flag}: expected LO,HI, got {text!r}")
    return vals


def _assignment(text: str, flag: str = "--fix") -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise ParseError(f"{flag}: expected NAME=RATIONAL, got {text!r}")
    return name.strip(), _rational_arg(value, flag)


_RATIONAL_FIELDS = ("m", "r", "s", "p", "q", "n", "lo", "hi")
_VECTOR_FIELDS = {"a": "--a", "b": "--b", "weights": "--weights", "f_coeffs": "--f", "g_coeffs": "--g"}


def _convert(args) -> None:
    """Parse the raw rational strings kept by argparse (errors become ParseError)."""
    for name in _RATIONAL_FIELDS:
        raw = getattr(args, name, None)
        if isinstance(raw, str):
            setattr(args, name, _rational_arg(raw, f"--{name}"))
    for name, flag in _VECTOR_FIELDS.items():
        raw = getattr(args, name, None)
        if isinstance(raw, str):
            setattr(args, name, _vector_arg(raw, flag))
    if isinstance(getattr(args, "value_range", None), str):
        args.value_range = _rational_range(args.value_range)
    if hasattr(args, "fix"):
        args.fix = [_assignment(x) for x in args.fix]


def default_budget(environ=None) -> int:
    environ = os.environ if environ is None else environ
    raw = environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise UsageError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("human", "machine"), default=argparse.SUPPRESS,
                        help="human-readable report or one JSON record per line")
    common.add_argument("--budget", type=_positive_int, default=argparse.SUPPRESS,
                        help=f"precision budget in bits (default: ${BUDGET_ENV} or {DEFAULT_BUDGET})")

    parser = _Parser(prog="radoncert", description="Certified checks of Radon-type inequalities.",
                     epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter,
                     parents=[common])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, description=help_text, epilog=EPILOG,
                              formatter_class=argparse.RawDescriptionHelpFormatter, parents=[common])

    check = add("check", "check one inequality instance given inline or as a file")
    check.add_argument("family", nargs="?", help="family name, e.g. radon, bergstrom, power-mean")
    check.add_argument("--file", "-f", help="instance file (JSON); excludes inline flags")
    check.add_argument("--a", "--x", dest="a", help="first vector")
    check.add_argument("--b", "--y", dest="b", help="second vector or weights")
    check.add_argument("--weights", help="convex weights (GeoSuperadd)")
    for p in PARAM_FLAGS:
        check.add_argument(f"--{p}", help=f"exponent {p}")
    check.add_argument("--mode", choices=("auto", "interval", "exact"), default="auto",
                       help="certification pipeline (default auto)")

    eq = add("equality", "report the equality witness of an instance file and check it")
    eq.add_argument("instance", help="instance file (JSON)")

    red = add("reduce", "map an instance through a substitution and verify the term identities")
    red.add_argument("direction", choices=("powermean-to-radon", "radon-to-powermean"),
                     help="powermean-to-radon consumes a Radon instance, "
                          "radon-to-powermean a PowerMean instance")
    red.add_argument("instance", help="instance file (JSON)")

    integ = add("integral-check", "check the integral Radon inequality for piecewise polynomials")
    integ.add_argument("--file", "-f", help='problem file: {"f": [...], "g": [...], "params": {...}}')
    integ.add_argument("--f", dest="f_coeffs",
                       help="coefficients c0,c1,... of f on [lo, hi]")
    integ.add_argument("--g", dest="g_coeffs",
                       help="coefficients c0,c1,... of g on [lo, hi]")
    integ.add_argument("--lo", help="lower limit (default: domain of f)")
    integ.add_argument("--hi", help="upper limit (default: domain of f)")
    for p in ("m", "r", "s"):
        integ.add_argument(f"--{p}", help=f"exponent {p}")
    integ.add_argument("--start", type=_positive_int, default=DEFAULT_START,
                       help=f"initial partition count (default {DEFAULT_START})")
    integ.add_argument("--max-partitions", type=_positive_int, default=DEFAULT_MAX_PARTITIONS,
                       help=f"partition budget (default {DEFAULT_MAX_PARTITIONS})")

    fuzz = add("fuzz", "search for a counterexample outside a validity domain")
    fuzz.add_argument("--family", required=True)
    fuzz.add_argument("--violate", default=None,
                      help='precondition to violate, e.g. "r < s+1"; omit to stay in the valid domain')
    fuzz.add_argument("--trials", type=_positive_int, default=1000)
    fuzz.add_argument("--seed", type=int, default=STANDARD_SEED)
    fuzz.add_argument("--n", type=_int_range, default=(1, 4), help="vector length N or MIN,MAX")
    fuzz.add_argument("--range", dest="value_range", default=None,
                      help="value range LO,HI (default 0,10)")
    fuzz.add_argument("--fix", action="append", default=[],
                      help="pin an exponent, e.g. --fix r=1 (repeatable)")
    fuzz.add_argument("--workers", type=_positive_int, default=1)
    return parser


# -- rendering -----------------------------------------------------------------

def approximate(q: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def _iv(iv) -> str:
    return "[{}, {}]".format(*iv.to_pair()) if iv is not None else "n/a"


def _side(exact, iv) -> str:
    if exact is not None:
        return f"{format_rational(exact)}  enclosure {_iv(iv)}"
    return f"enclosure {_iv(iv)}"


def human_verdict(v: Verdict, formula: str | None) -> list[str]:
    lines = []
    if formula:
        lines.append(f"{v.family}: {formula}")
    lines.append(f"outcome: {v.outcome.value}")
    lines.append(f"lhs: {_side(v.lhs_exact, v.lhs)}")
    lines.append(f"rhs: {_side(v.rhs_exact, v.rhs)}")
    if v.margin_exact is not None:
        mid = v.margin_exact
    elif v.margin is not None:
        mid = v.margin.midpoint
    else:
        mid = None
    slack = "lhs - rhs" if v.relation == ">=" else "rhs - lhs"
    if mid is not None:
        lines.append(f"margin ({slack}): {approximate(mid)} (approximate)")
    lines.append(f"margin enclosure: {_iv(v.margin)}")
    if v.margin_exact is not None:
        lines.append(f"margin exact: {format_rational(v.margin_exact)}")
    extra = f", partitions {v.partitions}" if v.partitions is not None else ""
    lines.append(f"precision: {v.precision_used} bits, method {v.method}{extra}")
    if v.witness:
        lines.append(f"equality witness: {v.witness}")
    for note in v.notes:
        lines.append(f"note: {note}")
    return lines


def _formula(v: Verdict) -> str | None:
    if v.family in INTEGRAL_FORMULAS:
        return INTEGRAL_FORMULAS[v.family]
    try:
        return FORMULAS[Family.parse(v.family)]
    except (InstanceError, TypeError):
        return None


def _emit(args, record: dict, lines: list[str], out) -> None:
    if args.output == "machine":
        out.write(json.dumps(record, separators=(",", ":")) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


# -- commands --------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _inline_given(args, names) -> list[str]:
    return [n for n in names if getattr(args, n, None) is not None]


def _instance_from_args(args) -> InequalityInstance:
    inline = _inline_given(args, ("a", "b", "weights") + PARAM_FLAGS)
    if args.file is not None:
        if inline or args.family is not None:
            raise UsageError("give either an instance file or inline flags, not both")
        return parse_instance(_read(args.file))
    if args.family is None:
        raise UsageError("missing family (or --file)")
    if args.a is None:
        raise UsageError("missing --a")
    try:
        family = Family.parse(args.family)
    except InstanceError as exc:
        raise ParseError(str(exc)) from None
    params = {p: getattr(args, p) for p in PARAM_FLAGS if getattr(args, p) is not None}
    try:
        return InequalityInstance(family, args.a, args.b or (), params, args.weights or ())
    except InstanceError as exc:
        raise ParseError(str(exc)) from None


def cmd_check(args, out) -> int:
    inst = _instance_from_args(args)
    v = check_instance(inst, budget=args.budget, mode=args.mode)
    _emit(args, v.to_record(), human_verdict(v, FORMULAS[inst.family]), out)
    return EXIT_CODES[v.outcome]


def cmd_equality(args, out) -> int:
    inst = parse_instance(_read(args.instance))
    w = equality_witness(inst)
    v = check_instance(inst, budget=args.budget)
    record = {"proportional": w.proportional, "all_equal": w.all_equal, "verdict": v.to_record()}
    lines = [f"proportional: {'yes' if w.proportional else 'no'}",
             f"all_equal: {'yes' if w.all_equal else 'no'}"]
    _emit(args, record, lines + human_verdict(v, FORMULAS[inst.family]), out)
    return EXIT_CODES[v.outcome]


def cmd_reduce(args, out) -> int:
    inst = parse_instance(_read(args.instance))
    if args.direction == "powermean-to-radon":
        if inst.family is not Family.RADON:
            raise UsageError("powermean-to-radon expects a Radon instance")
        rec = powermean_to_radon(inst.a, inst.b, inst.param("m"))
    else:
        if inst.family is not Family.POWER_MEAN:
            raise UsageError("radon-to-powermean expects a PowerMean instance")
        rec = radon_to_powermean(inst.b, inst.a, inst.param("r"), inst.param("s"))
    src_v, tgt_v = verify_reduction(rec, budget=args.budget)
    record = {
        "target": instance_record(rec.target),
        "identity_checked": rec.identity_checked,
        "terms": rec.term_report(),
        "source_verdict": src_v.to_record(),
        "verdict": tgt_v.to_record(),
    }
    lines = ["source: " + json.dumps(instance_record(rec.source)),
             "target: " + json.dumps(instance_record(rec.target)),
             f"identity checked: {'yes' if rec.identity_checked else 'no'}"]
    lines += [f"  term {i + 1}: {t['source']} == {t['target']}" for i, t in enumerate(record["terms"])]
    lines.append(f"source outcome: {src_v.outcome.value}")
    lines += human_verdict(tgt_v, FORMULAS[rec.target.family])
    _emit(args, record, lines, out)
    return EXIT_CODES[tgt_v.outcome]


def _integral_inputs(args):
    inline = _inline_given(args, ("f_coeffs", "g_coeffs"))
    if args.file is not None:
        if inline:
            raise UsageError("give either a problem file or --f/--g, not both")
        prob = parse_integral_problem(_read(args.file))
        params = dict(prob["params"])
        for p in ("m", "r", "s"):
            if getattr(args, p) is not None:
                if p in params:
                    raise UsageError(f"exponent {p} given both in the file and as a flag")
                params[p] = getattr(args, p)
        interval = prob["interval"]
        if args.lo is not None or args.hi is not None:
            if interval is not None:
                raise UsageError("interval given both in the file and as flags")
            interval = (args.lo, args.hi)
        return prob["f"], prob["g"], interval, params
    if args.f_coeffs is None or args.g_coeffs is None:
        raise UsageError("need --f and --g (or --file)")
    lo = args.lo if args.lo is not None else Fraction(0)
    hi = args.hi if args.hi is not None else Fraction(1)
    if not lo < hi:
        raise UsageError("need lo < hi")
    f = PiecewisePoly.polynomial(args.f_coeffs, lo, hi)
    g = PiecewisePoly.polynomial(args.g_coeffs, lo, hi)
    params = {p: getattr(args, p) for p in ("m", "r", "s") if getattr(args, p) is not None}
    return f, g, (lo, hi), params


def cmd_integral(args, out) -> int:
    f, g, interval, params = _integral_inputs(args)
    if interval is not None and None in interval:
        dom = f.domain
        interval = (interval[0] if interval[0] is not None else dom[0],
                    interval[1] if interval[1] is not None else dom[1])
    sched = {"start": args.start, "max_partitions": args.max_partitions}
    if args.start > args.max_partitions:
        raise UsageError("--start exceeds --max-partitions")
    if set(params) == {"m"}:
        v = check_integral_radon(f, g, params["m"], interval, **sched)
    elif set(params) == {"r", "s"}:
        v = check_integral_radon_general(f, g, params["r"], params["s"], interval, **sched)
    else:
        raise UsageError("give exactly --m, or both --r and --s")
    _emit(args, v.to_record(), human_verdict(v, _formula(v)), out)
    return EXIT_CODES[v.outcome]


def cmd_fuzz(args, out) -> int:
    kwargs = {}
    if args.value_range is not None:
        kwargs["value_range"] = args.value_range
    spec = SearchSpec(args.family, args.violate, n_range=args.n, trials=args.trials,
                      seed=args.seed, fixed=dict(args.fix), budget=min(args.budget, 1024), **kwargs)
    res = find_counterexample(spec, workers=args.workers)
    if res.found:
        record = {"found": True, "trials": res.trials, "trial_index": res.trial_index,
                  "instance": instance_record(res.instance), "verdict": res.verdict.to_record()}
        lines = [f"counterexample at trial {res.trial_index}",
                 "instance: " + json.dumps(instance_record(res.instance))]
        lines += human_verdict(res.verdict, FORMULAS[res.instance.family])
        code = EXIT_VIOLATED
    else:
        record = {"found": False, "trials": res.trials, "errors": res.errors}
        lines = [f"NoneFound after {res.trials} trials (evidence only, not a proof)"]
        if res.errors:
            lines.append(f"{res.errors} trials raised evaluation errors and were skipped")
        code = EXIT_OK
    _emit(args, record, lines, out)
    return code


COMMANDS = {
    "check": cmd_check,
    "equality": cmd_equality,
    "reduce": cmd_reduce,
    "integral-check": cmd_integral,
    "fuzz": cmd_fuzz,
}


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """``--m -1/2`` -> ``--m=-1/2``; argparse would read ``-1/2`` as an option."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        out.append(tok)
        if tok.startswith("--") and "=" not in tok and len(tok) > 2:
            nxt = next(it, None)
            if nxt is None:
                break
            if _NEGATIVE_VALUE.match(nxt):
                out[-1] = f"{tok}={nxt}"
            else:
                out.append(nxt)
    return out


_NEGATIVE_VALUE = re.compile(r"-[0-9]")


def run(argv: Sequence[str] | None = None, *, out=None, err=None, environ=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = _attach_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    if not hasattr(args, "output"):
        args.output = "human"
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=err)
    try:
        _convert(args)
        if not hasattr(args, "budget"):
            args.budget = default_budget(environ)
        return COMMANDS[args.command](args, out)
    except DomainError as exc:
        _fail(args, err, out, "DomainError", str(exc), predicate=exc.predicate)
    except ParseError as exc:
        _fail(args, err, out, "ParseError", str(exc), line=exc.line, column=exc.column)
    except (UsageError, InstanceError, InfeasibleSpec) as exc:
        _fail(args, err, out, type(exc).__name__, str(exc))
    return EXIT_ERROR


def _fail(args, err, out, kind: str, message: str, **extra) -> None:
    if args.output == "machine":
        record = {"error": kind, "message": message}
        record.update({k: v for k, v in extra.items() if v is not None})
        out.write(json.dumps(record, separators=(",", ":")) + "\n")
    err.write(f"radoncert: {kind}: {message}\n")


def main() -> None:  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
