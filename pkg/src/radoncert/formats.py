"""JSON text forms for instances and integral problems.

Rationals are always strings ("p" or "p/q"); serialization emits canonical
forms, so ``serialize_instance(parse_instance(t))`` is a normal form of ``t``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InstanceError, ParseError, RadonCertError
from .exactnum import format_rational, parse_rational
from .inequalities import Family, InequalityInstance
from .integral import PiecewisePoly

INSTANCE_FIELDS = ("family", "a", "b", "params", "weights")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


def _locate(text: str, token) -> tuple[int | None, int | None]:
    """Line/column of the first occurrence of ``token`` as a JSON value."""
    if token is None:
        return None, None
    offset = text.find(json.dumps(token))
    if offset < 0:
        return None, None
    return _position(text, offset)


def _load_object(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object", 1, 1)
    return obj


def _rational(text: str, value) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"expected a rational string, got {json.dumps(value)}", *_locate(text, value))
    try:
        return parse_rational(value)
    except ParseError as exc:
        raise ParseError(str(exc), *_locate(text, value)) from None


def _vector(text: str, obj: dict, key: str) -> tuple[Fraction, ...]:
    value = obj.get(key, [])
    if not isinstance(value, list):
        raise ParseError(f"field {key!r} must be a list", *_locate(text, key))
    return tuple(_rational(text, v) for v in value)


def parse_instance(text: str) -> InequalityInstance:
    """Parse an instance file: ``{"family", "a", "b"?, "params"?, "weights"?}``."""
    obj = _load_object(text)
    unknown = sorted(set(obj) - set(INSTANCE_FIELDS))
    if unknown:
        raise ParseError(f"unknown field {unknown[0]!r}", *_locate(text, unknown[0]))
    if "family" not in obj:
        raise ParseError("missing field 'family'", 1, 1)
    family_name = obj["family"]
    try:
        family = Family.parse(family_name)
    except (ValueError, TypeError):
        raise ParseError(f"unknown family {family_name!r}", *_locate(text, family_name)) from None
    if "a" not in obj:
        raise ParseError("missing field 'a'", 1, 1)
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise ParseError("field 'params' must be an object", *_locate(text, "params"))
    try:
        return InequalityInstance(
            family,
            _vector(text, obj, "a"),
            _vector(text, obj, "b"),
            {k: _rational(text, v) for k, v in params.items()},
            _vector(text, obj, "weights"),
        )
    except InstanceError as exc:
        raise ParseError(str(exc), 1, 1) from None


def instance_record(inst: InequalityInstance) -> dict:
    rec: dict = {"family": inst.family.value, "a": [format_rational(x) for x in inst.a]}
    if inst.b:
        rec["b"] = [format_rational(x) for x in inst.b]
    if inst.params:
        rec["params"] = {k: format_rational(v) for k, v in sorted(inst.params.items())}
    if inst.weights:
        rec["weights"] = [format_rational(x) for x in inst.weights]
    return rec


def serialize_instance(inst: InequalityInstance) -> str:
    return json.dumps(instance_record(inst), separators=(", ", ": "))


# -- integral problems --------------------------------------------------------

def parse_piecewise(text: str, records) -> PiecewisePoly:
    try:
        return PiecewisePoly.from_records(records)
    except ParseError as exc:
        if exc.line is not None:
            raise
        raise ParseError(str(exc), 1, 1) from None
    except (RadonCertError, TypeError, KeyError, ValueError) as exc:
        raise ParseError(f"bad piecewise polynomial: {exc}", 1, 1) from None


def parse_integral_problem(text: str) -> dict:
    """``{"f": [...], "g": [...], "interval"?: [lo, hi], "params": {"m"} | {"r", "s"}}``."""
    obj = _load_object(text)
    for key in ("f", "g"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}", 1, 1)
    out = {"f": parse_piecewise(text, obj["f"]), "g": parse_piecewise(text, obj["g"]), "interval": None}
    if "interval" in obj:
        iv = obj["interval"]
        if not isinstance(iv, list) or len(iv) != 2:
            raise ParseError("interval must be [lo, hi]", *_locate(text, "interval"))
        out["interval"] = tuple(_rational(text, v) for v in iv)
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise ParseError("field 'params' must be an object", *_locate(text, "params"))
    out["params"] = {k: _rational(text, v) for k, v in params.items()}
    return out
