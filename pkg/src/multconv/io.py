"""JSON encodings for distributions, operators, tables, boxes and point sets.

Rationals travel as ``"p/q"`` strings, infinities as ``"inf"`` / ``"-inf"``.
Floats are written with 17 significant digits so they round-trip exactly.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

from .dist import PointDistribution, make_distribution
from .errors import MultconvError
from .euler import EulerOperator
from .geometry import Box, Interval, PointSet
from .transforms import RationalTransform, SeriesTable


class FormatError(MultconvError):
    """Malformed JSON payload."""


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {s!r}") from exc


def _require(obj, *keys):
    if not isinstance(obj, dict):
        raise FormatError("expected a JSON object")
    for k in keys:
        if k not in obj:
            raise FormatError(f"missing key {k!r}")


# -- distributions ----------------------------------------------------------

def dist_to_json(T: PointDistribution) -> dict:
    return {
        "dim": T.dim,
        "terms": [{"point": [rat(c) for c in p], "mu": list(mu), "coef": rat(c)}
                  for (p, mu), c in T.terms.items()],
    }


def dist_from_json(obj) -> PointDistribution:
    _require(obj, "dim", "terms")
    try:
        return make_distribution(
            ((tuple(parse_rat(c) for c in t["point"]), tuple(t["mu"]), parse_rat(t["coef"]))
             for t in obj["terms"]),
            dim=int(obj["dim"]))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed distribution term: {exc}") from exc


# -- Euler operators --------------------------------------------------------

def op_to_json(P: EulerOperator) -> dict:
    return {"dim": P.dim,
            "theta": [{"alpha": list(a), "coef": rat(c)} for a, c in P.theta_coeffs.items()]}


def op_from_json(obj) -> EulerOperator:
    _require(obj, "dim", "theta")
    try:
        return EulerOperator(int(obj["dim"]),
                             {tuple(t["alpha"]): parse_rat(t["coef"]) for t in obj["theta"]})
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed operator term: {exc}") from exc


def xd_to_json(b: dict, dim: int) -> dict:
    return {"dim": dim, "xd": [{"beta": list(k), "coef": rat(v)} for k, v in b.items()]}


# -- tables and transforms ---------------------------------------------------

def table_to_json(A: SeriesTable) -> dict:
    return {"dim": A.dim, "max_degree": list(A.max_degree),
            "coeffs": [{"alpha": list(a), "value": rat(v)} for a, v in A.coeffs.items()]}


def table_from_json(obj) -> SeriesTable:
    _require(obj, "dim", "max_degree", "coeffs")
    try:
        return SeriesTable(int(obj["dim"]), tuple(obj["max_degree"]),
                           {tuple(e["alpha"]): parse_rat(e["value"]) for e in obj["coeffs"]})
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed series table: {exc}") from exc


def transform_to_json(F: RationalTransform) -> dict:
    return {"dim": F.dim,
            "terms": [{"coef": rat(c),
                       "factors": [{"pole": rat(a), "num_power": m, "den_power": n}
                                   for a, m, n in factors]}
                      for c, factors in F.terms]}


def transform_from_json(obj) -> RationalTransform:
    _require(obj, "dim", "terms")
    return RationalTransform(int(obj["dim"]), tuple(
        (parse_rat(t["coef"]),
         tuple((parse_rat(f["pole"]), int(f["num_power"]), int(f["den_power"]))
               for f in t["factors"]))
        for t in obj["terms"]))


# -- geometry ------------------------------------------------------------------

def _end_to_json(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return rat(v)


def _end_from_json(v):
    if isinstance(v, str) and v.strip().lower().lstrip("+-") in ("inf", "infinity"):
        return -math.inf if v.strip().startswith("-") else math.inf
    if isinstance(v, float) and math.isinf(v):
        return v
    return parse_rat(v)


def interval_to_json(I: Interval) -> dict:
    if I.is_empty:
        return {"empty": True}
    return {"lo": _end_to_json(I.lo), "hi": _end_to_json(I.hi),
            "lo_closed": I.lo_closed, "hi_closed": I.hi_closed}


def interval_from_json(obj) -> Interval:
    if not isinstance(obj, dict):
        raise FormatError("interval must be an object")
    if obj.get("empty"):
        return Interval.empty()
    return Interval(_end_from_json(obj.get("lo", "-inf")), _end_from_json(obj.get("hi", "inf")),
                    bool(obj.get("lo_closed", False)), bool(obj.get("hi_closed", False)))


def box_to_json(B: Box) -> dict:
    return {"dim": B.dim, "empty": B.is_empty,
            "intervals": [interval_to_json(i) for i in B.intervals]}


def box_from_json(obj) -> Box:
    _require(obj, "intervals")
    box = Box(tuple(interval_from_json(i) for i in obj["intervals"]))
    if "dim" in obj and int(obj["dim"]) != box.dim:
        raise FormatError("dim does not match the number of intervals")
    return box


def pointset_to_json(X: PointSet) -> dict:
    return {"dim": X.dim, "points": [list(p) for p in X.points]}


def pointset_from_json(obj) -> PointSet:
    _require(obj, "dim", "points")
    try:
        return PointSet(int(obj["dim"]), tuple(tuple(float(c) for c in p) for p in obj["points"]))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"malformed point set: {exc}") from exc


# -- output ----------------------------------------------------------------------

def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def dumps(obj, indent: int | None = 2) -> str:
    """``json.dumps`` with 17-significant-digit floats and string infinities."""

    def prep(o):
        if isinstance(o, float):
            if math.isinf(o) or math.isnan(o):
                return fmt_float(o)
            return _Raw(fmt_float(o))
        if isinstance(o, Fraction):
            return rat(o)
        if isinstance(o, dict):
            return {str(k): prep(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [prep(v) for v in o]
        if hasattr(o, "item") and callable(o.item):  # numpy scalars
            return prep(o.item())
        return o

    text = json.dumps(prep(obj), indent=indent, default=_Raw.encode)
    return _Raw.restore(text)


class _Raw:
    """Placeholder that lets a preformatted number pass through json.dumps."""

    _MARK = "\u0000raw:"

    def __init__(self, text: str):
        self.text = text

    @staticmethod
    def encode(o):
        if isinstance(o, _Raw):
            return _Raw._MARK + o.text
        raise TypeError(f"not JSON serializable: {type(o).__name__}")

    @staticmethod
    def restore(text: str) -> str:
        import re

        return re.sub(r'"\\u0000raw:([^"]*)"', r"\1", text)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
