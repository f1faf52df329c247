"""Conversion of results into JSON-ready structures."""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import mpmath

FLOAT_DIGITS = 30


def rat_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rat_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def fmt(v, digits: int = FLOAT_DIGITS) -> str:
    """Deterministic decimal string for a float, Fraction or mpf."""
    with mpmath.workdps(digits + 10):
        if isinstance(v, Fraction):
            v = mpmath.mpf(v.numerator) / v.denominator
        return mpmath.nstr(mpmath.mpf(v), digits, min_fixed=-4, max_fixed=6)


def jsonable(obj):
    if isinstance(obj, Fraction):
        return rat_json(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, mpmath.mpf)):
        return fmt(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")
