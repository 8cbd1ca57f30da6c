"""Scalar helpers shared by the exact (Fraction) and float arithmetic paths."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Scalar = Union[int, float, Fraction]


def is_rational(v: Scalar) -> bool:
    return isinstance(v, (int, Fraction))


def rational_sqrt(v: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if v < 0:
        raise ValueError("negative radicand")
    num, den = v.numerator, v.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def parse_scalar(value) -> Scalar:
    """Accept ints, floats, Fractions, or 'num/den' strings."""
    if isinstance(value, (int, float, Fraction)):
        return value
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def scalar_to_json(v: Scalar):
    if isinstance(v, bool):
        return v
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        # round-trip through 12 significant digits for stable report bytes
        return float(f"{v:.12g}")
    return v


def fmt(v: Scalar) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)
