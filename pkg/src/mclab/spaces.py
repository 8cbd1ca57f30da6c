"""Concrete metric spaces and distance evaluation.

Two carrier kinds are supported: real/rational vectors of a fixed dimension
under the d_p family of metrics (p in [1, inf]), and piecewise-polynomial
functions on [0, 1] of degree at most 2 under the integral (L1) or supremum
metric.  Every operation runs in one of two arithmetic modes: exact, where
scalars are `fractions.Fraction` and results are bit-exact rationals, or
float.  Exact mode is restricted to the metrics whose values stay rational
for rational inputs: d_1, d_inf, the L1 integral metric, and the sup metric
(the supremum of a rational piecewise quadratic is attained at a rational
point).
"""
from __future__ import annotations

import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .arith import Scalar, is_rational, rational_sqrt
from .errors import (
    DimensionMismatch,
    ExactArithmeticUnsupported,
    InternalInconsistency,
    MclabError,
)

VECTOR = "vector"
PW_POLY = "pwpoly"

METRIC_DP = "dp"
METRIC_L1_FN = "l1fn"
METRIC_LINF_FN = "linffn"

_EXACT_P_VALUES = (1, math.inf)


@dataclass(frozen=True)
class MetricSpace:
    """Space descriptor: carrier kind, dimension, metric selector, arithmetic mode."""

    carrier: str
    dim: int | None
    metric: str
    p: float | None
    exact: bool

    def __post_init__(self):
        if self.carrier == VECTOR:
            if self.metric != METRIC_DP:
                raise MclabError("vector carriers use the d_p metric family")
            if self.dim is None or self.dim < 1:
                raise MclabError("vector carrier needs a positive dimension")
            if self.p is None or (self.p < 1 and self.p != math.inf):
                raise MclabError("p must lie in [1, inf]")
            if self.exact and self.p not in _EXACT_P_VALUES:
                raise ExactArithmeticUnsupported(
                    f"exact arithmetic supports p in {{1, inf}}, not p={self.p}"
                )
        elif self.carrier == PW_POLY:
            if self.metric not in (METRIC_L1_FN, METRIC_LINF_FN):
                raise MclabError("function carriers use the L1 or sup metric")
            if self.dim is not None:
                raise MclabError("function carriers have no vector dimension")
        else:
            raise MclabError(f"unknown carrier {self.carrier!r}")

    @property
    def id(self) -> str:
        return space_id(self)


def vector_space(dim: int, p: float, exact: bool = False) -> MetricSpace:
    return MetricSpace(VECTOR, dim, METRIC_DP, p, exact)


def l1_function_space(exact: bool = True) -> MetricSpace:
    return MetricSpace(PW_POLY, None, METRIC_L1_FN, None, exact)


def linf_function_space(exact: bool = True) -> MetricSpace:
    return MetricSpace(PW_POLY, None, METRIC_LINF_FN, None, exact)


def space_id(space: MetricSpace) -> str:
    if space.carrier == VECTOR:
        if space.p == math.inf:
            ptag = "pinf"
        elif space.p == int(space.p):
            ptag = f"p{int(space.p)}"
        else:
            ptag = f"p{space.p:g}"
        suffix = "-exact" if space.exact else ""
        return f"vec{space.dim}-{ptag}{suffix}"
    tag = "l1fn" if space.metric == METRIC_L1_FN else "linffn"
    return tag + ("-exact" if space.exact else "")


_VECTOR_ID = re.compile(r"^vec(\d+)-p(inf|[0-9.]+)(-exact)?$")
_FN_ID = re.compile(r"^(l1fn|linffn)(-exact)?$")


def space_from_id(text: str) -> MetricSpace:
    m = _VECTOR_ID.match(text)
    if m:
        dim = int(m.group(1))
        p = math.inf if m.group(2) == "inf" else float(m.group(2))
        if p != math.inf and p == int(p):
            p = int(p)
        return vector_space(dim, p, exact=bool(m.group(3)))
    m = _FN_ID.match(text)
    if m:
        exact = bool(m.group(2))
        if m.group(1) == "l1fn":
            return l1_function_space(exact)
        return linf_function_space(exact)
    raise MclabError(f"unknown space id {text!r}")


# --------------------------------------------------------------------------
# vector helpers

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(a, s):
    return tuple(x * s for x in a)


def vlerp(a, b, w):
    """Point a + w*(b - a), exact when the inputs are exact."""
    return tuple(x + w * (y - x) for x, y in zip(a, b))


def check_point(space: MetricSpace, point) -> None:
    if space.carrier == VECTOR:
        if len(point) != space.dim:
            raise DimensionMismatch(
                f"point of length {len(point)} in a {space.dim}-dimensional space"
            )
        if space.exact and not all(is_rational(c) for c in point):
            raise ExactArithmeticUnsupported("exact space requires rational coordinates")
    else:
        if not isinstance(point, PiecewisePoly):
            raise MclabError("function carrier expects PiecewisePoly points")
        if space.exact and not point.is_rational():
            raise ExactArithmeticUnsupported(
                "exact space requires rational breakpoints and coefficients"
            )


# --------------------------------------------------------------------------
# piecewise polynomials on [0, 1]

@dataclass(frozen=True)
class PiecewisePoly:
    """Piecewise polynomial of degree <= 2 on [0, 1].

    `pieces[i]` is the coefficient triple (c0, c1, c2) of c0 + c1*x + c2*x**2
    valid on [breakpoints[i], breakpoints[i+1]].  Coefficients are global in
    x, not local to the piece.
    """

    breakpoints: tuple
    pieces: tuple

    def __post_init__(self):
        bps = self.breakpoints
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise MclabError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise MclabError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(bps) - 1:
            raise MclabError("need one coefficient triple per interval")
        if any(len(p) != 3 for p in self.pieces):
            raise MclabError("each piece is a (c0, c1, c2) triple")

    def is_rational(self) -> bool:
        return all(is_rational(b) for b in self.breakpoints) and all(
            is_rational(c) for piece in self.pieces for c in piece
        )

    def value(self, x):
        idx = bisect_right(self.breakpoints, x) - 1
        idx = min(max(idx, 0), len(self.pieces) - 1)
        c0, c1, c2 = self.pieces[idx]
        return c0 + c1 * x + c2 * x * x


def constant_fn(c: Scalar) -> PiecewisePoly:
    return PiecewisePoly((0, 1), ((c, 0, 0),))


def poly_fn(c0: Scalar, c1: Scalar = 0, c2: Scalar = 0) -> PiecewisePoly:
    return PiecewisePoly((0, 1), ((c0, c1, c2),))


def point_to_json(point):
    """Vectors become arrays, functions {breakpoints, pieces}; rationals are
    'num/den' strings."""
    from .arith import scalar_to_json

    if isinstance(point, PiecewisePoly):
        return {
            "breakpoints": [scalar_to_json(b) for b in point.breakpoints],
            "pieces": [[scalar_to_json(c) for c in piece] for piece in point.pieces],
        }
    return [scalar_to_json(c) for c in point]


def point_from_json(data):
    from .arith import parse_scalar

    if isinstance(data, dict):
        return PiecewisePoly(
            tuple(parse_scalar(b) for b in data["breakpoints"]),
            tuple(tuple(parse_scalar(c) for c in piece) for piece in data["pieces"]),
        )
    return tuple(parse_scalar(c) for c in data)


# --------------------------------------------------------------------------
# distances

def distance(space: MetricSpace, a, b) -> Scalar:
    """Distance between two points of the space, exact in exact mode."""
    if space.carrier == VECTOR:
        return _vector_distance(space, a, b)
    return pl_distance(space, a, b)


def _vector_distance(space: MetricSpace, a, b) -> Scalar:
    check_point(space, a)
    check_point(space, b)
    diffs = [abs(x - y) for x, y in zip(a, b)]
    p = space.p
    if p == math.inf:
        return max(diffs)
    if p == 1:
        return sum(diffs)
    if space.exact:
        raise ExactArithmeticUnsupported(
            f"exact arithmetic supports p in {{1, inf}}, not p={p}"
        )
    total = sum(float(d) ** p for d in diffs)
    return total ** (1.0 / p)


def pl_distance(space: MetricSpace, f: PiecewisePoly, g: PiecewisePoly) -> Scalar:
    """L1 or sup distance between two piecewise polynomials.

    The two breakpoint grids are merged first.  The L1 value integrates the
    absolute difference in closed form, splitting each piece at its vertex
    and at sign-change roots; the sup value maximises the absolute difference
    over piece endpoints and interior vertices.
    """
    check_point(space, f)
    check_point(space, g)
    segments = _merged_diff(f, g)
    if space.metric == METRIC_L1_FN:
        total = 0
        for u, v, coeffs in segments:
            total += _abs_quad_integral(coeffs, u, v, space.exact)
        return total
    best = 0
    for u, v, coeffs in segments:
        cand = _quad_sup_abs(coeffs, u, v, space.exact)
        if cand > best:
            best = cand
    return best


def _merged_diff(f: PiecewisePoly, g: PiecewisePoly):
    """Intervals of the merged grid with the coefficients of f - g on each."""
    merged = sorted(set(f.breakpoints) | set(g.breakpoints))
    out = []
    for u, v in zip(merged, merged[1:]):
        mid = (u + v) / 2
        fi = min(bisect_right(f.breakpoints, mid) - 1, len(f.pieces) - 1)
        gi = min(bisect_right(g.breakpoints, mid) - 1, len(g.pieces) - 1)
        fc, gc = f.pieces[fi], g.pieces[gi]
        out.append((u, v, (fc[0] - gc[0], fc[1] - gc[1], fc[2] - gc[2])))
    return out


def _quad_antiderivative(coeffs, x, exact: bool):
    # int/int true division would leak floats into the exact path
    half = Fraction(1, 2) if exact else 0.5
    third = Fraction(1, 3) if exact else (1.0 / 3.0)
    c0, c1, c2 = coeffs
    return c0 * x + c1 * x * x * half + c2 * x * x * x * third


def _quad_value(coeffs, x):
    c0, c1, c2 = coeffs
    return c0 + c1 * x + c2 * x * x


def _sign_change_root(coeffs, lo, hi, exact: bool):
    """Root of the quadratic inside [lo, hi], assuming exactly one crossing."""
    c0, c1, c2 = coeffs
    if c2 == 0:
        if exact:
            return Fraction(-c0) / c1
        return -c0 / c1
    disc = c1 * c1 - 4 * c2 * c0
    if exact:
        root = rational_sqrt(Fraction(disc))
        if root is None:
            raise ExactArithmeticUnsupported(
                "sign change at an irrational point; use float arithmetic"
            )
        sq = root
    else:
        sq = math.sqrt(max(float(disc), 0.0))
    for r in ((-c1 - sq) / (2 * c2), (-c1 + sq) / (2 * c2)):
        if lo <= r <= hi:
            return r
    raise InternalInconsistency(
        "sign change detected but no root inside the interval"
    )  # pragma: no cover - crossing guaranteed by caller


def _vertex(c1, c2, exact: bool):
    if exact:
        return Fraction(-c1) / (2 * c2)
    return -c1 / (2 * c2)


def _abs_quad_integral(coeffs, u, v, exact: bool):
    """Integral of |c0 + c1 x + c2 x^2| over [u, v], exact when possible."""
    c0, c1, c2 = coeffs
    # split at the vertex so each part is monotone
    cuts = [u, v]
    if c2 != 0:
        xv = _vertex(c1, c2, exact)
        if u < xv < v:
            cuts = [u, xv, v]
    total = 0
    for a, b in zip(cuts, cuts[1:]):
        qa, qb = _quad_value(coeffs, a), _quad_value(coeffs, b)
        piece = _quad_antiderivative(coeffs, b, exact) - _quad_antiderivative(
            coeffs, a, exact
        )
        if (qa < 0 < qb) or (qb < 0 < qa):
            r = _sign_change_root(coeffs, a, b, exact)
            left = _quad_antiderivative(coeffs, r, exact) - _quad_antiderivative(
                coeffs, a, exact
            )
            right = piece - left
            total += abs(left) + abs(right)
        else:
            total += abs(piece)
    return total


def _quad_sup_abs(coeffs, u, v, exact: bool):
    c0, c1, c2 = coeffs
    candidates = [abs(_quad_value(coeffs, u)), abs(_quad_value(coeffs, v))]
    if c2 != 0:
        xv = _vertex(c1, c2, exact)
        if u < xv < v:
            candidates.append(abs(_quad_value(coeffs, xv)))
    return max(candidates)
