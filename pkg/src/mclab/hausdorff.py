"""Hausdorff distance between set representations.

Exact for pairs of finite representations (pairwise min-max) and for pairs
of boxes under the sup metric, where the distance separates per coordinate
into interval Hausdorff distances.  Everything else is evaluated on the
representations' sample points with the grid resolution recorded.  Witness
pairs are always returned; ties break to the lexicographically smallest
witness so results are deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import Scalar
from .convexsets import Box, FiniteSet, SampledOracle, SetRep, Singleton
from .errors import EmptySetError
from .spaces import MetricSpace, distance


@dataclass(frozen=True)
class HausdorffResult:
    value: Scalar
    witness: tuple  # (point in A, nearest point of B)
    exact: bool
    resolution: Scalar | None = None


def _rep_points(rep: SetRep):
    pts = rep.sample_points()
    if not pts:
        raise EmptySetError("set representation produced no sample points")
    return pts


def _rep_resolution(rep: SetRep):
    if isinstance(rep, SampledOracle):
        return rep.grid_spacing
    return None


def _directed_points(space, pts_a, pts_b):
    best = None
    witness = None
    for a in pts_a:
        nearest = None
        nearest_pt = None
        for b in pts_b:
            d = distance(space, a, b)
            if nearest is None or d < nearest or (d == nearest and b < nearest_pt):
                nearest = d
                nearest_pt = b
        cand = (nearest, a, nearest_pt)
        if (
            best is None
            or nearest > best
            or (nearest == best and (a, nearest_pt) < witness)
        ):
            best = nearest
            witness = (a, nearest_pt)
    return best, witness


def _interval_directed(a_lo, a_hi, b_lo, b_hi):
    """sup over [a_lo, a_hi] of the distance to [b_lo, b_hi], with the
    endpoint of A achieving it."""
    def dist_to_b(x):
        if x < b_lo:
            return b_lo - x
        if x > b_hi:
            return x - b_hi
        return 0

    d_lo, d_hi = dist_to_b(a_lo), dist_to_b(a_hi)
    if d_lo >= d_hi:
        return d_lo, a_lo
    return d_hi, a_hi


def _interval_nearest(x, lo, hi):
    if x < lo:
        return lo
    if x > hi:
        return hi
    return x


def _directed_boxes(space, A: Box, B: Box):
    """Directed Hausdorff between boxes under the sup metric: the maximum
    over coordinates of the directed interval distance."""
    best = 0
    best_axis = 0
    per_axis_points = []
    for i, (alo, ahi, blo, bhi) in enumerate(
        zip(A.lower, A.upper, B.lower, B.upper)
    ):
        val, a_end = _interval_directed(alo, ahi, blo, bhi)
        per_axis_points.append(a_end)
        if val > best:
            best = val
            best_axis = i
    # witness in A: the extreme endpoint on the deciding axis, the nearest
    # feasible value on every other axis, so no other coordinate exceeds it
    a_pt = []
    for i, (alo, ahi, blo, bhi) in enumerate(
        zip(A.lower, A.upper, B.lower, B.upper)
    ):
        if i == best_axis:
            a_pt.append(per_axis_points[i])
        else:
            if ahi < blo:
                a_pt.append(ahi)
            elif alo > bhi:
                a_pt.append(alo)
            else:
                a_pt.append(max(alo, blo))
    b_pt = tuple(
        _interval_nearest(c, blo, bhi)
        for c, blo, bhi in zip(a_pt, B.lower, B.upper)
    )
    return best, (tuple(a_pt), b_pt)


def directed_hausdorff(space: MetricSpace, A: SetRep, B: SetRep) -> HausdorffResult:
    """sup over A of the distance to B."""
    if isinstance(A, Box) and isinstance(B, Box) and space.p == math.inf:
        value, witness = _directed_boxes(space, A, B)
        return HausdorffResult(value, witness, exact=A.exact and B.exact)
    pts_a = _rep_points(A)
    pts_b = _rep_points(B)
    value, witness = _directed_points(space, pts_a, pts_b)
    exact = (
        isinstance(A, (Singleton, FiniteSet))
        and isinstance(B, (Singleton, FiniteSet))
        and A.exact
        and B.exact
    )
    res = [r for r in (_rep_resolution(A), _rep_resolution(B)) if r is not None]
    return HausdorffResult(
        value, witness, exact=exact, resolution=max(res) if res else None
    )


def hausdorff(space: MetricSpace, A: SetRep, B: SetRep) -> HausdorffResult:
    """max of the two directed distances; witness from the deciding direction."""
    forward = directed_hausdorff(space, A, B)
    backward = directed_hausdorff(space, B, A)
    if forward.value > backward.value:
        chosen = forward
    elif backward.value > forward.value:
        chosen = backward
    else:
        chosen = forward if forward.witness <= backward.witness else backward
    res = [r for r in (forward.resolution, backward.resolution) if r is not None]
    return HausdorffResult(
        chosen.value,
        chosen.witness,
        exact=forward.exact and backward.exact,
        resolution=max(res) if res else None,
    )
