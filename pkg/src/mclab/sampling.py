"""Seeded, reproducible sample plans for the property checkers.

Exact-mode samples are drawn from a rational lattice (numerators over a
fixed denominator) so that every downstream quantity stays rational; float
samples are plain uniforms.  A plan fully describes itself so verdicts can
embed the information needed to replay a run.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .spaces import MetricSpace, VECTOR


@dataclass(frozen=True)
class SamplePlan:
    count: int = 1000
    seed: int = 20240601
    low: int = -2
    high: int = 2
    coord_denominator: int = 16
    t_denominator: int = 16
    t_values: tuple | None = None
    anchor_x: tuple | None = None
    anchor_y: tuple | None = None

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def describe(self) -> dict:
        out = {
            "count": self.count,
            "seed": self.seed,
            "low": self.low,
            "high": self.high,
            "coord_denominator": self.coord_denominator,
            "t_denominator": self.t_denominator,
        }
        if self.t_values is not None:
            out["t_values"] = list(self.t_values)
        if self.anchor_x is not None:
            out["anchor_x"] = list(self.anchor_x)
        if self.anchor_y is not None:
            out["anchor_y"] = list(self.anchor_y)
        return out


def sample_point(rng: random.Random, space: MetricSpace, plan: SamplePlan):
    assert space.carrier == VECTOR
    lo, hi = plan.low, plan.high
    if space.exact:
        den = plan.coord_denominator
        return tuple(
            Fraction(rng.randint(lo * den, hi * den), den) for _ in range(space.dim)
        )
    return tuple(rng.uniform(lo, hi) for _ in range(space.dim))


def sample_distinct_pair(rng: random.Random, space: MetricSpace, plan: SamplePlan):
    x = sample_point(rng, space, plan)
    y = sample_point(rng, space, plan)
    while y == x:
        y = sample_point(rng, space, plan)
    return x, y


def sample_t(rng: random.Random, space: MetricSpace, plan: SamplePlan, index: int = 0):
    """A parameter in (0, 1); rational in exact mode."""
    if plan.t_values:
        return plan.t_values[index % len(plan.t_values)]
    if space.exact:
        den = plan.t_denominator
        return Fraction(rng.randint(1, den - 1), den)
    return rng.uniform(0.02, 0.98)


def sample_finite_points(
    rng: random.Random, space: MetricSpace, plan: SamplePlan, max_size: int
):
    size = rng.randint(1, max_size)
    points = []
    for _ in range(size):
        points.append(sample_point(rng, space, plan))
    # duplicates are harmless for sets; drop them for cleanliness
    unique = list(dict.fromkeys(points))
    return tuple(unique)
