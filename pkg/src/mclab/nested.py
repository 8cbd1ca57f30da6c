"""Decreasing families of ball-intersection sets and common-point search.

Sets are stored intensionally as lists of closed balls and never enumerated.
Feasibility is established by cyclic projection over all ball constraints,
with projection onto a single d_p ball computed by radial scaling toward its
center.  A family whose diameter estimates vanish admits a unique common
point up to the final diameter; this is checked by restarting the solver
from a second start.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import Scalar, parse_scalar
from .errors import NestingError, SolverFailure
from .spaces import MetricSpace, distance, vscale, vsub, vadd


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: Scalar


@dataclass(frozen=True)
class NestedFamily:
    """Ordered list of sets, each an intersection of finitely many balls."""

    sets: tuple  # of tuples of Ball
    diam_estimates: tuple  # per set, min over balls of 2r (an upper bound)

    def all_balls(self):
        for balls in self.sets:
            yield from balls


def family_of_balls(ball_sets) -> NestedFamily:
    sets = tuple(tuple(bs) for bs in ball_sets)
    if not sets or any(not bs for bs in sets):
        raise NestingError("every set needs at least one ball")
    est = tuple(min(2 * b.radius for b in bs) for bs in sets)
    return NestedFamily(sets, est)


def build_shrinking_family(space: MetricSpace, centers, radii) -> NestedFamily:
    """Family of single closed balls B[c_n, r_n] with each ball containing
    the next: radii strictly decreasing and d(c_n, c_{n+1}) <= r_n - r_{n+1}."""
    if len(centers) != len(radii):
        raise NestingError("need one center per radius")
    if any(r <= 0 for r in radii):
        raise NestingError("radii must be positive")
    if any(a <= b for a, b in zip(radii, radii[1:])):
        raise NestingError("radii must be strictly decreasing")
    for c1, c2, r1, r2 in zip(centers, centers[1:], radii, radii[1:]):
        drift = distance(space, c1, c2)
        if drift > r1 - r2:
            raise NestingError(
                f"consecutive balls not nested: drift {drift} exceeds {r1 - r2}"
            )
    return family_of_balls([[Ball(tuple(c), r)] for c, r in zip(centers, radii)])


def _project_onto_ball(space: MetricSpace, z, ball: Ball):
    d = distance(space, z, ball.center)
    if d <= ball.radius:
        return z
    scale = ball.radius / d
    return vadd(ball.center, vscale(vsub(z, ball.center), scale))


def max_violation(space: MetricSpace, family: NestedFamily, z):
    worst = 0
    worst_ball = None
    for ball in family.all_balls():
        gap = distance(space, z, ball.center) - ball.radius
        if gap > worst:
            worst = gap
            worst_ball = ball
    return worst, worst_ball


def common_point(
    space: MetricSpace,
    family: NestedFamily,
    tol: float = 1e-6,
    max_sweeps: int = 10_000,
    start=None,
):
    """Point satisfying every ball constraint within tol, found by cyclic
    projection.  Raises SolverFailure with the worst violation when the
    sweeps stall or the budget runs out (infeasible input)."""
    z = tuple(start) if start is not None else family.sets[0][0].center
    best_violation = None
    stalled = 0
    for _ in range(max_sweeps):
        for ball in family.all_balls():
            z = _project_onto_ball(space, z, ball)
        violation, worst_ball = max_violation(space, family, z)
        if violation <= tol:
            return z
        if best_violation is not None and violation >= best_violation - 1e-15:
            stalled += 1
            if stalled >= 5:
                raise SolverFailure(
                    "cyclic projection stalled above tolerance",
                    certificate={
                        "violation": violation,
                        "ball_center": worst_ball.center,
                        "ball_radius": worst_ball.radius,
                    },
                )
        else:
            stalled = 0
        if best_violation is None or violation < best_violation:
            best_violation = violation
    raise SolverFailure(
        "cyclic projection exhausted its sweep budget",
        certificate={"violation": best_violation},
    )


def cantor_point(
    space: MetricSpace,
    family: NestedFamily,
    tol: float = 1e-6,
    max_sweeps: int = 10_000,
):
    """Common point of a family whose diameter estimates drop below tol.

    Two solver starts must agree within twice the final diameter estimate
    plus tol; their first result is returned.
    """
    est = family.diam_estimates
    if any(a <= b for a, b in zip(est, est[1:])):
        raise NestingError("diameter estimates must be strictly decreasing")
    if est[-1] >= tol:
        raise NestingError(
            f"diameter estimates never drop below tol ({est[-1]} >= {tol})"
        )
    first_center = family.sets[0][0].center
    radius0 = family.sets[0][0].radius
    offset = (radius0,) + (0,) * (len(first_center) - 1)
    z1 = common_point(space, family, tol, max_sweeps, start=first_center)
    z2 = common_point(space, family, tol, max_sweeps, start=vadd(first_center, offset))
    gap = distance(space, z1, z2)
    bound = 2 * est[-1] + tol
    if gap > bound:
        raise SolverFailure(
            "restarted searches disagree beyond the diameter bound",
            certificate={"gap": gap, "bound": bound},
        )
    return z1


def family_from_json(data) -> NestedFamily:
    """Family JSON: a list of sets, each a list of {center, radius}."""
    sets = []
    for entry in data:
        balls = [
            Ball(
                tuple(parse_scalar(c) for c in b["center"]),
                parse_scalar(b["radius"]),
            )
            for b in entry
        ]
        sets.append(balls)
    return family_of_balls(sets)


def family_to_json(family: NestedFamily):
    return [
        [{"center": list(b.center), "radius": b.radius} for b in balls]
        for balls in family.sets
    ]
