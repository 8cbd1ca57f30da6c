"""Verdict engines for the convexity properties.

Each checker samples configurations from a seeded plan and returns a
PropertyVerdict: holds with the sample plan and the worst observed slack,
fails with a certificate that re-evaluates through the public operations,
or refused when the operation the property quantifies over is undefined on
the space.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .arith import Scalar
from .convexsets import (
    DEFAULT_RESOLUTION,
    DEFAULT_TOL,
    Box,
    FiniteSet,
    MidConvention,
    SetRep,
    diameter_with_witness,
    lifted_union,
    midpoint_set,
    radii_for,
    segment,
    segment_points,
    space_label,
    sphere_equivalence_check,
    unique_midpoint,
)
from .errors import MembershipError, MclabError, UniqueMidpointUndefined
from .hausdorff import hausdorff
from .sampling import (
    SamplePlan,
    sample_distinct_pair,
    sample_finite_points,
    sample_point,
    sample_t,
)
from .spaces import VECTOR, MetricSpace, distance, vscale
from .verdicts import FAILS, HOLDS, REFUSED, PropertyVerdict

PROPERTY_NAMES = ("A", "B", "Bprime", "Bdoubleprime", "C")


def _verdict(name, outcome, plan=None, conv=None, resolution=None, **kw):
    described = plan.describe() if plan is not None else None
    if described is not None and resolution is not None:
        described["grid_resolution"] = resolution
    return PropertyVerdict(
        property=name,
        outcome=outcome,
        plan=described,
        convention=conv.value if conv is not None else None,
        **kw,
    )


# --------------------------------------------------------------------------
# Menger convexity


def check_menger_convex(
    space: MetricSpace,
    plan: SamplePlan,
    carrier_points=None,
    resolution: int = DEFAULT_RESOLUTION,
    tol: float = DEFAULT_TOL,
) -> PropertyVerdict:
    """Between any two sampled points, at the sampled split, some third point
    realises both sphere equalities.

    With `carrier_points` the search is restricted to that finite carrier
    (sub-spaces such as the integer lattice); otherwise the midpoint set is
    constructed and its sampled members are verified on both spheres.
    """
    rng = plan.rng()
    slack_tol = 0 if space.exact else tol
    max_slack = 0
    checked = 0
    for k in range(plan.count):
        if carrier_points is not None:
            pool = list(carrier_points)
            x = pool[rng.randrange(len(pool))]
            y = pool[rng.randrange(len(pool))]
            while y == x:
                y = pool[rng.randrange(len(pool))]
            t = sample_t(rng, space, plan, k)
            d = distance(space, x, y)
            r1, r2 = radii_for(MidConvention.FROM_X, t, d)
            found = None
            for z in pool:
                if z == x or z == y:
                    continue
                if (
                    abs(distance(space, z, x) - r1) <= slack_tol
                    and abs(distance(space, z, y) - r2) <= slack_tol
                ):
                    found = z
                    break
            checked += 1
            if found is None:
                return _verdict(
                    "MengerConvex",
                    FAILS,
                    plan=plan,
                    samples=checked,
                    witness={
                        "x": x,
                        "y": y,
                        "t": t,
                        "radius_x": r1,
                        "radius_y": r2,
                        "carrier_size": len(pool),
                        "reason": "no carrier point on both spheres",
                    },
                )
            continue
        x, y = sample_distinct_pair(rng, space, plan)
        t = sample_t(rng, space, plan, k)
        verdict = sphere_equivalence_check(
            space, x, y, t, MidConvention.FROM_X, resolution=resolution, tol=tol
        )
        checked += 1
        if not verdict.holds:
            return _verdict(
                "MengerConvex",
                FAILS,
                plan=plan,
                samples=checked,
                witness=verdict.witness,
            )
        if verdict.max_slack is not None and verdict.max_slack > max_slack:
            max_slack = verdict.max_slack
    return _verdict(
        "MengerConvex",
        HOLDS,
        plan=plan,
        samples=checked,
        max_slack=max_slack,
        resolution=resolution,
    )


# --------------------------------------------------------------------------
# properties (A), (B), (B'), (B''), (C)


def check_property(
    space: MetricSpace,
    which: str,
    conv: MidConvention = MidConvention.FROM_Y,
    plan: SamplePlan | None = None,
    diam_tol: float = 1e-6,
    tol: float = DEFAULT_TOL,
    resolution: int = DEFAULT_RESOLUTION,
    max_set_size: int = 8,
    t_grid=None,
) -> PropertyVerdict:
    if which not in PROPERTY_NAMES:
        raise MclabError(f"unknown property {which!r}")
    plan = plan or SamplePlan()
    if which == "A":
        return _check_a(space, conv, plan, diam_tol, resolution, tol)
    if which == "B":
        return _check_b(space, plan, tol)
    if which == "Bprime":
        return _check_bprime(space, conv, plan, tol, resolution)
    if which == "Bdoubleprime":
        return _check_bdoubleprime(space, conv, plan, tol, resolution, max_set_size)
    return _check_c(space, conv, plan, tol, resolution, t_grid)


def _sample_xyt(rng, space, plan, k):
    if plan.anchor_x is not None and plan.anchor_y is not None:
        x, y = tuple(plan.anchor_x), tuple(plan.anchor_y)
    else:
        x, y = sample_distinct_pair(rng, space, plan)
    return x, y, sample_t(rng, space, plan, k)


def _check_a(space, conv, plan, diam_tol, resolution, tol):
    """Property (A): every midpoint set is a single point."""
    rng = plan.rng()
    worst = 0
    for k in range(plan.count):
        x, y, t = _sample_xyt(rng, space, plan, k)
        rep = midpoint_set(space, x, y, t, conv, resolution=resolution, tol=tol)
        diam, pair = diameter_with_witness(space, rep)
        if diam > diam_tol:
            p, q = pair
            return _verdict(
                "A",
                FAILS,
                plan=plan,
                conv=conv,
                samples=k + 1,
                witness={
                    "x": x,
                    "y": y,
                    "t": t,
                    "point_1": p,
                    "point_2": q,
                    "distance": diam,
                    "distance_to_x_1": distance(space, p, x),
                    "distance_to_x_2": distance(space, q, x),
                    "distance_to_y_1": distance(space, p, y),
                    "distance_to_y_2": distance(space, q, y),
                },
                max_slack=diam,
            )
        if diam > worst:
            worst = diam
    return _verdict(
        "A",
        HOLDS,
        plan=plan,
        conv=conv,
        samples=plan.count,
        max_slack=worst,
        resolution=resolution,
    )


def _check_b(space, plan, tol):
    """Property (B): the unique-midpoint map contracts with factor t in its
    first argument."""
    if space.carrier != VECTOR or space.p in (1, math.inf):
        return _verdict(
            "B",
            REFUSED,
            plan=plan,
            reason=f"midpoint sets of {space_label(space)} are not singletons; "
            "no unique midpoint exists",
        )
    rng = plan.rng()
    max_slack = None
    equality_hit = False
    for k in range(plan.count):
        x, y = sample_distinct_pair(rng, space, plan)
        z = sample_point(rng, space, plan)
        while z == y:
            z = sample_point(rng, space, plan)
        t = sample_t(rng, space, plan, k)
        mx = unique_midpoint(space, x, y, t)
        mz = unique_midpoint(space, z, y, t)
        lhs = distance(space, mx, mz)
        rhs = t * distance(space, x, z) if x != z else 0
        slack = lhs - rhs
        if slack > tol:
            return _verdict(
                "B",
                FAILS,
                plan=plan,
                samples=k + 1,
                witness={"x": x, "y": y, "z": z, "t": t, "lhs": lhs, "rhs": rhs},
                max_slack=slack,
            )
        if x != z and abs(slack) <= 1e-6:
            equality_hit = True
        if max_slack is None or slack > max_slack:
            max_slack = slack
    verdict = _verdict(
        "B", HOLDS, plan=plan, samples=plan.count, max_slack=max_slack
    )
    verdict.witness = {"equality_attained": equality_hit}
    return verdict


def _check_bprime(space, conv, plan, tol, resolution):
    """Property (B'): Hausdorff contraction of the midpoint set in its first
    argument with factor t."""
    rng = plan.rng()
    max_slack = None
    for k in range(plan.count):
        x, y = sample_distinct_pair(rng, space, plan)
        z = sample_point(rng, space, plan)
        while z == y or z == x:
            z = sample_point(rng, space, plan)
        t = sample_t(rng, space, plan, k)
        cx = midpoint_set(space, x, y, t, conv, resolution=resolution, tol=tol)
        cz = midpoint_set(space, z, y, t, conv, resolution=resolution, tol=tol)
        h = hausdorff(space, cx, cz)
        lhs = h.value
        rhs = t * distance(space, x, z)
        slack = lhs - rhs
        if slack > tol:
            return _verdict(
                "Bprime",
                FAILS,
                plan=plan,
                conv=conv,
                samples=k + 1,
                witness={
                    "x": x,
                    "y": y,
                    "z": z,
                    "t": t,
                    "lhs": lhs,
                    "rhs": rhs,
                    "ratio": lhs / distance(space, x, z),
                    "hausdorff_witness": h.witness,
                },
                max_slack=slack,
            )
        if max_slack is None or slack > max_slack:
            max_slack = slack
    return _verdict(
        "Bprime", HOLDS, plan=plan, conv=conv, samples=plan.count, max_slack=max_slack
    )


def _check_bdoubleprime(space, conv, plan, tol, resolution, max_set_size):
    """Property (B''): Hausdorff contraction of the set-lifted union."""
    rng = plan.rng()
    max_slack = None
    for k in range(plan.count):
        pts_a = sample_finite_points(rng, space, plan, max_set_size)
        pts_b = sample_finite_points(rng, space, plan, max_set_size)
        A = FiniteSet(pts_a, exact=space.exact)
        B = FiniteSet(pts_b, exact=space.exact)
        y = sample_point(rng, space, plan)
        t = sample_t(rng, space, plan, k)
        CA = lifted_union(space, A, y, t, conv, resolution=resolution, tol=tol)
        CB = lifted_union(space, B, y, t, conv, resolution=resolution, tol=tol)
        lhs = hausdorff(space, CA, CB).value
        rhs = t * hausdorff(space, A, B).value
        slack = lhs - rhs
        if slack > tol:
            return _verdict(
                "Bdoubleprime",
                FAILS,
                plan=plan,
                conv=conv,
                samples=k + 1,
                witness={
                    "A": list(pts_a),
                    "B": list(pts_b),
                    "y": y,
                    "t": t,
                    "lhs": lhs,
                    "rhs": rhs,
                },
                max_slack=slack,
            )
        if max_slack is None or slack > max_slack:
            max_slack = slack
    return _verdict(
        "Bdoubleprime",
        HOLDS,
        plan=plan,
        conv=conv,
        samples=plan.count,
        max_slack=max_slack,
    )


def _check_c(space, conv, plan, tol, resolution, t_grid):
    """Property (C): midpoint sets of segment members stay on the segment."""
    rng = plan.rng()
    if t_grid is None:
        t_grid = [Fraction(j, 8) for j in range(1, 8)]
        if not space.exact:
            t_grid = [float(t) for t in t_grid]
    checks = 0
    budget = plan.count
    pair_rounds = 1 if plan.anchor_x is not None else max(1, plan.count // 100)
    for _ in range(pair_rounds):
        if plan.anchor_x is not None and plan.anchor_y is not None:
            x, y = tuple(plan.anchor_x), tuple(plan.anchor_y)
        else:
            x, y = sample_distinct_pair(rng, space, plan)
        d = distance(space, x, y)
        seg = segment(space, x, y, t_grid, conv, resolution=resolution, tol=tol)
        pool = segment_points(seg)
        # seeded random exploration of (u, v, s) triples over the pool; an
        # ordered scan would spend the whole budget near one corner
        while checks < budget:
            u = pool[rng.randrange(len(pool))]
            v = pool[rng.randrange(len(pool))]
            if u == v:
                continue
            s = t_grid[rng.randrange(len(t_grid))]
            rep = midpoint_set(space, u, v, s, conv, resolution=resolution, tol=tol)
            for w in rep.sample_points():
                checks += 1
                defect = abs(distance(space, x, w) + distance(space, w, y) - d)
                if defect > tol:
                    return _verdict(
                        "C",
                        FAILS,
                        plan=plan,
                        conv=conv,
                        samples=checks,
                        witness={
                            "x": x,
                            "y": y,
                            "u": u,
                            "v": v,
                            "s": s,
                            "point": w,
                            "distance_sum": distance(space, x, w)
                            + distance(space, w, y),
                            "segment_length": d,
                        },
                        max_slack=defect,
                    )
            if checks >= budget:
                break
    return _verdict("C", HOLDS, plan=plan, conv=conv, samples=checks)


# --------------------------------------------------------------------------
# betweenness of midpoints at two parameters


def check_betweenness(
    space: MetricSpace,
    x,
    y,
    t1: Scalar,
    t2: Scalar,
    p1,
    p2,
    conv: MidConvention = MidConvention.FROM_X,
    tol: float = DEFAULT_TOL,
    resolution: int = DEFAULT_RESOLUTION,
) -> PropertyVerdict:
    """Does the deeper midpoint p2 lie between p1 and y?

    Membership of p1 and p2 in their midpoint sets is verified first; the
    verdict then compares d(p1, p2) + d(p2, y) with d(p1, y).
    """
    if not t1 < t2:
        raise MclabError("need t1 < t2")
    rep1 = midpoint_set(space, x, y, t1, conv, resolution=resolution, tol=tol)
    rep2 = midpoint_set(space, x, y, t2, conv, resolution=resolution, tol=tol)
    mtol = 0 if space.exact else tol
    if not rep1.contains(p1, mtol):
        raise MembershipError("p1 is not a member of the first midpoint set")
    if not rep2.contains(p2, mtol):
        raise MembershipError("p2 is not a member of the second midpoint set")
    lhs = distance(space, p1, p2) + distance(space, p2, y)
    rhs = distance(space, p1, y)
    gap = abs(lhs - rhs)
    witness = {
        "x": x,
        "y": y,
        "t1": t1,
        "t2": t2,
        "p1": p1,
        "p2": p2,
        "sum_via_p2": lhs,
        "direct": rhs,
    }
    limit = 0 if space.exact else tol
    if gap > limit:
        return PropertyVerdict(
            property="Betweenness",
            outcome=FAILS,
            samples=1,
            witness=witness,
            max_slack=gap,
            convention=conv.value,
        )
    return PropertyVerdict(
        property="Betweenness",
        outcome=HOLDS,
        samples=1,
        witness=witness,
        max_slack=gap,
        convention=conv.value,
    )


# --------------------------------------------------------------------------
# homogeneity of the metric under scaling


def check_homogeneity(
    space: MetricSpace,
    plan: SamplePlan,
    cap: Scalar | None = None,
    tol: float = 1e-12,
) -> PropertyVerdict:
    """d(0, a*x) = |a| * d(0, x) over sampled scalars and points.

    With `cap`, the metric is replaced by min(cap, d); the identity then
    fails, certifying that scaling by straight-line combination cannot be a
    convex structure for the bounded metric.
    """
    if space.carrier != VECTOR:
        raise MclabError("homogeneity checks need a vector carrier")
    rng = plan.rng()
    zero = (0,) * space.dim
    e1 = (1,) + (0,) * (space.dim - 1)

    def metric(a, b):
        d = distance(space, a, b)
        if cap is not None:
            return min(cap, d)
        return d

    probes = [(0, e1), (3, e1), (-2, e1)]
    samples = []
    for k in range(plan.count):
        alpha = rng.uniform(-4, 4)
        if space.exact:
            alpha = Fraction(rng.randint(-4 * 16, 4 * 16), 16)
        samples.append((alpha, sample_point(rng, space, plan)))
    max_gap = 0
    total = 0
    for alpha, x in probes + samples:
        lhs = metric(zero, vscale(x, alpha))
        rhs = abs(alpha) * metric(zero, x)
        gap = abs(lhs - rhs)
        total += 1
        if gap > tol:
            return PropertyVerdict(
                property="Homogeneity",
                outcome=FAILS,
                samples=total,
                witness={
                    "alpha": alpha,
                    "x": x,
                    "lhs": lhs,
                    "rhs": rhs,
                    "cap": cap,
                },
                max_slack=gap,
                plan=plan.describe(),
            )
        if gap > max_gap:
            max_gap = gap
    return PropertyVerdict(
        property="Homogeneity",
        outcome=HOLDS,
        samples=total,
        max_slack=max_gap,
        plan=plan.describe(),
    )


# --------------------------------------------------------------------------
# strict diameter drop for closed sets inside an interior


def check_diameter_strict(
    space: MetricSpace,
    A: Box,
    C: SetRep,
    tol: float = DEFAULT_TOL,
) -> PropertyVerdict:
    """Ratio of the diameter of a closed set C to the diameter of the
    interior it sits in; holds when the ratio is strictly below 1."""
    if not isinstance(A, Box):
        raise MclabError("the enclosing set must be a box")
    for z in C.sample_points():
        if not all(lo < c < hi for lo, c, hi in zip(A.lower, z, A.upper)):
            raise MembershipError(
                f"sampled point {z} of C is not strictly inside the box"
            )
    delta_c, _ = diameter_with_witness(space, C)
    # the interior of a box has the same diameter as its closure
    delta_int = distance(space, A.lower, A.upper)
    k_hat = delta_c / delta_int if delta_c else delta_c
    threshold = 1 if space.exact and A.exact and C.exact else 1 - tol
    outcome = HOLDS if k_hat < threshold else FAILS
    return PropertyVerdict(
        property="DiameterStrict",
        outcome=outcome,
        samples=len(C.sample_points()),
        witness={
            "diameter_inner": delta_c,
            "diameter_interior": delta_int,
            "k_hat": k_hat,
        },
        max_slack=k_hat,
    )


# --------------------------------------------------------------------------
# uniform convexity modulus


def estimate_uniform_modulus(
    space: MetricSpace,
    eps_values,
    budget: int = 100_000,
    seed: int = 20240601,
    extra_directions: int = 2,
):
    """Empirical modulus of uniform convexity.

    For each eps, maximises d(z, m(x, y, 1/2)) over admissible configurations
    d(z, x) <= 1, d(z, y) <= 1, d(x, y) >= eps (radius normalised to 1 by
    scale invariance) and reports 1 minus the maximum ratio.  The search
    combines a separation grid that includes the extreme separation eps, a
    bisection for the feasibility boundary on the circle d(z, x) = 1 inside a
    sampled plane, and random admissible rejection samples.
    """
    if space.carrier != VECTOR or space.p in (1, math.inf):
        raise UniqueMidpointUndefined(
            "uniform-convexity moduli need unique midpoints (1 < p < inf)"
        )
    import random as _random

    rng = _random.Random(seed)
    n = space.dim
    out = []
    eps_list = list(eps_values)
    per_eps = max(1, budget // max(1, len(eps_list)))
    for eps in eps_list:
        evals = 0
        best = 0.0

        frames = [_axis_frame(n)]
        for _ in range(extra_directions):
            frames.append(_random_frame(rng, n, space))

        s_grid = [eps]
        s = eps
        while s < 2.0 - 1e-12 and len(s_grid) < 12:
            s = min(2.0, s * 1.25 + 1e-3)
            s_grid.append(s)

        def ratio_at(z, mid):
            return distance(space, z, mid)

        for w, v in frames:
            for s in s_grid:
                if evals >= per_eps:
                    break
                x = vscale(w, -s / 2)
                y = vscale(w, s / 2)
                mid = tuple((a + b) / 2 for a, b in zip(x, y))

                def on_circle(theta):
                    direction = tuple(
                        math.cos(theta) * wi + math.sin(theta) * vi
                        for wi, vi in zip(w, v)
                    )
                    norm = distance(space, direction, (0,) * n)
                    return tuple(xi + di / norm for xi, di in zip(x, direction))

                def feasible(z):
                    return distance(space, z, y) <= 1

                # theta = 0 points at y and is always feasible for s <= 2
                lo_t, hi_t = 0.0, math.pi
                zc = on_circle(lo_t)
                evals += 1
                if feasible(zc):
                    best = max(best, ratio_at(zc, mid))
                # coarse scan for the last feasible angle
                K = 32
                last_good = lo_t
                first_bad = None
                for i in range(1, K + 1):
                    theta = lo_t + (hi_t - lo_t) * i / K
                    z = on_circle(theta)
                    evals += 1
                    if feasible(z):
                        last_good = theta
                        best = max(best, ratio_at(z, mid))
                    else:
                        first_bad = theta
                        break
                if first_bad is not None:
                    a, b = last_good, first_bad
                    for _ in range(60):
                        m = (a + b) / 2
                        z = on_circle(m)
                        evals += 1
                        if feasible(z):
                            a = m
                            best = max(best, ratio_at(z, mid))
                        else:
                            b = m
        # random admissible rejection samples with the remaining budget
        while evals < per_eps:
            s = rng.uniform(eps, 2.0)
            w, v = _random_frame(rng, n, space)
            x = vscale(w, -s / 2)
            y = vscale(w, s / 2)
            mid = tuple((a + b) / 2 for a, b in zip(x, y))
            z = tuple(rng.uniform(-1.5, 1.5) for _ in range(n))
            evals += 1
            if distance(space, z, x) <= 1 and distance(space, z, y) <= 1:
                best = max(best, ratio_at(z, mid))
        out.append((eps, 1.0 - best))
    return out


def _axis_frame(n):
    w = (1,) + (0,) * (n - 1)
    v = (0, 1) + (0,) * (n - 2) if n >= 2 else (1,)
    return w, v


def _random_frame(rng, n, space):
    """A unit direction in the space's norm plus an independent partner."""
    while True:
        raw = tuple(rng.gauss(0, 1) for _ in range(n))
        norm = distance(space, raw, (0,) * n)
        if norm > 1e-9:
            break
    w = tuple(c / norm for c in raw)
    if n == 1:
        return w, w
    while True:
        raw2 = tuple(rng.gauss(0, 1) for _ in range(n))
        dot = sum(a * b for a, b in zip(raw2, w))
        perp = tuple(a - dot * b for a, b in zip(raw2, w))
        norm2 = distance(space, perp, (0,) * n)
        if norm2 > 1e-9:
            return w, tuple(c / norm2 for c in perp)
