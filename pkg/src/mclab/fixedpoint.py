"""Generalized hybrid mappings, orbits, asymptotic centers, and fixed points.

A mapping T on a subset U is (alpha, beta)-generalized hybrid when

    alpha*d(Tx,Ty)^2 + (1-alpha)*d(x,Ty)^2
        <= beta*d(Tx,y)^2 + (1-beta)*d(x,y)^2

for all x, y in U, with alpha outside (0, 1) and beta in [0, 1].  The class
contains nonexpansive mappings at (1, 0) and metrically nonspreading
mappings at (2, 1).  When some orbit is bounded, the tail of the orbit
defines a functional whose minimiser is a fixed point; the functional is
minimised here by a deterministic derivative-free pattern search.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Scalar, parse_scalar
from .convexsets import (
    Box,
    FiniteSet,
    MidConvention,
    SampledOracle,
    SetRep,
    Singleton,
    unique_midpoint,
)
from .errors import (
    DomainEscape,
    MclabError,
    SolverFailure,
    UniqueMidpointUndefined,
)
from .sampling import SamplePlan
from .spaces import MetricSpace, distance, vadd, vscale
from .verdicts import FAILS, HOLDS, PropertyVerdict


# --------------------------------------------------------------------------
# mapping specifications


@dataclass(frozen=True)
class Affine:
    matrix: tuple  # rows
    offset: tuple

    def apply(self, x):
        return tuple(
            sum(m * c for m, c in zip(row, x)) + o
            for row, o in zip(self.matrix, self.offset)
        )


@dataclass(frozen=True)
class Rotation:
    """Planar rotation about a center (two-dimensional carriers)."""

    angle: float
    center: tuple = (0.0, 0.0)

    def apply(self, x):
        dx, dy = x[0] - self.center[0], x[1] - self.center[1]
        c, s = math.cos(self.angle), math.sin(self.angle)
        return (
            self.center[0] + c * dx - s * dy,
            self.center[1] + s * dx + c * dy,
        )


@dataclass(frozen=True)
class BoxProjection:
    """Componentwise clamp onto an axis-aligned box."""

    lower: tuple
    upper: tuple

    def apply(self, x):
        return tuple(
            min(max(c, lo), hi) for c, lo, hi in zip(x, self.lower, self.upper)
        )


@dataclass(frozen=True)
class Composition:
    maps: tuple

    def apply(self, x):
        for m in self.maps:
            x = m.apply(x)
        return x


Mapping = Affine | Rotation | BoxProjection | Composition


@dataclass(frozen=True)
class MappingSpec:
    mapping: Mapping
    domain: SetRep

    def apply(self, x):
        return self.mapping.apply(x)


@dataclass(frozen=True)
class HybridParams:
    alpha: Scalar
    beta: Scalar

    def __post_init__(self):
        if 0 < self.alpha < 1:
            raise MclabError("alpha must lie outside the open interval (0, 1)")
        if not (0 <= self.beta <= 1):
            raise MclabError("beta must lie in [0, 1]")


def ball_domain(center, radius, resolution: int = 33, space=None) -> SampledOracle:
    """Closed metric ball as a membership-oracle domain."""
    c = tuple(center)

    def member(z):
        if space is not None:
            return distance(space, z, c) <= radius + 1e-12
        return math.sqrt(sum((a - b) ** 2 for a, b in zip(z, c))) <= radius + 1e-12

    lower = tuple(ci - radius for ci in c)
    upper = tuple(ci + radius for ci in c)
    return SampledOracle(
        member=member, lower=lower, upper=upper, resolution=resolution, seeds=(c,)
    )


def box_domain(lower, upper, resolution: int = 33) -> SampledOracle:
    lo, hi = tuple(lower), tuple(upper)

    def member(z):
        return all(a - 1e-12 <= c <= b + 1e-12 for a, c, b in zip(lo, z, hi))

    mid = tuple((a + b) / 2 for a, b in zip(lo, hi))
    return SampledOracle(
        member=member, lower=lo, upper=hi, resolution=resolution, seeds=(mid,)
    )


def whole_space_domain(dim: int, radius: float = 8.0, resolution: int = 33) -> SampledOracle:
    """Unrestricted domain with a finite sampling window."""
    lower = tuple(-radius for _ in range(dim))
    upper = tuple(radius for _ in range(dim))
    return SampledOracle(
        member=lambda z: True,
        lower=lower,
        upper=upper,
        resolution=resolution,
        seeds=((0.0,) * dim,),
    )


def _domain_bounds(domain: SetRep):
    if isinstance(domain, (Box, SampledOracle)):
        return domain.lower, domain.upper
    pts = domain.sample_points()
    lower = tuple(min(p[i] for p in pts) for i in range(len(pts[0])))
    upper = tuple(max(p[i] for p in pts) for i in range(len(pts[0])))
    return lower, upper


def _sample_domain_point(rng, domain: SetRep):
    if isinstance(domain, (Singleton, FiniteSet)):
        pts = domain.sample_points()
        return pts[rng.randrange(len(pts))]
    lower, upper = _domain_bounds(domain)
    for _ in range(10_000):
        z = tuple(rng.uniform(lo, hi) for lo, hi in zip(lower, upper))
        if domain.contains(z, 1e-12):
            return z
    raise SolverFailure("rejection sampling found no domain point")


# --------------------------------------------------------------------------
# hybrid verification


def verify_hybrid(
    space: MetricSpace,
    spec: MappingSpec,
    params: HybridParams,
    plan: SamplePlan | None = None,
    tol: float = 1e-9,
) -> PropertyVerdict:
    """Sample pairs from the domain and test the hybrid inequality; the worst
    sample's four squared distances are recorded."""
    plan = plan or SamplePlan()
    rng = plan.rng()
    a, b = params.alpha, params.beta
    max_slack = None
    worst = None
    for _ in range(plan.count):
        x = _sample_domain_point(rng, spec.domain)
        y = _sample_domain_point(rng, spec.domain)
        tx = spec.apply(x)
        ty = spec.apply(y)
        if not spec.domain.contains(tx, 1e-9) or not spec.domain.contains(ty, 1e-9):
            escaped = tx if not spec.domain.contains(tx, 1e-9) else ty
            raise DomainEscape(f"mapping sends a sampled point to {escaped}")
        d_txty = distance(space, tx, ty) ** 2
        d_xty = distance(space, x, ty) ** 2
        d_txy = distance(space, tx, y) ** 2
        d_xy = distance(space, x, y) ** 2
        lhs = a * d_txty + (1 - a) * d_xty
        rhs = b * d_txy + (1 - b) * d_xy
        slack = lhs - rhs
        if max_slack is None or slack > max_slack:
            max_slack = slack
            worst = {
                "x": x,
                "y": y,
                "d(Tx,Ty)^2": d_txty,
                "d(x,Ty)^2": d_xty,
                "d(Tx,y)^2": d_txy,
                "d(x,y)^2": d_xy,
                "lhs": lhs,
                "rhs": rhs,
            }
    if max_slack is None:
        raise MclabError("hybrid verification needs a positive sample count")
    outcome = HOLDS if max_slack <= tol else FAILS
    return PropertyVerdict(
        property="GeneralizedHybrid",
        outcome=outcome,
        samples=plan.count,
        max_slack=max_slack,
        witness=worst,
        plan=plan.describe(),
    )


# --------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class OrbitResult:
    points: tuple
    radius: Scalar  # max distance from the start over the orbit
    bounded: bool


def orbit(
    space: MetricSpace,
    spec: MappingSpec,
    x0,
    n: int,
    rmax: float = 1e6,
) -> OrbitResult:
    """Iterate the mapping from x0; flag the orbit unbounded as soon as the
    distance back to x0 exceeds rmax."""
    if not spec.domain.contains(x0, 1e-9):
        raise DomainEscape("starting point lies outside the domain")
    points = [tuple(x0)]
    radius = 0
    x = tuple(x0)
    for _ in range(n):
        x = spec.apply(x)
        if not spec.domain.contains(x, 1e-9):
            raise DomainEscape(f"orbit escaped the domain at {x}")
        points.append(tuple(x))
        r = distance(space, x, x0)
        if r > radius:
            radius = r
        if radius > rmax:
            return OrbitResult(tuple(points), radius, False)
    return OrbitResult(tuple(points), radius, True)


# --------------------------------------------------------------------------
# asymptotic functional


@dataclass(frozen=True)
class AsymptoticFunctional:
    """Tail functional of a bounded orbit.

    The value at y is half of the maximum distance from the last `window`
    orbit points to y: every member of the half-way midpoint set of an orbit
    point and y sits at exactly half their distance, so the functional does
    not depend on which member is chosen.  The limit superior over the orbit
    is approximated by the maximum over the tail window.
    """

    base: tuple
    points: tuple
    window: int

    def __post_init__(self):
        if self.window < 1 or len(self.points) < self.window:
            raise MclabError("orbit length must be at least the tail window")

    @property
    def tail(self):
        return self.points[-self.window :]


def asymptotic_center(space: MetricSpace, F: AsymptoticFunctional, y) -> Scalar:
    """Value of the orbit-tail functional at y."""
    half = Fraction(1, 2) if space.exact else 0.5
    return half * max(distance(space, p, y) for p in F.tail)


def make_asymptotic_functional(
    space: MetricSpace,
    spec: MappingSpec,
    x0,
    n: int = 256,
    window: int = 32,
    rmax: float = 1e6,
) -> AsymptoticFunctional:
    orb = orbit(space, spec, x0, n, rmax)
    if not orb.bounded:
        raise SolverFailure(
            "orbit unbounded; the tail functional is undefined",
            certificate={"radius": orb.radius, "rmax": rmax},
        )
    return AsymptoticFunctional(tuple(x0), orb.points, window)


def coercivity_probe(
    space: MetricSpace,
    F: AsymptoticFunctional,
    u,
    direction,
    max_power: int = 10,
):
    """Evaluate the functional along u + k*direction for k = 1, 2, 4, ...

    Returns the sampled values together with the largest functional value
    attainable on the orbit tail itself; the probe holds when the ray values
    are nondecreasing and eventually exceed that bound.
    """
    ks = [2**j for j in range(max_power + 1)]
    values = [asymptotic_center(space, F, vadd(u, vscale(direction, k))) for k in ks]
    tail = F.tail
    orbit_bound = max(
        asymptotic_center(space, F, p) for p in tail
    )
    nondecreasing = all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    holds = nondecreasing and values[-1] > orbit_bound and values[-1] > values[0]
    return {
        "k": ks,
        "values": values,
        "orbit_bound": orbit_bound,
        "holds": holds,
    }


# --------------------------------------------------------------------------
# pattern search minimisation


def pattern_search(
    f,
    lower,
    upper,
    feasible=None,
    budget: int = 20_000,
    xtol: float = 1e-9,
    init_grid: int = 5,
):
    """Derivative-free compass search over a box with deterministic scan order.

    Starts from the best feasible point of a coarse grid, then repeatedly
    tries +/- step moves along each axis, halving the step whenever no move
    improves.  Returns (point, value, evaluations).
    """
    n = len(lower)
    feasible = feasible or (lambda z: True)
    axes = []
    for lo, hi in zip(lower, upper):
        if lo == hi:
            axes.append([lo])
        else:
            axes.append([lo + (hi - lo) * i / (init_grid - 1) for i in range(init_grid)])
    best = None
    best_val = None
    evals = 0
    for cand in itertools.product(*axes):
        if evals >= budget:
            break
        if not feasible(cand):
            continue
        v = f(cand)
        evals += 1
        if best_val is None or v < best_val:
            best, best_val = tuple(cand), v
    if best is None:
        raise SolverFailure("no feasible starting point on the initial grid")
    step = max((hi - lo) for lo, hi in zip(lower, upper)) / 4 or 1.0
    while step > xtol and evals < budget:
        improved = False
        for i in range(n):
            for sgn in (1, -1):
                cand = list(best)
                cand[i] += sgn * step
                cand[i] = min(max(cand[i], lower[i]), upper[i])
                cand = tuple(cand)
                if cand == best or not feasible(cand):
                    continue
                v = f(cand)
                evals += 1
                if v < best_val - 1e-18:
                    best, best_val = cand, v
                    improved = True
                    break
                if evals >= budget:
                    break
            if improved or evals >= budget:
                break
        if not improved:
            step /= 2
    return best, best_val, evals


@dataclass(frozen=True)
class FixedPointResult:
    point: tuple
    residual: Scalar
    f_value: Scalar
    orbit_radius: Scalar
    evaluations: int
    converged: bool


def find_fixed_point(
    space: MetricSpace,
    spec: MappingSpec,
    params: HybridParams,
    x0,
    orbit_n: int = 256,
    window: int = 32,
    tol: float = 1e-6,
    budget: int = 20_000,
    rmax: float = 1e6,
) -> FixedPointResult:
    """Minimise the orbit-tail functional over the domain and report the
    minimiser with its residual d(T u, u).

    Callers are expected to have verified the hybrid inequality first.  A
    result with residual above `tol` is returned with converged=False rather
    than silently accepted.
    """
    F = make_asymptotic_functional(space, spec, x0, orbit_n, window, rmax)
    lower, upper = _domain_bounds(spec.domain)

    def objective(z):
        return asymptotic_center(space, F, z)

    u0, f_val, evals = pattern_search(
        objective,
        lower,
        upper,
        feasible=lambda z: spec.domain.contains(z, 1e-12),
        budget=budget,
        xtol=min(tol * 1e-3, 1e-9),
    )
    residual = distance(space, spec.apply(u0), u0)
    orbit_radius = max(distance(space, p, x0) for p in F.points)
    return FixedPointResult(
        point=u0,
        residual=residual,
        f_value=f_val,
        orbit_radius=orbit_radius,
        evaluations=evals,
        converged=residual <= tol,
    )


# --------------------------------------------------------------------------
# the semigroup of midpoint maps toward a common point


def midpoint_map(
    space: MetricSpace, y, t: Scalar, conv: MidConvention = MidConvention.FROM_Y
):
    """Single-valued midpoint map x -> m(x, y, t); requires 1 < p < inf.

    Under the FROM_Y convention the map contracts with factor t.  The common
    point is fixed exactly: the two balls around y both have radius zero, so
    the map short-circuits to y when x == y.
    """
    if space.carrier != "vector" or space.p in (1, math.inf):
        raise UniqueMidpointUndefined(
            "midpoint maps need unique midpoints (1 < p < inf)"
        )
    yt = tuple(y)

    def mapping(x):
        if tuple(x) == yt:
            return yt
        return unique_midpoint(space, x, yt, t) if conv is MidConvention.FROM_Y else (
            unique_midpoint(space, x, yt, 1 - t)
        )

    return mapping


@dataclass(frozen=True)
class SemigroupReport:
    t_list: tuple
    lipschitz_estimate: Scalar
    product_bound: Scalar
    within_bound: bool
    fixes_y: bool
    samples: int
    seed: int


def semigroup_compose(
    space: MetricSpace,
    y,
    t_list,
    plan: SamplePlan | None = None,
    conv: MidConvention = MidConvention.FROM_Y,
    tol: float = 1e-9,
):
    """Compose the midpoint maps for the listed parameters (first entry
    applied first) and estimate the composition's Lipschitz constant over
    sampled pairs.  Returns (composed mapping, report)."""
    if space.carrier != "vector" or space.p in (1, math.inf):
        raise UniqueMidpointUndefined(
            "midpoint maps need unique midpoints (1 < p < inf)"
        )
    plan = plan or SamplePlan()
    maps = [midpoint_map(space, y, t, conv) for t in t_list]

    def composed(x):
        for m in maps:
            x = m(x)
        return x

    rng = plan.rng()
    best_ratio = 0
    for _ in range(plan.count):
        a = tuple(rng.uniform(plan.low, plan.high) for _ in range(space.dim))
        b = tuple(rng.uniform(plan.low, plan.high) for _ in range(space.dim))
        if a == b:
            continue
        num = distance(space, composed(a), composed(b))
        den = distance(space, a, b)
        ratio = num / den
        if ratio > best_ratio:
            best_ratio = ratio
    product = 1
    for t in t_list:
        product *= t if conv is MidConvention.FROM_Y else (1 - t)
    fixes_y = composed(tuple(y)) == tuple(y)
    report = SemigroupReport(
        t_list=tuple(t_list),
        lipschitz_estimate=best_ratio,
        product_bound=product,
        within_bound=best_ratio <= product + tol,
        fixes_y=fixes_y,
        samples=plan.count,
        seed=plan.seed,
    )
    return composed, report


# --------------------------------------------------------------------------
# JSON mapping specs


def mapping_from_json(obj: dict, dim: int) -> MappingSpec:
    """Build a MappingSpec from its JSON form {kind, parameters, domain}."""
    mapping = _mapping_only_from_json(obj)
    domain = _domain_from_json(obj.get("domain"), dim)
    return MappingSpec(mapping=mapping, domain=domain)


def _mapping_only_from_json(obj: dict) -> Mapping:
    kind = obj.get("kind")
    params = obj.get("parameters", {})
    if kind == "affine":
        matrix = tuple(tuple(parse_scalar(c) for c in row) for row in params["matrix"])
        offset = tuple(parse_scalar(c) for c in params["offset"])
        return Affine(matrix, offset)
    if kind == "rotation":
        if "turns" in params:
            angle = 2 * math.pi * float(Fraction(str(params["turns"])))
        else:
            angle = float(params["angle"])
        center = tuple(float(c) for c in params.get("center", (0.0, 0.0)))
        return Rotation(angle, center)
    if kind == "box_projection":
        lower = tuple(parse_scalar(c) for c in params["lower"])
        upper = tuple(parse_scalar(c) for c in params["upper"])
        return BoxProjection(lower, upper)
    if kind == "composition":
        return Composition(tuple(_mapping_only_from_json(m) for m in params["maps"]))
    raise MclabError(f"unknown mapping kind {kind!r}")


def _domain_from_json(obj, dim: int) -> SetRep:
    if obj is None:
        return whole_space_domain(dim)
    repr_tag = obj.get("repr")
    if repr_tag == "ball":
        return ball_domain(
            tuple(float(c) for c in obj["center"]),
            float(obj["radius"]),
            resolution=int(obj.get("resolution", 33)),
        )
    if repr_tag == "box":
        return box_domain(
            tuple(parse_scalar(c) for c in obj["lower"]),
            tuple(parse_scalar(c) for c in obj["upper"]),
            resolution=int(obj.get("resolution", 33)),
        )
    if repr_tag == "all":
        return whole_space_domain(dim, radius=float(obj.get("radius", 8.0)))
    raise MclabError(f"unknown domain representation {repr_tag!r}")
