from __future__ import annotations

import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mclab import (
    DimensionMismatch,
    ExactArithmeticUnsupported,
    PiecewisePoly,
    constant_fn,
    distance,
    l1_function_space,
    linf_function_space,
    pl_distance,
    poly_fn,
    space_from_id,
    vector_space,
)


class TestVectorDistance:
    def test_sup_metric_axis_pair(self):
        space = vector_space(3, math.inf, exact=True)
        assert distance(space, (0, 0, 0), (2, 0, 0)) == 2

    def test_identity_is_zero_for_every_p(self):
        for p in (1, 1.5, 2, 3, math.inf):
            space = vector_space(2, p)
            assert distance(space, (0.3, -0.7), (0.3, -0.7)) == 0

    def test_euclidean_unit_diagonal(self):
        space = vector_space(2, 2)
        # brute-force evaluation of the p = 2 sum
        expected = (abs(1 - 0) ** 2 + abs(0 - 1) ** 2) ** 0.5
        assert distance(space, (1.0, 0.0), (0.0, 1.0)) == pytest.approx(expected)
        assert expected == pytest.approx(math.sqrt(2))

    def test_dimension_mismatch(self):
        space = vector_space(3, 2)
        with pytest.raises(DimensionMismatch):
            distance(space, (1.0, 2.0), (0.0, 0.0, 0.0))

    def test_exact_mode_rejects_intermediate_p(self):
        with pytest.raises(ExactArithmeticUnsupported):
            vector_space(2, 2, exact=True)

    def test_exact_outputs_are_rational_and_reproducible(self):
        space = vector_space(3, 1, exact=True)
        a = (F(1, 3), F(-2, 7), F(5, 11))
        b = (F(2, 3), F(3, 7), F(-1, 11))
        first = distance(space, a, b)
        assert isinstance(first, F)
        for _ in range(5):
            assert distance(space, a, b) == first

    def test_exact_space_rejects_float_coordinates(self):
        space = vector_space(2, 1, exact=True)
        with pytest.raises(ExactArithmeticUnsupported):
            distance(space, (0.5, 0.5), (F(1, 2), F(1, 2)))


SPACES_FOR_AXIOMS = [
    vector_space(3, 1),
    vector_space(3, 1.5),
    vector_space(3, 2),
    vector_space(3, 3),
    vector_space(3, math.inf),
    vector_space(4, 1, exact=True),
    vector_space(4, math.inf, exact=True),
]


@pytest.mark.parametrize("space", SPACES_FOR_AXIOMS, ids=lambda s: s.id)
def test_metric_axioms_on_seeded_triples(space):
    rng = random.Random(987)
    slack_floor = 0 if space.exact else -1e-12

    def pt():
        if space.exact:
            return tuple(F(rng.randint(-32, 32), 16) for _ in range(space.dim))
        return tuple(rng.uniform(-2, 2) for _ in range(space.dim))

    for _ in range(10_000):
        x, y, z = pt(), pt(), pt()
        dxy = distance(space, x, y)
        assert dxy >= 0
        assert distance(space, y, x) == dxy  # symmetry, exactly
        triangle_slack = distance(space, x, z) + distance(space, z, y) - dxy
        assert triangle_slack >= slack_floor
        assert distance(space, x, x) == 0


@given(
    st.lists(st.fractions(min_value=-4, max_value=4), min_size=3, max_size=3),
    st.lists(st.fractions(min_value=-4, max_value=4), min_size=3, max_size=3),
)
@settings(max_examples=100, deadline=None)
def test_exact_taxicab_symmetry_and_rationality(xs, ys):
    space = vector_space(3, 1, exact=True)
    a, b = tuple(xs), tuple(ys)
    d = distance(space, a, b)
    assert distance(space, b, a) == d
    assert isinstance(d, (int, F))
    assert d == sum(abs(p - q) for p, q in zip(a, b))


class TestPiecewiseDistance:
    def test_constants_in_integral_metric(self):
        space = l1_function_space()
        assert pl_distance(space, constant_fn(0), constant_fn(2)) == 2

    @pytest.mark.parametrize("a", [F(1, 4), F(1, 2), F(3, 4)])
    def test_tent_functions_at_unit_distance(self, a):
        space = l1_function_space()
        left = (2, F(-2) / a, 0)
        right = (2 - F(2) / (1 - a), F(2) / (1 - a), 0)
        tent = PiecewisePoly((0, a, 1), (left, right))
        assert pl_distance(space, constant_fn(0), tent) == 1
        assert pl_distance(space, constant_fn(2), tent) == 1

    def test_parabola_in_sup_metric(self):
        space = linf_function_space()
        assert pl_distance(space, constant_fn(0), poly_fn(0, 0, 2)) == 2

    def test_sup_metric_uses_interior_vertex(self):
        space = linf_function_space()
        # x - x^2 peaks at 1/4 in the middle of [0, 1]
        f = poly_fn(0, 1, -1)
        assert pl_distance(space, f, constant_fn(0)) == F(1, 4)

    def test_breakpoint_validation(self):
        with pytest.raises(Exception):
            PiecewisePoly((0, F(1, 2)), ((0, 0, 0),))
        with pytest.raises(Exception):
            PiecewisePoly((0, F(1, 2), F(1, 2), 1), ((0, 0, 0),) * 3)

    def test_exact_mode_refuses_irrational_sign_root(self):
        exact = l1_function_space(exact=True)
        # x^2 - 1/2 crosses zero at 1/sqrt(2)
        f = poly_fn(F(-1, 2), 0, 1)
        with pytest.raises(ExactArithmeticUnsupported):
            pl_distance(exact, f, constant_fn(0))
        loose = l1_function_space(exact=False)
        value = pl_distance(loose, poly_fn(-0.5, 0.0, 1.0), constant_fn(0.0))
        # closed form: 2 * integral splits at 1/sqrt(2)
        r = 1 / math.sqrt(2)
        left = abs(r**3 / 3 - r / 2)
        right = abs((1 / 3 - 1 / 2) - (r**3 / 3 - r / 2))
        assert value == pytest.approx(left + right, abs=1e-12)


def _eval_pw(fn: PiecewisePoly, xs: np.ndarray) -> np.ndarray:
    bps = np.array([float(b) for b in fn.breakpoints])
    idx = np.clip(np.searchsorted(bps, xs, side="right") - 1, 0, len(fn.pieces) - 1)
    c = np.array([[float(v) for v in piece] for piece in fn.pieces])
    return c[idx, 0] + c[idx, 1] * xs + c[idx, 2] * xs * xs


def _random_pw(rng: random.Random) -> PiecewisePoly:
    """Continuous random piecewise quadratic: c0 of each piece is chosen to
    match the previous piece's value, so panels never straddle a jump."""
    k = rng.randint(1, 4)
    cuts = sorted(rng.uniform(0.05, 0.95) for _ in range(k - 1))
    bps = tuple([0.0] + cuts + [1.0])
    pieces = []
    value_at = rng.uniform(-2, 2)
    for i in range(k):
        c1, c2 = rng.uniform(-2, 2), rng.uniform(-2, 2)
        b = bps[i]
        c0 = value_at - c1 * b - c2 * b * b
        pieces.append((c0, c1, c2))
        nb = bps[i + 1]
        value_at = c0 + c1 * nb + c2 * nb * nb
    return PiecewisePoly(bps, tuple(pieces))


def test_integral_metric_agrees_with_midpoint_rule():
    """Independent quadrature oracle: 10^6 midpoint panels per function pair."""
    space = l1_function_space(exact=False)
    rng = random.Random(20240601)
    panels = 1_000_000
    xs = (np.arange(panels) + 0.5) / panels
    for _ in range(100):
        f, g = _random_pw(rng), _random_pw(rng)
        closed = pl_distance(space, f, g)
        quad = float(np.abs(_eval_pw(f, xs) - _eval_pw(g, xs)).mean())
        assert abs(closed - quad) < 1e-6


def test_space_id_round_trip():
    for sid in ["vec3-p2", "vec5-pinf-exact", "vec4-p1-exact", "vec2-p1.5", "l1fn-exact", "linffn"]:
        assert space_from_id(sid).id == sid


def test_point_json_round_trip():
    from mclab.spaces import point_from_json, point_to_json

    vec = (F(1, 2), -2, F(3, 7))
    assert point_from_json(point_to_json(vec)) == vec
    fn = PiecewisePoly((0, F(1, 4), 1), ((2, F(-8, 1), 0), (F(-2, 3), F(8, 3), 0)))
    back = point_from_json(point_to_json(fn))
    assert back.breakpoints == fn.breakpoints
    assert back.pieces == fn.pieces
