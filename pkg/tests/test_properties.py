from __future__ import annotations

import math
from fractions import Fraction as F

import pytest

from mclab import (
    Box,
    MembershipError,
    MidConvention,
    SamplePlan,
    Singleton,
    UniqueMidpointUndefined,
    check_betweenness,
    check_diameter_strict,
    check_homogeneity,
    check_menger_convex,
    check_property,
    distance,
    estimate_uniform_modulus,
    hausdorff,
    midpoint_set,
    vector_space,
)

FX = MidConvention.FROM_X
FY = MidConvention.FROM_Y


class TestMengerConvexity:
    def test_taxicab_exact_space_holds(self):
        space = vector_space(4, 1, exact=True)
        verdict = check_menger_convex(space, SamplePlan(count=1000, seed=3))
        assert verdict.holds
        assert verdict.max_slack == 0
        assert verdict.plan["seed"] == 3

    def test_sup_plane_holds(self):
        space = vector_space(2, math.inf)
        verdict = check_menger_convex(space, SamplePlan(count=300, seed=4))
        assert verdict.holds

    def test_integer_carrier_fails_with_witness(self):
        space = vector_space(1, 1, exact=True)
        carrier = [(k,) for k in range(-3, 4)]
        verdict = check_menger_convex(
            space, SamplePlan(count=100, seed=5), carrier_points=carrier
        )
        assert verdict.fails
        w = verdict.witness
        # the witness really has no carrier point on both spheres
        r1, r2 = w["radius_x"], w["radius_y"]
        for z in carrier:
            if z in (w["x"], w["y"]):
                continue
            on_both = (
                distance(space, z, w["x"]) == r1 and distance(space, z, w["y"]) == r2
            )
            assert not on_both


class TestPropertyA:
    def test_holds_on_strictly_convex_spaces(self):
        for p in (1.5, 2, 3):
            space = vector_space(3, p)
            verdict = check_property(space, "A", plan=SamplePlan(count=300, seed=6))
            assert verdict.holds, p
            assert verdict.max_slack <= 1e-6

    def test_fails_on_taxicab_with_exact_sphere_witnesses(self):
        space = vector_space(5, 1, exact=True)
        x = (F(0),) * 5
        y = (F(1, 2), F(1, 2), F(1, 2), F(1, 2), F(0))
        verdict = check_property(
            space,
            "A",
            conv=FX,
            plan=SamplePlan(count=1, anchor_x=x, anchor_y=y, t_values=(F(1, 2),)),
        )
        assert verdict.fails
        w = verdict.witness
        assert w["point_1"] != w["point_2"]
        # all four sphere equalities hold exactly
        assert w["distance_to_x_1"] == w["distance_to_x_2"] == 1
        assert w["distance_to_y_1"] == w["distance_to_y_2"] == 1
        assert distance(space, w["point_1"], w["point_2"]) == w["distance"]

    def test_fails_on_sup_metric_with_unit_separated_witnesses(self):
        space = vector_space(3, math.inf, exact=True)
        verdict = check_property(
            space,
            "A",
            conv=FX,
            plan=SamplePlan(
                count=1,
                anchor_x=(0, 0, 0),
                anchor_y=(2, 0, 0),
                t_values=(F(1, 4),),
            ),
        )
        assert verdict.fails
        w = verdict.witness
        assert w["distance"] == 1
        assert w["distance_to_x_1"] == w["distance_to_x_2"] == F(1, 2)
        assert w["distance_to_y_1"] == w["distance_to_y_2"] == F(3, 2)


class TestPropertyB:
    @pytest.mark.parametrize("p", [1.5, 2, 3])
    def test_contraction_ratio_bounded_by_t(self, p):
        space = vector_space(3, p)
        verdict = check_property(space, "B", plan=SamplePlan(count=1000, seed=7))
        assert verdict.holds
        assert verdict.max_slack <= 1e-9
        assert verdict.witness["equality_attained"]

    def test_refused_without_unique_midpoints(self):
        space = vector_space(3, math.inf)
        verdict = check_property(space, "B", plan=SamplePlan(count=10))
        assert verdict.refused
        assert "unique midpoint" in verdict.reason


class TestPropertyBPrime:
    def test_holds_under_the_midpoint_consistent_convention(self):
        space = vector_space(2, 2)
        verdict = check_property(
            space, "Bprime", conv=FY, plan=SamplePlan(count=1000, seed=8)
        )
        assert verdict.holds
        assert verdict.max_slack <= 1e-9

    def test_literal_convention_fails_below_one_half(self):
        space = vector_space(2, 2)
        verdict = check_property(
            space, "Bprime", conv=FX, plan=SamplePlan(count=1000, seed=8)
        )
        assert verdict.fails
        w = verdict.witness
        assert w["t"] < 0.5
        assert w["ratio"] == pytest.approx(1 - w["t"], abs=1e-6)
        # certificate re-evaluates through the public operations
        cx = midpoint_set(space, w["x"], w["y"], w["t"], FX)
        cz = midpoint_set(space, w["z"], w["y"], w["t"], FX)
        assert hausdorff(space, cx, cz).value == pytest.approx(w["lhs"], abs=1e-12)
        assert w["t"] * distance(space, w["x"], w["z"]) == pytest.approx(
            w["rhs"], abs=1e-12
        )


class TestPropertyBDoublePrime:
    def test_lifted_union_contraction_on_finite_sets(self):
        space = vector_space(2, 2)
        verdict = check_property(
            space,
            "Bdoubleprime",
            conv=FY,
            plan=SamplePlan(count=1000, seed=9),
            max_set_size=8,
        )
        assert verdict.holds
        assert verdict.max_slack <= 1e-9


class TestPropertyC:
    def test_euclidean_segments_are_convex(self):
        space = vector_space(3, 2)
        verdict = check_property(space, "C", plan=SamplePlan(count=500, seed=10))
        assert verdict.holds

    def test_sup_segment_is_not_convex(self):
        space = vector_space(3, math.inf)
        verdict = check_property(
            space,
            "C",
            plan=SamplePlan(
                count=3000, seed=10, anchor_x=(0.0, 0.0, 0.0), anchor_y=(2.0, 0.0, 0.0)
            ),
        )
        assert verdict.fails
        w = verdict.witness
        # the witness midpoint leaves the segment: re-evaluate both sides
        total = distance(space, w["x"], w["point"]) + distance(
            space, w["point"], w["y"]
        )
        assert total == pytest.approx(w["distance_sum"], abs=1e-12)
        assert total > w["segment_length"] + 1e-9


class TestBetweenness:
    def test_sup_counterexample_two_versus_three_halves(self):
        space = vector_space(5, math.inf, exact=True)
        x = (0, 0, 0, 0, 0)
        y = (2, 0, 0, 0, 0)
        p1 = (F(1, 2), 0, 0, 0, 0)
        p2 = (1, 1, 1, 1, 1)
        verdict = check_betweenness(space, x, y, F(1, 4), F(1, 2), p1, p2, conv=FX)
        assert verdict.fails
        assert verdict.witness["sum_via_p2"] == 2
        assert verdict.witness["direct"] == F(3, 2)

    def test_euclidean_midpoints_are_collinear(self):
        space = vector_space(3, 2)
        x, y = (0.0, 0.0, 0.0), (2.0, 0.0, 0.0)
        p1 = midpoint_set(space, x, y, 0.25, FX).point
        p2 = midpoint_set(space, x, y, 0.5, FX).point
        verdict = check_betweenness(space, x, y, 0.25, 0.5, p1, p2, conv=FX)
        assert verdict.holds

    def test_taxicab_staircase_witnesses_recorded_exactly(self):
        space = vector_space(4, 1, exact=True)
        x = (F(0),) * 4
        y = (F(1, 2),) * 4
        p1 = (F(0), F(1, 2), F(1, 4), F(1, 4))  # on both t=1/2 spheres
        p2 = (F(1, 2), F(1, 2), F(1, 2), F(0))  # forward staircase at t=3/4
        verdict = check_betweenness(space, x, y, F(1, 2), F(3, 4), p1, p2, conv=FX)
        w = verdict.witness
        assert w["sum_via_p2"] == distance(space, p1, p2) + distance(space, p2, y)
        assert w["direct"] == distance(space, p1, y)
        assert verdict.fails
        assert (w["sum_via_p2"], w["direct"]) == (F(3, 2), 1)

    def test_membership_precondition_enforced(self):
        space = vector_space(3, 2)
        x, y = (0.0, 0.0, 0.0), (2.0, 0.0, 0.0)
        with pytest.raises(MembershipError):
            check_betweenness(
                space, x, y, 0.25, 0.5, (0.9, 0.9, 0.9), (1.0, 0.0, 0.0), conv=FX
            )


class TestHomogeneity:
    @pytest.mark.parametrize("p", [1, 1.5, 2, 3, math.inf])
    def test_norm_metrics_scale_exactly(self, p):
        space = vector_space(2, p)
        verdict = check_homogeneity(space, SamplePlan(count=1000, seed=12), tol=1e-12)
        assert verdict.holds

    def test_bounded_metric_fails_with_the_tripling_witness(self):
        space = vector_space(2, 2)
        verdict = check_homogeneity(space, SamplePlan(count=100, seed=12), cap=1)
        assert verdict.fails
        w = verdict.witness
        assert w["alpha"] == 3 and w["x"] == (1, 0)
        assert w["lhs"] == 1 and w["rhs"] == 3

    def test_zero_scalar_gives_exact_equality(self):
        space = vector_space(2, 2)
        # probe list starts with alpha = 0; a single-sample run covers it
        verdict = check_homogeneity(space, SamplePlan(count=1, seed=1), tol=0)
        assert verdict.samples >= 1


class TestDiameterStrict:
    def test_box_pair_ratio_is_one_half_exactly(self):
        space = vector_space(2, math.inf, exact=True)
        A = Box((0, 0), (2, 2))
        C = Box((F(1, 2), F(1, 2)), (F(3, 2), F(3, 2)))
        verdict = check_diameter_strict(space, A, C)
        assert verdict.holds
        assert verdict.witness["k_hat"] == F(1, 2)

    def test_singleton_inside_has_zero_ratio(self):
        space = vector_space(2, math.inf, exact=True)
        A = Box((0, 0), (2, 2))
        verdict = check_diameter_strict(space, A, Singleton((1, 1)))
        assert verdict.holds
        assert verdict.witness["k_hat"] == 0

    def test_touching_the_boundary_is_rejected(self):
        space = vector_space(2, math.inf, exact=True)
        A = Box((0, 0), (2, 2))
        with pytest.raises(MembershipError):
            check_diameter_strict(space, A, A)


class TestUniformModulus:
    def test_euclidean_modulus_matches_the_closed_form(self):
        space = vector_space(2, 2)
        got = estimate_uniform_modulus(space, [0.5, 1.0, 1.5], budget=90_000)
        for eps, delta in got:
            oracle = 1 - math.sqrt(1 - eps * eps / 4)
            assert delta == pytest.approx(oracle, abs=1e-3)

    def test_extreme_separation_forces_the_center(self):
        space = vector_space(2, 2)
        ((_, delta),) = estimate_uniform_modulus(space, [2.0], budget=5000)
        assert delta == pytest.approx(1.0, abs=1e-3)

    def test_vanishing_separation_gives_vanishing_modulus(self):
        space = vector_space(2, 2)
        ((_, delta),) = estimate_uniform_modulus(space, [1e-3], budget=5000)
        assert 0 <= delta < 1e-3

    def test_refused_without_unique_midpoints(self):
        with pytest.raises(UniqueMidpointUndefined):
            estimate_uniform_modulus(vector_space(2, 1), [1.0])


class TestCertificateSelfVerification:
    def test_sup_metric_bprime_witness_re_evaluates_exactly(self):
        space = vector_space(2, math.inf, exact=True)
        verdict = check_property(
            space, "Bprime", conv=FY, plan=SamplePlan(count=50, seed=2)
        )
        if not verdict.fails:
            pytest.skip("no violation sampled at this plan")
        w = verdict.witness
        cx = midpoint_set(space, w["x"], w["y"], w["t"], FY)
        cz = midpoint_set(space, w["z"], w["y"], w["t"], FY)
        assert hausdorff(space, cx, cz).value == w["lhs"]
        assert w["t"] * distance(space, w["x"], w["z"]) == w["rhs"]
        assert w["lhs"] > w["rhs"]

    def test_property_a_witnesses_re_evaluate_exactly(self):
        space = vector_space(3, math.inf, exact=True)
        verdict = check_property(space, "A", conv=FX, plan=SamplePlan(count=20, seed=2))
        assert verdict.fails
        w = verdict.witness
        assert distance(space, w["point_1"], w["point_2"]) == w["distance"]
        rep = midpoint_set(space, w["x"], w["y"], w["t"], FX)
        assert rep.contains(w["point_1"]) and rep.contains(w["point_2"])
