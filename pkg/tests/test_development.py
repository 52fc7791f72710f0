"""Tests for profile development and its convexity/support checks."""

import math

import numpy as np
import pytest

from curvcomp.development import (
    DistanceProfile,
    develop,
    is_convex_development,
    local_convexity_check,
    support_inequality_check,
)
from curvcomp.errors import InvalidInput, NumericalInfeasibility
from curvcomp.model_space import (
    Curvature,
    ModelPoint,
    dist_k,
    exp_polar,
    geodesic_point,
    model_origin,
)

K1 = Curvature(1.0)
K0 = Curvature(0.0)
KM1 = Curvature(-1.0)


def flat_pt(x, y):
    return ModelPoint(K0, (x, y))


def geodesic_profile(curv, pole_offset, closest, length, n):
    """Profile of distances from a pole to a unit-speed model geodesic.

    The pole sits at distance `closest` from the geodesic (perpendicular
    foot at arclength `pole_offset`).
    """
    o = model_origin(curv)
    a = exp_polar(o, 0.0, 0.0)
    # geodesic runs along bearing 0 through the origin; pole on bearing pi/2
    pole = exp_polar(o, closest, math.pi / 2)
    s = np.linspace(0, length, n + 1)
    d = []
    for t in s:
        x = exp_polar(o, abs(t - pole_offset), 0.0 if t >= pole_offset else math.pi)
        d.append(dist_k(curv, pole, x))
    return DistanceProfile(tuple(s), tuple(d), curv), pole


class TestProfileValidation:
    def test_lipschitz_violation_rejected(self):
        with pytest.raises(InvalidInput):
            DistanceProfile((0.0, 0.1, 0.2), (1.0, 1.5, 1.6), K0)

    def test_negative_distance_rejected(self):
        with pytest.raises(InvalidInput):
            DistanceProfile((0.0, 1.0), (0.5, -0.2), K0)

    def test_diameter_regime_rejected_for_positive_k(self):
        with pytest.raises(InvalidInput):
            DistanceProfile((0.0, 1.0), (3.0, math.pi), K1)

    def test_csv_roundtrip(self, tmp_path):
        prof = DistanceProfile.from_function(K0, lambda s: 1.0 + 0.3 * s, 2.0, 20)
        path = tmp_path / "profile.csv"
        prof.to_csv(path)
        back = DistanceProfile.from_csv(path, K0)
        assert back.s == prof.s and back.d == prof.d


class TestDevelop:
    def test_radial_geodesic_collinear(self):
        prof = DistanceProfile.from_function(K0, lambda s: 0.5 + s, 2.0, 40)
        dc = develop(prof, flat_pt(0, 0))
        assert all(abs(phi) < 1e-12 for phi in dc.phi)
        xs = np.array([p.coords for p in dc.points])
        assert np.max(np.abs(xs[:, 1])) < 1e-12

    def test_constant_profile_circle_increments(self):
        # closed form: pole-angle increment 2*arcsin(ds / (2 r)) per step
        r, length, n = 1.5, 2.0, 32
        prof = DistanceProfile.from_function(K0, lambda s: r, length, n)
        dc = develop(prof, flat_pt(0, 0))
        ds = length / n
        expected = 2.0 * math.asin(ds / (2.0 * r))
        for i in range(n):
            assert dc.phi[i] - dc.phi[i + 1] == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("k", [1.0, 0.0, -1.0])
    def test_radial_and_chord_invariants(self, k):
        curv = Curvature(k)
        prof, pole = geodesic_profile(curv, 0.7, 0.4, 1.6, 50)
        dc = develop(prof, pole)
        for i, p in enumerate(dc.points):
            assert dist_k(curv, pole, p) == pytest.approx(prof.d[i], abs=1e-9)
        for i in range(len(dc.points) - 1):
            step = prof.s[i + 1] - prof.s[i]
            assert dist_k(curv, dc.points[i], dc.points[i + 1]) == pytest.approx(
                step, abs=1e-9
            )

    def test_pole_angle_monotone(self):
        prof, pole = geodesic_profile(K0, 0.9, 0.3, 2.0, 60)
        dc = develop(prof, pole)
        assert all(a >= b - 1e-12 for a, b in zip(dc.phi, dc.phi[1:]))

    def test_planar_geodesic_develops_to_itself(self):
        # in the plane, the development of a straight line's profile is a
        # congruent straight line
        prof, pole = geodesic_profile(K0, 0.8, 0.5, 2.0, 40)
        dc = develop(prof, pole)
        chords = [
            dist_k(K0, dc.points[0], p) for p in dc.points
        ]
        for i, c in enumerate(chords):
            assert c == pytest.approx(prof.s[i], abs=1e-9)

    def test_through_pole_straight(self):
        prof = DistanceProfile.from_function(K0, lambda s: abs(s - 1.0), 2.0, 20)
        dc = develop(prof, flat_pt(0, 0))
        xs = np.array([p.coords for p in dc.points])
        assert np.max(np.abs(xs[:, 1])) < 1e-12
        # end points on opposite sides of the pole
        assert xs[0, 0] * xs[-1, 0] < 0

    def test_rotation_invariance(self):
        prof, pole = geodesic_profile(K1, 0.5, 0.4, 1.2, 30)
        o = model_origin(K1)
        other_pole = exp_polar(o, 0.9, -1.1)
        dc1 = develop(prof, pole)
        dc2 = develop(prof, other_pole)
        for i in range(0, 31, 6):
            for j in range(0, 31, 6):
                assert dist_k(K1, dc1.points[i], dc1.points[j]) == pytest.approx(
                    dist_k(K1, dc2.points[i], dc2.points[j]), abs=1e-9
                )

    def test_refinement_consistency(self):
        prof_h, pole = geodesic_profile(K0, 0.6, 0.5, 1.5, 64)
        prof_h2, _ = geodesic_profile(K0, 0.6, 0.5, 1.5, 128)
        end_h = develop(prof_h, pole).points[-1]
        end_h2 = develop(prof_h2, pole).points[-1]
        assert dist_k(K0, end_h, end_h2) < 1.5 / 64

    def test_unrealizable_triangle_names_sample(self):
        # points too close to the pole for the chord to be realizable
        with pytest.raises(NumericalInfeasibility) as err:
            develop(DistanceProfile((0.0, 1.0), (0.1, 0.1), K0), flat_pt(0, 0))
        assert err.value.index == 1


class TestConvexity:
    def test_circular_arc_convex(self):
        prof = DistanceProfile.from_function(K0, lambda s: 1.0, 3.0, 48)
        dc = develop(prof, flat_pt(0, 0))
        rep = is_convex_development(dc)
        assert rep.convex and rep.endpoint_condition and not rep.violations

    def test_single_segment_convex(self):
        prof = DistanceProfile((0.0, 0.5), (1.0, 1.2), K0)
        dc = develop(prof, flat_pt(0, 0))
        assert is_convex_development(dc).convex

    def test_wiggle_profile_not_convex(self):
        prof = DistanceProfile.from_function(
            K0, lambda s: 1.0 + 0.1 * math.sin(2 * math.pi * s), 1.0, 64
        )
        dc = develop(prof, flat_pt(0, 0))
        rep = is_convex_development(dc)
        assert not rep.convex
        assert rep.violations

    def test_wrapping_development_flagged(self):
        # constant radius, length far beyond the full circle
        prof = DistanceProfile.from_function(K0, lambda s: 0.4, 4.0, 128)
        dc = develop(prof, flat_pt(0, 0))
        rep = is_convex_development(dc)
        assert rep.wraps_pole and not rep.convex

    def test_local_convexity_of_convex_curve(self):
        prof = DistanceProfile.from_function(K0, lambda s: 1.0, 2.0, 40)
        dc = develop(prof, flat_pt(0, 0))
        for i in (0, 10, 20, 39):
            assert local_convexity_check(dc, i, 0.3)

    def test_local_convexity_detects_inflection(self):
        prof = DistanceProfile.from_function(
            K0, lambda s: 1.0 + 0.1 * math.sin(2 * math.pi * s), 1.0, 64
        )
        dc = develop(prof, flat_pt(0, 0))
        results = [local_convexity_check(dc, i, 0.12) for i in range(4, 61, 4)]
        assert not all(results)

    def test_single_segment_window(self):
        prof = DistanceProfile.from_function(K0, lambda s: 1.0 + 0.2 * s, 1.0, 10)
        dc = develop(prof, flat_pt(0, 0))
        assert local_convexity_check(dc, 5, 0.1000001)

    def test_empty_window_rejected(self):
        prof = DistanceProfile.from_function(K0, lambda s: 1.0, 1.0, 10)
        dc = develop(prof, flat_pt(0, 0))
        with pytest.raises(InvalidInput):
            local_convexity_check(dc, 3, -0.1)


class TestSupportInequality:
    @pytest.mark.parametrize("k", [1.0, 0.0, -1.0])
    def test_model_geodesic_equality(self, k):
        curv = Curvature(k)
        prof, _ = geodesic_profile(curv, 0.8, 0.5, 1.6, 160)
        rep = support_inequality_check(prof)
        assert rep.passed
        # equality case: the raw excess is pure discretization error
        assert abs(rep.max_excess) < 1e-3

    def test_sphere_profile_against_flat_bound(self):
        # distances measured on the unit sphere, tested against k = 0:
        # curvature 1 >= 0, the inequality holds strictly
        d0 = 0.5
        prof = DistanceProfile.from_function(
            K0, lambda s: math.acos(math.cos(d0) * math.cos(s)), 1.2, 120
        )
        rep = support_inequality_check(prof)
        assert rep.passed
        assert rep.max_excess < -1e-3

    def test_hyperbolic_profile_violates_flat_bound(self):
        d0 = 1.0
        prof = DistanceProfile.from_function(
            K0, lambda s: math.acosh(math.cosh(d0) * math.cosh(s)), 1.2, 120
        )
        rep = support_inequality_check(prof)
        assert not rep.passed
        assert rep.max_excess > 0.1

    def test_too_few_samples_rejected(self):
        with pytest.raises(InvalidInput):
            support_inequality_check(DistanceProfile((0.0, 1.0), (1.0, 1.0), K0))
