"""Tests for the constant-curvature trig kernel."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvcomp.errors import AmbiguousGeodesic, InvalidInput
from curvcomp.model_space import (
    Curvature,
    ModelPoint,
    ModelSegment,
    ModelTriangle,
    alexandrov_lemma,
    angle_at,
    angle_from_sss,
    convex_polygon_perimeter_check,
    dist_k,
    exp_polar,
    geodesic_point,
    model_origin,
    place_sas,
    rho_k,
    side_from_sas,
    sum_dist_monotone_check,
    to_polar,
)

K1 = Curvature(1.0)
K0 = Curvature(0.0)
KM1 = Curvature(-1.0)


def pt(curv, *coords):
    return ModelPoint(curv, coords)


# --- independent scalar oracles (law of cosines evaluated directly) --------

def sph_side(a, b, g):
    return math.acos(math.cos(a) * math.cos(b) + math.sin(a) * math.sin(b) * math.cos(g))


def hyp_side(a, b, g):
    return math.acosh(math.cosh(a) * math.cosh(b) - math.sinh(a) * math.sinh(b) * math.cos(g))


class TestDistance:
    def test_flat_3_4_5(self):
        assert dist_k(K0, pt(K0, 0, 0), pt(K0, 3, 4)) == pytest.approx(5.0, abs=1e-12)

    def test_sphere_quarter_circle(self):
        north = pt(K1, 0, 0, 1)
        equator = pt(K1, 1, 0, 0)
        assert dist_k(K1, north, equator) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_hyperbolic_radial(self):
        o = model_origin(KM1)
        x = exp_polar(o, 1.3, 0.4)
        assert dist_k(KM1, o, x) == pytest.approx(1.3, abs=1e-12)

    def test_symmetry_and_identity(self):
        rng = np.random.default_rng(3)
        for curv in (K1, K0, KM1):
            o = model_origin(curv)
            for _ in range(50):
                p = exp_polar(o, rng.uniform(0, 1.5), rng.uniform(-math.pi, math.pi))
                q = exp_polar(o, rng.uniform(0, 1.5), rng.uniform(-math.pi, math.pi))
                assert dist_k(curv, p, q) == pytest.approx(dist_k(curv, q, p), abs=1e-12)
                assert dist_k(curv, p, p) <= 1e-12

    def test_curvature_mismatch_rejected(self):
        with pytest.raises(InvalidInput):
            dist_k(K1, pt(K1, 0, 0, 1), model_origin(KM1))


class TestSideFromSas:
    def test_pythagoras(self):
        assert side_from_sas(K0, 3, 4, math.pi / 2) == pytest.approx(5.0, abs=1e-12)

    def test_octant(self):
        c = side_from_sas(K1, math.pi / 2, math.pi / 2, math.pi / 2)
        assert c == pytest.approx(math.pi / 2, abs=1e-12)

    def test_hyperbolic_pythagoras(self):
        # oracle: cosh c = cosh a cosh b
        expected = math.acosh(math.cosh(1.0) ** 2)
        assert expected == pytest.approx(1.513374006596504, abs=1e-12)
        assert side_from_sas(KM1, 1, 1, math.pi / 2) == pytest.approx(expected, abs=1e-11)

    def test_matches_law_of_cosines(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            a, b = rng.uniform(0.05, 1.5, size=2)
            g = rng.uniform(0.05, math.pi - 0.05)
            assert side_from_sas(K1, a, b, g) == pytest.approx(sph_side(a, b, g), abs=1e-10)
            assert side_from_sas(KM1, a, b, g) == pytest.approx(hyp_side(a, b, g), abs=1e-10)

    def test_flat_limit_is_first_order_in_k(self):
        a, b, g = 0.7, 1.1, 1.0
        c0 = side_from_sas(K0, a, b, g)
        errs = []
        for k in (1e-4, 1e-6):
            errs.append(abs(side_from_sas(Curvature(k), a, b, g) - c0) / k)
        # error / k stays bounded (O(k) convergence)
        assert errs[0] < 1.0 and errs[1] < 1.0

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidInput):
            side_from_sas(K1, 4.0, 0.5, 1.0)  # side beyond pi/sqrt(k)
        with pytest.raises(InvalidInput):
            side_from_sas(K0, 1.0, 1.0, 4.0)  # angle beyond pi


class TestAngleFromSss:
    def test_equilateral(self):
        assert angle_from_sss(K0, 1, 1, 1) == pytest.approx(math.pi / 3, abs=1e-12)

    def test_octant(self):
        g = angle_from_sss(K1, math.pi / 2, math.pi / 2, math.pi / 2)
        assert g == pytest.approx(math.pi / 2, abs=1e-12)

    def test_right_triangle(self):
        assert angle_from_sss(K0, 3, 4, 5) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_degenerate_straight(self):
        assert angle_from_sss(K0, 1, 2, 3) == pytest.approx(math.pi, abs=1e-9)
        assert angle_from_sss(K0, 1, 2, 1) == pytest.approx(0.0, abs=1e-7)

    def test_triangle_inequality_violation_rejected(self):
        with pytest.raises(InvalidInput):
            angle_from_sss(K0, 1, 1, 2.5)

    @given(
        st.sampled_from([1.0, 0.0, -1.0]),
        st.floats(min_value=0.05, max_value=1.4),
        st.floats(min_value=0.05, max_value=1.4),
        st.floats(min_value=0.01, max_value=math.pi - 0.01),
    )
    @settings(max_examples=300, deadline=None)
    def test_sas_sss_roundtrip(self, k, a, b, g):
        curv = Curvature(k)
        c = side_from_sas(curv, a, b, g)
        assert angle_from_sss(curv, a, b, c) == pytest.approx(g, abs=1e-9)

    def test_monotone_in_opposite_side(self):
        for curv in (K1, K0, KM1):
            a, b = 0.8, 1.1
            cs = np.linspace(0.4, 1.8, 40)
            angles = [angle_from_sss(curv, a, b, c) for c in cs]
            assert all(x < y for x, y in zip(angles, angles[1:]))


class TestRho:
    def test_reference_values(self):
        assert rho_k(K0, 2.0) == pytest.approx(2.0, abs=1e-12)
        assert rho_k(K1, math.pi / 2) == pytest.approx(1.0, abs=1e-12)
        assert rho_k(KM1, 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_hessian_identity_along_model_geodesics(self):
        # f = rho_k(dist(p, sigma(t))) satisfies f'' = 1 - k f exactly;
        # central differences must match to O(h^2).
        h = 1e-3
        for curv in (K1, K0, KM1):
            o = model_origin(curv)
            pole = exp_polar(o, 0.9, 2.0)
            a = exp_polar(o, 0.8, -0.3)
            b = exp_polar(o, 0.7, 1.4)
            L = dist_k(curv, a, b)
            ts = np.arange(0.3, L - 0.3, h)
            f = np.array(
                [rho_k(curv, dist_k(curv, pole, geodesic_point(curv, a, b, t))) for t in ts]
            )
            d2 = (f[2:] - 2 * f[1:-1] + f[:-2]) / h**2
            resid = d2 - (1.0 - curv.k * f[1:-1])
            assert np.max(np.abs(resid)) < 5e-6


class TestGeodesicPoint:
    def test_endpoint(self):
        a, b = pt(K0, 0, 0), pt(K0, 2, 0)
        assert geodesic_point(K0, a, b, 0.0).coords == a.coords

    def test_flat_midpoint(self):
        m = geodesic_point(K0, pt(K0, 0, 0), pt(K0, 2, 0), 1.0)
        assert m.coords == pytest.approx((1.0, 0.0), abs=1e-12)

    def test_sphere_slerp_oracle(self):
        north = pt(K1, 0, 0, 1)
        equator = pt(K1, 1, 0, 0)
        m = geodesic_point(K1, north, equator, math.pi / 4)
        s = math.sin(math.pi / 4)
        assert m.coords == pytest.approx((s, 0.0, math.cos(math.pi / 4)), abs=1e-12)

    def test_split_distances(self):
        rng = np.random.default_rng(11)
        for curv in (K1, K0, KM1):
            o = model_origin(curv)
            for _ in range(25):
                p = exp_polar(o, rng.uniform(0.1, 1.2), rng.uniform(-3, 3))
                q = exp_polar(o, rng.uniform(0.1, 1.2), rng.uniform(-3, 3))
                d = dist_k(curv, p, q)
                if d < 1e-6:
                    continue
                t = rng.uniform(0, d)
                x = geodesic_point(curv, p, q, t)
                assert dist_k(curv, p, x) == pytest.approx(t, abs=1e-10)
                assert dist_k(curv, x, q) == pytest.approx(d - t, abs=1e-10)

    def test_antipodal_rejected(self):
        with pytest.raises(AmbiguousGeodesic):
            geodesic_point(K1, pt(K1, 0, 0, 1), pt(K1, 0, 0, -1), 1.0)


class TestPlaceSas:
    def test_collinear_toward_pole(self):
        pole, foot = pt(K0, 0, 0), pt(K0, 2, 0)
        x = place_sas(K0, pole, foot, 0.5, 0.0, "left")
        assert x.coords == pytest.approx((1.5, 0.0), abs=1e-12)

    def test_collinear_prolongation(self):
        pole, foot = pt(K0, 0, 0), pt(K0, 2, 0)
        x = place_sas(K0, pole, foot, 0.5, math.pi, "left")
        assert x.coords == pytest.approx((2.5, 0.0), abs=1e-12)

    def test_right_angle_left(self):
        x = place_sas(K0, pt(K0, 0, 0), pt(K0, 1, 0), 1.0, math.pi / 2, "left")
        assert x.coords == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_place_then_measure(self):
        rng = np.random.default_rng(13)
        for curv in (K1, K0, KM1):
            o = model_origin(curv)
            for _ in range(40):
                pole = exp_polar(o, rng.uniform(0, 1.0), rng.uniform(-3, 3))
                foot = exp_polar(o, rng.uniform(0.2, 1.2), rng.uniform(-3, 3))
                if dist_k(curv, pole, foot) < 0.05:
                    continue
                r = rng.uniform(0.05, 1.2)
                ang = rng.uniform(0.05, math.pi - 0.05)
                side = "left" if rng.uniform() < 0.5 else "right"
                x = place_sas(curv, pole, foot, r, ang, side)
                assert dist_k(curv, foot, x) == pytest.approx(r, abs=1e-9)
                assert angle_at(foot, pole, x) == pytest.approx(ang, abs=1e-9)

    def test_degenerate_pole_foot_rejected(self):
        with pytest.raises(InvalidInput):
            place_sas(K0, pt(K0, 0, 0), pt(K0, 0, 0), 1.0, 1.0)


class TestPolarRoundtrip:
    def test_roundtrip(self):
        rng = np.random.default_rng(17)
        for curv in (K1, K0, KM1):
            o = model_origin(curv)
            pole = exp_polar(o, 0.8, 0.5)
            for _ in range(30):
                r = rng.uniform(0.01, 1.5)
                phi = rng.uniform(-math.pi + 0.01, math.pi - 0.01)
                x = exp_polar(pole, r, phi)
                r2, phi2 = to_polar(pole, x)
                assert r2 == pytest.approx(r, abs=1e-10)
                assert phi2 == pytest.approx(phi, abs=1e-9)


class TestPerimeterBound:
    def test_great_circle_equality(self):
        # two half great circles degenerate to a single great circle
        pts = [pt(K1, 1, 0, 0), pt(K1, 0, 1, 0), pt(K1, -1, 0, 0), pt(K1, 0, -1, 0)]
        rep = convex_polygon_perimeter_check(K1, pts)
        assert rep.perimeter == pytest.approx(2 * math.pi, abs=1e-12)
        assert rep.equality_flag and rep.bound_satisfied

    def test_octant_triangle(self):
        pts = [pt(K1, 1, 0, 0), pt(K1, 0, 1, 0), pt(K1, 0, 0, 1)]
        rep = convex_polygon_perimeter_check(K1, pts)
        assert rep.perimeter == pytest.approx(3 * math.pi / 2, abs=1e-12)
        assert rep.bound_satisfied and not rep.equality_flag

    def test_random_convex_polygons(self, spherical_polygon_factory):
        rng = np.random.default_rng(23)
        for _ in range(100):
            poly = spherical_polygon_factory(rng)
            rep = convex_polygon_perimeter_check(K1, poly)
            assert rep.bound_satisfied

    def test_nonconvex_rejected(self):
        # a dented quadrilateral near the north pole
        o = model_origin(K1)
        pts = [
            exp_polar(o, 0.5, 0.0),
            exp_polar(o, 0.5, 1.5),
            exp_polar(o, 0.05, 2.2),  # dent
            exp_polar(o, 0.5, 3.0),
        ]
        with pytest.raises(InvalidInput):
            convex_polygon_perimeter_check(K1, pts)


class TestSumDistMonotone:
    def test_flat_vertical_ray_closed_form(self):
        p1, p2, q = pt(K0, -1, 0), pt(K0, 1, 0), pt(K0, 0, 0)
        ray = ModelSegment.between(K0, q, pt(K0, 0, 2))
        rep = sum_dist_monotone_check(K0, p1, p2, q, ray, n=50)
        assert rep.monotone
        for t, f in zip(rep.t, rep.total):
            assert f == pytest.approx(2 * math.hypot(1, t), abs=1e-10)
        assert rep.total[0] == pytest.approx(dist_k(K0, p1, p2), abs=1e-12)

    def test_spherical_configuration(self):
        o = model_origin(K1)
        p1 = exp_polar(o, 0.9, 0.0)
        p2 = exp_polar(o, 0.9, math.pi)
        q = geodesic_point(K1, p1, p2, 0.7)
        ray = ModelSegment.between(K1, q, exp_polar(q, 1.2, 2.0))
        rep = sum_dist_monotone_check(K1, p1, p2, q, ray, n=80)
        assert rep.monotone

    def test_q_off_segment_rejected(self):
        p1, p2 = pt(K0, -1, 0), pt(K0, 1, 0)
        q = pt(K0, 0, 0.5)
        ray = ModelSegment.between(K0, q, pt(K0, 0, 2))
        with pytest.raises(InvalidInput):
            sum_dist_monotone_check(K0, p1, p2, q, ray)


def _sample_gluing(rng, curv):
    """Random realizable two-triangle configuration joined along [pq]."""
    while True:
        pq = rng.uniform(0.2, 1.0)
        qr = rng.uniform(0.1, 1.0)
        qs = rng.uniform(0.1, 1.0)
        t1 = rng.uniform(0.1, math.pi - 0.1)
        t2 = rng.uniform(0.1, math.pi - 0.1)
        pr = side_from_sas(curv, pq, qr, t1)
        ps = side_from_sas(curv, pq, qs, t2)
        bc = qr + qs
        if pr + ps <= bc + 1e-9 or abs(pr - ps) >= bc - 1e-9:
            continue
        if curv.sign > 0 and pr + ps + bc >= 2 * math.pi - 0.1:
            continue
        if min(pr, ps) < 0.02:
            continue
        return pq, pr, ps, qr, qs


class TestGluingLemma:
    def test_collinear_degenerate(self):
        # r, q, s on one geodesic: angle sum exactly pi, all comparisons equal
        pq, qr, qs = 1.0, 0.6, 0.8
        pr = side_from_sas(K0, pq, qr, math.pi / 3)
        ps = side_from_sas(K0, pq, qs, math.pi - math.pi / 3)
        rep = alexandrov_lemma(K0, pq, pr, ps, qr, qs)
        assert rep.angle_sum_at_q == pytest.approx(math.pi, abs=1e-9)
        assert rep.angle_prq == pytest.approx(rep.comparison_angle_r, abs=1e-9)
        assert rep.angle_psq == pytest.approx(rep.comparison_angle_s, abs=1e-9)
        assert rep.consistent

    @pytest.mark.parametrize("k", [0.0, 1.0, -1.0])
    def test_random_configurations(self, k):
        curv = Curvature(k)
        rng = np.random.default_rng(29)
        for _ in range(300):
            pq, pr, ps, qr, qs = _sample_gluing(rng, curv)
            rep = alexandrov_lemma(curv, pq, pr, ps, qr, qs)
            assert rep.consistent

    def test_unrealizable_rejected(self):
        with pytest.raises(InvalidInput):
            alexandrov_lemma(K0, 1.0, 0.1, 0.1, 2.0, 2.0)


class TestModelTriangle:
    def test_from_sides_realizes_lengths(self):
        for curv in (K1, K0, KM1):
            tri = ModelTriangle.from_sides(curv, 0.9, 0.7, 1.1)
            v0, v1, v2 = tri.vertices
            assert dist_k(curv, v1, v2) == pytest.approx(0.9, abs=1e-10)
            assert dist_k(curv, v0, v2) == pytest.approx(0.7, abs=1e-10)
            assert dist_k(curv, v0, v1) == pytest.approx(1.1, abs=1e-10)
            assert all(0 <= a <= math.pi for a in tri.angles)
