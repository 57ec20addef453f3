import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import TEST_NORMS
from normplane import (
    BracketError,
    DegeneratePair,
    InvalidEpsilon,
    NonPositiveRadius,
    NotOnSphere,
    ZeroVector,
    aset_arc,
    gauge,
    is_approx_iso,
    iso_defect,
    iso_partner,
    min_feasible_epsilon,
    polygon_norm,
    sphere_points,
)
from normplane.exact import exact_functional_gauge
from normplane.generators import random_rational_polygon
from normplane.iso import partner_angles
from normplane.norms import NormModel

angles = st.floats(0, 2 * math.pi, exclude_max=True)
norm_names = st.sampled_from(sorted(TEST_NORMS))


class TestDefect:
    def test_hexagon_partner_exact_zero(self, hexagon):
        d = iso_defect(hexagon, (1, -1), (F(9, 13), F(21, 13)))
        assert isinstance(d, F) and d == 0

    def test_self_pair(self, any_norm):
        x = (0.3, -0.7)
        assert iso_defect(any_norm, x, x) == pytest.approx(2 * gauge(any_norm, x), rel=1e-14)

    def test_euclidean_closed_form(self, euclid):
        phi = math.pi / 3
        want = math.sqrt(2 + 2 * math.cos(phi)) - math.sqrt(2 - 2 * math.cos(phi))
        assert iso_defect(euclid, (1, 0), (math.cos(phi), math.sin(phi))) == pytest.approx(want, abs=1e-15)

    @settings(max_examples=50, deadline=None)
    @given(norm_names, angles, angles)
    def test_sign_flip(self, name, a, b):
        norm = TEST_NORMS[name]
        x, y = sphere_points(norm, a), sphere_points(norm, b)
        assert iso_defect(norm, x, -y) == pytest.approx(-iso_defect(norm, x, y), abs=1e-15)


class TestApproxIso:
    @pytest.mark.parametrize("phi", [0.1, 0.9, math.pi / 2, 2.0, 3.0])
    @pytest.mark.parametrize("eps", [0.0, 0.25, 0.5, 0.9])
    def test_euclidean(self, euclid, phi, eps):
        c = math.cos(phi)
        if abs(abs(c) - eps) < 1e-9:
            pytest.skip("on the boundary")
        assert is_approx_iso(euclid, (1, 0), (c, math.sin(phi)), eps) == (abs(c) <= eps)

    def test_exact_zero(self, hexagon):
        assert is_approx_iso(hexagon, (1, -1), (F(9, 13), F(21, 13)), 0)

    def test_hexagon_negative(self, hexagon):
        assert not is_approx_iso(hexagon, (1, -1), (1, 1), 0)

    @pytest.mark.parametrize("eps", [-0.1, 1.0, 2.0])
    def test_rejects_epsilon(self, hexagon, eps):
        with pytest.raises(InvalidEpsilon):
            is_approx_iso(hexagon, (1, 0), (0, 1), eps)

    @settings(max_examples=50, deadline=None)
    @given(norm_names, angles, angles, st.floats(0, 0.99))
    def test_symmetric(self, name, a, b, eps):
        norm = TEST_NORMS[name]
        x, y = sphere_points(norm, a), sphere_points(norm, b)
        assert is_approx_iso(norm, x, y, eps) == is_approx_iso(norm, y, x, eps)


class TestMinFeasibleEpsilon:
    def test_hexagon(self, hexagon):
        assert min_feasible_epsilon(hexagon, (1, -1), (F(9, 13), F(21, 13))) == 0
        # ‖(2, 0)‖ = 2 on the edge x = 1; (0, -2) meets the edge from (-1/2, -2) to (1, -1)
        # at (0, -5/3), so ‖(0, -2)‖ = 6/5 and eps* = |4 - 36/25| / 4.
        assert exact_functional_gauge(hexagon, (0, -2)) == F(6, 5)
        assert min_feasible_epsilon(hexagon, (1, -1), (1, 1)) == F(16, 25)

    def test_euclidean(self, euclid):
        phi = 1.1
        assert min_feasible_epsilon(euclid, (1, 0), (math.cos(phi), math.sin(phi))) == pytest.approx(abs(math.cos(phi)), abs=1e-15)

    def test_degenerate(self, hexagon):
        with pytest.raises(DegeneratePair):
            min_feasible_epsilon(hexagon, (1, 1), (-1, -1))

    def test_not_unit(self, hexagon):
        with pytest.raises(NotOnSphere):
            min_feasible_epsilon(hexagon, (2, 2), (1, -1))

    @settings(max_examples=60, deadline=None)
    @given(norm_names, angles, st.floats(1e-6, math.pi - 1e-6))
    def test_below_one_and_feasible(self, name, a, gap):
        norm = TEST_NORMS[name]
        x, y = sphere_points(norm, a), sphere_points(norm, a + gap)
        e = min_feasible_epsilon(norm, x, y)
        assert 0 <= e < 1
        assert is_approx_iso(norm, x, y, min(e * (1 + 1e-12) + 1e-15, math.nextafter(1.0, 0.0)))


class TestPartner:
    @pytest.mark.parametrize(
        "x, want",
        [((1, -1), (9 / 13, 21 / 13)), ((1, 1), (-5 / 17, 25 / 17)), ((0.5, 2), (-1, 2 / 7))],
    )
    def test_hexagon(self, hexagon, x, want):
        res = iso_partner(hexagon, x)
        assert (res.primary.x, res.primary.y) == pytest.approx(want, abs=1e-12)
        assert not res.has_plateau

    def test_square(self, square):
        y = iso_partner(square, (1, 0)).primary
        assert (y.x, y.y) == pytest.approx((0, 1), abs=1e-12)

    def test_euclidean_radius_two(self, euclid):
        res = iso_partner(euclid, (1, 0), 2.0)
        assert (res.primary.x, res.primary.y) == pytest.approx((0, 2), abs=1e-12)
        assert not res.has_plateau

    def test_plateau_outside_uniqueness_range(self, square):
        # r > ‖x‖ on the square: x = (1, 0), every (t, 2) with |t| <= 1 is a partner.
        res = iso_partner(square, (1, 0), 2.0)
        assert res.has_plateau
        a, b = res.plateau_points
        assert (a.x, a.y) == pytest.approx((1, 2), abs=1e-8)
        assert (b.x, b.y) == pytest.approx((-1, 2), abs=1e-8)
        assert (res.primary.x, res.primary.y) == pytest.approx((0, 2), abs=1e-8)

    def test_errors(self, hexagon):
        with pytest.raises(ZeroVector):
            iso_partner(hexagon, (0, 0))
        with pytest.raises(NonPositiveRadius):
            iso_partner(hexagon, (1, 0), 0.0)

    def test_invalid_norm_is_detected(self):
        class Broken(NormModel):
            def gauge_array(self, pts):
                return np.ones(np.shape(pts)[:-1])

        with pytest.raises(BracketError):
            iso_partner(Broken(), (1, 0))

    @settings(max_examples=40, deadline=None)
    @given(norm_names, angles, st.floats(0.05, 20))
    def test_invariants(self, name, a, r):
        norm = TEST_NORMS[name]
        x = sphere_points(norm, a)
        res = iso_partner(norm, x, r)
        y = res.primary.to_array()
        assert gauge(norm, y) == pytest.approx(r, rel=1e-12)
        assert abs(iso_defect(norm, x, y)) <= 1e-9 * max(1.0, r)
        assert x[0] * y[1] - x[1] * y[0] > 0
        if r <= 1.0 or norm.strictly_convex:
            assert not res.has_plateau

    @settings(max_examples=30, deadline=None)
    @given(norm_names, angles, st.floats(0.1, 5), st.floats(0.1, 10))
    def test_homogeneity(self, name, a, r, t):
        norm = TEST_NORMS[name]
        x = sphere_points(norm, a)
        y = iso_partner(norm, x, r).primary.to_array()
        assert abs(iso_defect(norm, t * x, t * y)) <= 1e-9 * t * max(1.0, r)

    def test_uniqueness_on_grid(self):
        # Every grid point with small defect sits next to ±primary.
        rng = np.random.default_rng(3)
        phi = 2 * math.pi * np.arange(20000) / 20000
        for _ in range(5):
            norm = random_rational_polygon(rng)
            for r in (0.5, 1.0):
                x = sphere_points(norm, rng.uniform(0, 2 * math.pi))
                res = iso_partner(norm, x, r)
                assert not res.has_plateau
                Z = r * sphere_points(norm, phi)
                d = np.abs(norm.gauge_array(x + Z) - norm.gauge_array(x - Z))
                close = phi[d < 1e-10]
                t = res.angle
                dist = np.minimum(np.abs((close - t + math.pi) % (2 * math.pi) - math.pi), np.abs((close - t) % (2 * math.pi) - math.pi))
                assert np.all(dist <= 1e-9)

    @settings(max_examples=40, deadline=None)
    @given(norm_names, angles, st.floats(1e-4, math.pi - 1e-4))
    def test_partners_keep_orientation(self, name, a, gap):
        norm = TEST_NORMS[name]
        X = sphere_points(norm, np.array([a, a + gap]))
        theta, *_ = partner_angles(norm, X, 1.0)
        W = sphere_points(norm, theta)
        assert W[0, 0] * W[1, 1] - W[0, 1] * W[1, 0] > 0


class TestArc:
    def test_degenerate(self, hexagon):
        arc = aset_arc(hexagon, (1, -1), 0)
        assert arc.endpoint_left == arc.endpoint_right == arc.anchor
        assert arc.t_right == arc.t_left == 1.0

    @pytest.mark.parametrize("eps", [0.1, 0.5, 0.9])
    def test_euclidean(self, euclid, eps):
        arc = aset_arc(euclid, (1, 0), eps)
        assert arc.theta_right == pytest.approx(math.pi / 2 - math.asin(eps), abs=1e-9)
        assert arc.theta_left == pytest.approx(math.pi / 2 + math.asin(eps), abs=1e-9)

    def test_euclidean_width(self, euclid):
        assert aset_arc(euclid, (1, 0), 0.5).width == pytest.approx(math.pi / 3, abs=1e-9)

    def test_errors(self, hexagon):
        with pytest.raises(InvalidEpsilon):
            aset_arc(hexagon, (1, -1), 1.0)
        with pytest.raises(NotOnSphere):
            aset_arc(hexagon, (2, -2), 0.5)

    @settings(max_examples=40, deadline=None)
    @given(norm_names, angles, st.floats(0.01, 0.95))
    def test_invariants(self, name, a, eps):
        norm = TEST_NORMS[name]
        x = sphere_points(norm, a)
        arc = aset_arc(norm, x, eps)
        for p in (arc.endpoint_right, arc.endpoint_left):
            v = p.to_array()
            assert gauge(norm, v) == pytest.approx(1.0, abs=1e-12)
            lhs = abs(gauge(norm, x + v) ** 2 - gauge(norm, x - v) ** 2)
            assert lhs == pytest.approx(4 * eps, abs=1e-9)
        assert arc.contains(arc.anchor)
        assert arc.contains(-arc.anchor)
        assert 0 <= arc.t_right <= 1 and 0 <= arc.t_left <= 1

    def test_segment_parameters(self):
        # On the square with x = (1, 0): u_t = ((1-t), t) normalized, and the right endpoint
        # satisfies |‖x+u‖² - ‖x-u‖²| = 4 eps.
        norm = polygon_norm([(1, -1), (1, 1)])
        arc = aset_arc(norm, (1, 0), 0.5)
        t = arc.t_right
        u = np.array([1 - t, t])
        u = u / gauge(norm, u)
        assert (arc.endpoint_right.x, arc.endpoint_right.y) == pytest.approx(tuple(u), abs=1e-9)
