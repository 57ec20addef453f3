import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normplane import (
    NotExact,
    NotOnSphere,
    Vec2,
    exact_beta,
    exact_gauge,
    exact_iso_partner,
    exact_iso_roots,
    exact_james,
    exact_james_attainment,
    james,
    polygon_norm,
    preset,
)
from normplane.exact import convex_hull, exact_functional_gauge
from normplane.generators import random_rational_polygon

OCT_Q = F(99, 70) - 1  # rational stand-in for sqrt2 - 1
OCTAGON_Q = [(1, -OCT_Q), (1, OCT_Q), (OCT_Q, 1), (-OCT_Q, 1)]


@pytest.fixture
def hexagon():
    return preset("hexagon-paper")


class TestGauge:
    @pytest.mark.parametrize("v, want", [((F(22, 13), F(8, 13)), F(22, 13)), ((F(3, 2), F(12, 7)), F(11, 7))])
    def test_hexagon(self, hexagon, v, want):
        assert exact_gauge(hexagon, v) == want

    @pytest.mark.parametrize("t", [F(-1), F(-3, 7), F(0), F(5, 11), F(1)])
    def test_square_edge(self, t):
        assert exact_gauge(preset("square"), (1, t)) == 1

    def test_rejects_float(self, hexagon):
        with pytest.raises(NotExact):
            exact_gauge(hexagon, (0.5, 1))

    def test_rejects_float_polygon(self):
        with pytest.raises(NotExact):
            exact_gauge(preset("octagon-max"), (1, 0))

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 10_000), st.integers(-50, 50), st.integers(1, 30), st.integers(-50, 50), st.integers(1, 30))
    def test_cone_location_matches_functional_form(self, seed, p, q, s, t):
        norm = random_rational_polygon(np.random.default_rng(seed))
        v = (F(p, q), F(s, t))
        assert exact_gauge(norm, v) == exact_functional_gauge(norm, v)


class TestPartner:
    @pytest.mark.parametrize(
        "x, want",
        [((1, -1), (F(9, 13), F(21, 13))), ((1, 1), (F(-5, 17), F(25, 17))), ((F(1, 2), 2), (-1, F(2, 7)))],
    )
    def test_hexagon(self, hexagon, x, want):
        assert exact_iso_partner(hexagon, x) == Vec2(*want)

    def test_square(self):
        assert exact_iso_partner(preset("square"), (1, 0)) == Vec2(0, 1)

    def test_not_on_sphere(self, hexagon):
        with pytest.raises(NotOnSphere):
            exact_iso_partner(hexagon, (2, -2))

    def test_not_exact(self, hexagon):
        with pytest.raises(NotExact):
            exact_iso_partner(hexagon, (1.0, -1.0))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(-9, 9), st.integers(-9, 9))
    def test_two_antipodal_roots_and_prune_agrees(self, seed, a, b):
        norm = random_rational_polygon(np.random.default_rng(seed))
        v = Vec2(a, b)
        if v.is_zero:
            v = Vec2(1, 0)
        x = v / exact_gauge(norm, v)
        pruned = exact_iso_roots(norm, x)
        full = exact_iso_roots(norm, x, prune=False)
        assert len(pruned) == 2 and pruned[0] == -pruned[1]
        assert set(pruned) == set(full)
        for y in pruned:
            assert exact_gauge(norm, y) == 1
            assert exact_gauge(norm, x + y) == exact_gauge(norm, x - y)


class TestBetaAndJames:
    @pytest.mark.parametrize("x, want", [((1, -1), F(22, 13)), ((1, 1), F(22, 17)), ((F(1, 2), 2), F(11, 7))])
    def test_hexagon_beta(self, hexagon, x, want):
        assert exact_beta(hexagon, x) == want

    def test_square_beta(self):
        assert exact_beta(preset("square"), (1, 1)) == 2

    def test_james(self, hexagon):
        assert exact_james(hexagon) == F(22, 13)
        assert exact_james(preset("square")) == 2

    def test_rational_octagon_near_sqrt2(self):
        norm = polygon_norm(OCTAGON_Q)
        J = exact_james(norm)
        assert isinstance(J, F)
        # vertices move by |99/70 - sqrt2| < 7.3e-5, and J is Lipschitz in the ball
        assert abs(float(J) - math.sqrt(2)) < 1e-3
        assert float(J) == pytest.approx(james(norm), abs=1e-9)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_james_bounds(self, seed):
        J = exact_james(random_rational_polygon(np.random.default_rng(seed)))
        assert J * J >= 2 and J <= 2

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10_000), st.randoms(use_true_random=False))
    def test_relabel_invariant(self, seed, rnd):
        norm = random_rational_polygon(np.random.default_rng(seed))
        half = [v if rnd.random() < 0.5 else -v for v in norm.polygon.half_vertices]
        rnd.shuffle(half)
        assert exact_james(polygon_norm([(v.x, v.y) for v in half])) == exact_james(norm)

    def test_float_path_agrees_on_random_polygons(self):
        rng = np.random.default_rng(11)
        for _ in range(15):
            norm = random_rational_polygon(rng)
            assert james(norm) == pytest.approx(float(exact_james(norm)), abs=1e-9)


class TestAttainment:
    def test_hexagon(self, hexagon):
        pairs = exact_james_attainment(hexagon)
        assert len(pairs) == 1
        p = pairs[0]
        assert (p.x, p.y) == (Vec2(1, -1), Vec2(F(9, 13), F(21, 13)))
        assert p.value == F(22, 13) and p.iso_defect == 0

    def test_tolerance_widens(self, hexagon):
        assert len(exact_james_attainment(hexagon, F(1, 2))) == 3


class TestConvexHull:
    def test_drops_interior_and_collinear(self):
        pts = [(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1), (F(1, 2), F(1, 2))]
        assert convex_hull(pts) == [Vec2(0, 0), Vec2(2, 0), Vec2(2, 2), Vec2(0, 2)]

    def test_small(self):
        assert convex_hull([(1, 1), (1, 1)]) == [Vec2(1, 1)]
