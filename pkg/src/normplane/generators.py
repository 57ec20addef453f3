"""Random rational test polygons."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exact import convex_hull
from .norms import PolygonNorm, Vec2, validate_polygon


def _random_rational(rng: np.random.Generator, max_int: int) -> Fraction:
    num = int(rng.integers(-max_int, max_int + 1))
    den = int(rng.integers(1, max_int + 1))
    return Fraction(num, den)


def _near_circle(rng: np.random.Generator, max_int: int) -> Vec2:
    # Rational point close to a random point of an annulus; |p|, q <= max_int.
    t = rng.uniform(0.0, 2.0 * np.pi)
    rad = rng.uniform(0.5, 1.0)
    return Vec2(*(Fraction(float(c)).limit_denominator(max_int) for c in (rad * np.cos(t), rad * np.sin(t))))


def random_rational_polygon(
    rng: np.random.Generator,
    max_half_vertices: int = 12,
    max_int: int = 20,
) -> PolygonNorm:
    """Symmetric convex polygon with coordinates p/q, |p| <= max_int, 1 <= q <= max_int.

    Random points and their negatives are hulled exactly; if the hull has
    too many vertices, antipodal pairs are dropped at random (vertices in
    strictly convex position stay so).  Half of the draws sample the box
    uniformly (elongated, few vertices), half sample near an annulus (round,
    many vertices).
    """
    if max_half_vertices < 2:
        raise ValueError("max_half_vertices must be >= 2")
    while True:
        k = int(rng.integers(2, max_half_vertices + 1))
        round_ = bool(rng.integers(0, 2))
        pts = []
        while len(pts) < (2 * k if round_ else k):
            if round_:
                p = _near_circle(rng, max_int)
            else:
                p = Vec2(_random_rational(rng, max_int), _random_rational(rng, max_int))
            if not p.is_zero:
                pts.append(p)
        hull = convex_hull(pts + [-p for p in pts])
        half = [v for v in hull if v.x > 0 or (v.x == 0 and v.y > 0)]
        if len(half) < 2:
            continue
        if len(half) > max_half_vertices:
            keep = sorted(rng.choice(len(half), size=max_half_vertices, replace=False))
            half = [half[i] for i in keep]
        return PolygonNorm(validate_polygon(half))
