"""Exact rational kernel for polygonal norms with rational vertices.

Everything here runs on :class:`fractions.Fraction`; there is no floating
point fallback.  Points are handled internally as ``(Fraction, Fraction)``
tuples for speed and exposed as :class:`~normplane.norms.Vec2`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ComputationError, NotExact, NotOnSphere
from .norms import NormModel, PolygonNorm, SymmetricPolygon, Vec2, as_vec, validate_polygon

Point = tuple[Fraction, Fraction]


def rational_vec(v) -> Vec2:
    """Coerce to a Vec2 with Fraction coordinates, rejecting floats."""
    if isinstance(v, Vec2) and v.is_exact:
        return v
    if isinstance(v, Vec2):
        raise NotExact(f"{v} has floating-point coordinates")
    coords = list(v)
    for c in coords:
        if isinstance(c, float):
            raise NotExact(f"floating-point coordinate {c!r} in exact input")
    out = as_vec(coords)
    if not out.is_exact:
        raise NotExact(f"{v!r} is not rational")
    return out


def rational_polygon(obj) -> SymmetricPolygon:
    """Return the rational polygon behind a PolygonNorm, a polygon or a vertex list."""
    if isinstance(obj, PolygonNorm):
        obj = obj.polygon
    if not isinstance(obj, SymmetricPolygon):
        obj = validate_polygon([rational_vec(v) for v in obj])
    if not obj.is_rational:
        raise NotExact("polygon has floating-point or irrational vertices")
    return obj


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class _Tables:
    cycle: tuple[Point, ...]
    normals: tuple[Point, ...]  # edge k functional: ||v|| = normals[k] . v on cone k


@functools.lru_cache(maxsize=256)
def _tables(poly: SymmetricPolygon) -> _Tables:
    cyc = tuple((v.x, v.y) for v in poly.vertices)
    n = len(cyc)
    normals = []
    for k in range(n):
        p, q = cyc[k], cyc[(k + 1) % n]
        c = _cross(p, q)
        normals.append(((q[1] - p[1]) / c, (p[0] - q[0]) / c))
    return _Tables(cyc, tuple(normals))


def _gauge(tab: _Tables, v: Point) -> Fraction:
    if v[0] == 0 and v[1] == 0:
        return Fraction(0)
    cyc = tab.cycle
    n = len(cyc)
    prev = _cross(cyc[0], v)
    for k in range(n):
        nxt = _cross(cyc[(k + 1) % n], v)
        # v lies in the cone [cyc[k], cyc[k+1]) iff cross(cyc[k], v) >= 0 > cross(cyc[k+1], v)
        if prev >= 0 and nxt < 0:
            a = tab.normals[k]
            return a[0] * v[0] + a[1] * v[1]
        prev = nxt
    raise ComputationError(f"no cone contains {v}; polygon tables are inconsistent")


def exact_gauge(poly, v) -> Fraction:
    """Exact ||v|| by cone location and the edge functional of that cone."""
    tab = _tables(rational_polygon(poly))
    v = rational_vec(v)
    return _gauge(tab, (v.x, v.y))


def _defect(tab: _Tables, x: Point, y: Point) -> Fraction:
    return _gauge(tab, (x[0] + y[0], x[1] + y[1])) - _gauge(tab, (x[0] - y[0], x[1] - y[1]))


def _edge_roots(tab: _Tables, x: Point, a: Point, b: Point) -> list[Point]:
    """Roots of ||x + y(t)|| = ||x - y(t)|| for y(t) = a + t (b - a), t in [0, 1].

    Both gauges are piecewise linear in t with breakpoints where x ± y(t)
    crosses a vertex ray; on each cell the defect is linear.
    """
    d = (b[0] - a[0], b[1] - a[1])
    ts = {Fraction(0), Fraction(1)}
    half = tab.cycle[: len(tab.cycle) // 2]
    for sgn in (1, -1):
        base = (x[0] + sgn * a[0], x[1] + sgn * a[1])
        for v in half:
            den = sgn * _cross(v, d)
            if den == 0:
                continue
            t = -_cross(v, base) / den
            if 0 < t < 1:
                ts.add(t)
    cells = sorted(ts)

    def y_at(t):
        return (a[0] + t * d[0], a[1] + t * d[1])

    vals = [_defect(tab, x, y_at(t)) for t in cells]
    roots = []
    for i, t in enumerate(cells):
        if vals[i] == 0:
            roots.append(y_at(t))
        if i + 1 < len(cells):
            lo, hi = vals[i], vals[i + 1]
            if lo == 0 and hi == 0:
                raise ComputationError(f"defect vanishes on a whole cell of edge {a}->{b}")
            if (lo > 0 > hi) or (lo < 0 < hi):
                tr = t + lo * (cells[i + 1] - t) / (lo - hi)
                roots.append(y_at(tr))
    return roots


def exact_iso_roots(poly, x, *, prune: bool = True) -> list[Vec2]:
    """All y on S_X with x ⊥_I y, exactly.

    With ``prune`` only edges whose endpoint defects change sign (or vanish)
    are solved; monotonicity of the defect along each half of the sphere
    guarantees no root is skipped.  ``prune=False`` solves every edge.
    """
    poly = rational_polygon(poly)
    tab = _tables(poly)
    xv = rational_vec(x)
    xp = (xv.x, xv.y)
    if _gauge(tab, xp) != 1:
        raise NotOnSphere(f"{xv} is not on the unit sphere")
    cyc = tab.cycle
    n = len(cyc)
    if prune:
        dv = [_defect(tab, xp, v) for v in cyc]
        edges = [k for k in range(n) if dv[k] * dv[(k + 1) % n] <= 0]
    else:
        edges = range(n)
    found: list[Point] = []
    for k in edges:
        for r in _edge_roots(tab, xp, cyc[k], cyc[(k + 1) % n]):
            if r not in found:
                found.append(r)
    return [Vec2(*r) for r in found]


def exact_iso_partner(poly, x) -> Vec2:
    """The unique partner y on S_X with cross(x, y) > 0, in exact arithmetic."""
    xv = rational_vec(x)
    roots = exact_iso_roots(poly, xv)
    if len(roots) != 2:
        raise ComputationError(f"expected exactly two partners ±y, found {len(roots)}: {roots}")
    pos = [r for r in roots if xv.cross(r) > 0]
    if len(pos) != 1 or roots[0] != -roots[1]:
        raise ComputationError(f"partner roots are not an antipodal pair: {roots}")
    return pos[0]


def exact_beta(poly, x) -> Fraction:
    """β(x) = ||x + y|| = ||x - y|| for the exact partner y."""
    poly = rational_polygon(poly)
    tab = _tables(poly)
    xv = rational_vec(x)
    y = exact_iso_partner(poly, xv)
    plus = _gauge(tab, (xv.x + y.x, xv.y + y.y))
    minus = _gauge(tab, (xv.x - y.x, xv.y - y.y))
    if plus != minus:
        raise ComputationError(f"partner {y} of {xv} is not isosceles orthogonal: {plus} != {minus}")
    return plus


def exact_james(poly) -> Fraction:
    """J(X) as the exact maximum of β over the half-vertices."""
    poly = rational_polygon(poly)
    return max(exact_beta(poly, v) for v in poly.half_vertices)


@dataclass(frozen=True)
class ExactAttainment:
    x: Vec2
    y: Vec2
    value: Fraction
    iso_defect: Fraction


def exact_james_attainment(poly, tol: Fraction | float = 0) -> list[ExactAttainment]:
    """Pairs (v_i, w_i) whose exact β(v_i) is within ``tol`` of J(X)."""
    poly = rational_polygon(poly)
    tab = _tables(poly)
    rows = []
    for v in poly.half_vertices:
        w = exact_iso_partner(poly, v)
        val = _gauge(tab, (v.x + w.x, v.y + w.y))
        rows.append((v, w, val, _defect(tab, (v.x, v.y), (w.x, w.y))))
    best = max(r[2] for r in rows)
    tol = Fraction(tol) if not isinstance(tol, Fraction) else tol
    return [ExactAttainment(*r) for r in rows if r[2] >= best - tol]


def exact_functional_gauge(poly, v) -> Fraction:
    """Independent route: max_k |a_k . v| over all edge functionals."""
    tab = _tables(rational_polygon(poly))
    v = rational_vec(v)
    return max(abs(a[0] * v.x + a[1] * v.y) for a in tab.normals)


def exact_norm(norm: NormModel) -> SymmetricPolygon:
    """Rational polygon behind ``norm`` or NotExact."""
    if not isinstance(norm, PolygonNorm):
        raise NotExact(f"{norm!r} is not a polygonal norm")
    return rational_polygon(norm)


def format_fraction(q: Fraction) -> str:
    return str(q)


def format_rational_vec(v: Vec2) -> str:
    return f"({v.x}, {v.y})"


def convex_hull(points: Iterable) -> list[Vec2]:
    """Strict convex hull (collinear points dropped), counterclockwise, exact."""
    pts = sorted({(p.x, p.y) for p in map(rational_vec, points)})
    if len(pts) < 3:
        return [Vec2(*p) for p in pts]

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and _cross((out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]), (p[0] - out[-1][0], p[1] - out[-1][1])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    return [Vec2(*p) for p in lower[:-1] + upper[:-1]]
