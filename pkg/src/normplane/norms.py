"""Two-dimensional norms: polygonal gauges and the l_p family.

A norm is described by its unit ball.  Polygonal balls are stored as a
half-list of vertices (one representative per antipodal pair); the full
boundary is the symmetric closure.  Coordinates may be exact
(:class:`fractions.Fraction`) or floating point.  The float evaluation path
used everywhere outside :mod:`normplane.exact` converts once to numpy arrays.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DuplicateDirection,
    InvalidInput,
    NonConvex,
    NotPolyhedral,
    TooFewVertices,
    ZeroVertex,
)

Number = Union[int, float, Fraction]
TWO_PI = 2.0 * math.pi


def _coerce_coord(value) -> Number:
    if isinstance(value, bool):
        raise InvalidInput(f"boolean is not a coordinate: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational literal: {value!r}") from exc
    value = float(value)
    if not math.isfinite(value):
        raise InvalidInput(f"coordinate must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Vec2:
    """Plane vector with float or exact rational coordinates."""

    x: Number
    y: Number

    def __post_init__(self):
        object.__setattr__(self, "x", _coerce_coord(self.x))
        object.__setattr__(self, "y", _coerce_coord(self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def __mul__(self, t: Number) -> "Vec2":
        return Vec2(self.x * t, self.y * t)

    __rmul__ = __mul__

    def __truediv__(self, t: Number) -> "Vec2":
        return Vec2(self.x / t, self.y / t)

    def cross(self, other: "Vec2") -> Number:
        return self.x * other.y - self.y * other.x

    def dot(self, other: "Vec2") -> Number:
        return self.x * other.x + self.y * other.y

    @property
    def is_exact(self) -> bool:
        return isinstance(self.x, Fraction) and isinstance(self.y, Fraction)

    @property
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def to_float(self) -> "Vec2":
        return Vec2(float(self.x), float(self.y))

    def to_array(self) -> np.ndarray:
        return np.array([float(self.x), float(self.y)])

    def angle(self) -> float:
        """Direction angle in [0, 2*pi)."""
        return direction_angle(self)

    def __repr__(self) -> str:
        return f"Vec2({self.x}, {self.y})"


def as_vec(v) -> Vec2:
    if isinstance(v, Vec2):
        return v
    if isinstance(v, np.ndarray):
        v = v.tolist()
    x, y = v
    return Vec2(x, y)


def direction_angle(v) -> float:
    x, y = as_vec(v)
    theta = math.atan2(float(y), float(x))
    if theta < 0.0:
        theta += TWO_PI
    return theta % TWO_PI


def reduce_angle(theta: float) -> float:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    return theta if theta < TWO_PI else 0.0


class Orientation(str, enum.Enum):
    PRECEDES = "precedes"
    SUCCEEDS = "succeeds"
    COLLINEAR = "collinear"


def cross(u, v) -> Number:
    u, v = as_vec(u), as_vec(v)
    return u.cross(v)


def orientation(x, y) -> Orientation:
    """Sign of the cross product x1*y2 - x2*y1, compared exactly against zero.

    ``x`` precedes ``y`` when the cross product is positive.
    """
    c = cross(x, y)
    if c > 0:
        return Orientation.PRECEDES
    if c < 0:
        return Orientation.SUCCEEDS
    return Orientation.COLLINEAR


# ---------------------------------------------------------------------------
# Symmetric polygons
# ---------------------------------------------------------------------------


def _upper_representative(v: Vec2) -> Vec2:
    # Open right half-plane plus the positive y axis.
    if v.x > 0 or (v.x == 0 and v.y > 0):
        return v
    return -v


@dataclass(frozen=True)
class SymmetricPolygon:
    """Origin-symmetric convex polygon given by half of its vertex cycle.

    Construct through :func:`validate_polygon`; the half-list is stored in
    canonical counterclockwise order starting from the vertex of smallest
    direction angle in (-pi/2, pi/2].
    """

    half_vertices: tuple[Vec2, ...]

    @property
    def m(self) -> int:
        return len(self.half_vertices)

    @property
    def vertices(self) -> tuple[Vec2, ...]:
        """Full counterclockwise cycle v_1..v_m, -v_1..-v_m."""
        return self.half_vertices + tuple(-v for v in self.half_vertices)

    @property
    def is_rational(self) -> bool:
        return all(v.is_exact for v in self.half_vertices)

    @functools.cached_property
    def vertex_array(self) -> np.ndarray:
        return np.array([[float(v.x), float(v.y)] for v in self.vertices])

    @functools.cached_property
    def functionals(self) -> np.ndarray:
        """Rows a_k with ||v|| = max_k |a_k . v|, one per antipodal edge pair."""
        cyc = self.vertices
        rows = []
        for k in range(self.m):
            p, q = cyc[k], cyc[k + 1]
            c = p.cross(q)
            rows.append([float((q.y - p.y) / c), float((p.x - q.x) / c)])
        return np.array(rows)

    def rotated(self, theta: float) -> "SymmetricPolygon":
        c, s = math.cos(theta), math.sin(theta)
        pts = [Vec2(c * float(v.x) - s * float(v.y), s * float(v.x) + c * float(v.y)) for v in self.half_vertices]
        return validate_polygon(pts)


def _cmp_ccw(a: Vec2, b: Vec2) -> int:
    c = a.cross(b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    raise DuplicateDirection(f"vertices {a} and {b} are positively proportional (up to sign)")


def validate_polygon(vertices: Iterable) -> SymmetricPolygon:
    """Validate a half-list of vertices and return the canonical polygon.

    Coordinates that are all ints, Fractions or rational strings give an
    exact polygon; any float coordinate makes the whole polygon float.

    Raises TooFewVertices, ZeroVertex, DuplicateDirection or NonConvex.
    """
    pts = [as_vec(v) for v in vertices]
    if len(pts) < 2:
        raise TooFewVertices(f"need at least 2 half-vertices, got {len(pts)}")
    if not all(p.is_exact for p in pts):
        pts = [p.to_float() for p in pts]
    for p in pts:
        if p.is_zero:
            raise ZeroVertex("the zero vector cannot be a vertex")
    reps = [_upper_representative(p) for p in pts]
    half = tuple(sorted(reps, key=functools.cmp_to_key(_cmp_ccw)))
    poly = SymmetricPolygon(half)
    cyc = poly.vertices
    n = len(cyc)
    for i in range(n):
        a, b, c = cyc[i], cyc[(i + 1) % n], cyc[(i + 2) % n]
        if a.cross(b) <= 0:
            raise NonConvex(f"consecutive vertices {a}, {b} are not counterclockwise")
        turn = (b - a).cross(c - b)
        if turn <= 0:
            what = "collinear (non-extreme)" if turn == 0 else "a reflex corner"
            raise NonConvex(f"vertex {b} is {what}")
    return poly


# ---------------------------------------------------------------------------
# Norm models
# ---------------------------------------------------------------------------


class NormModel:
    """Base class.  Subclasses implement :meth:`gauge_array`."""

    kind: str = "abstract"
    is_polyhedral: bool = False
    strictly_convex: bool = False

    def gauge_array(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_document(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class PolygonNorm(NormModel):
    polygon: SymmetricPolygon
    name: str | None = None
    document: dict | None = field(default=None, compare=False)

    kind = "polygon"
    is_polyhedral = True
    strictly_convex = False

    def gauge_array(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        return np.max(np.abs(pts @ self.polygon.functionals.T), axis=-1)

    @property
    def is_rational(self) -> bool:
        return self.polygon.is_rational

    def to_document(self) -> dict:
        if self.document is not None:
            return dict(self.document)
        return {
            "kind": "polygon",
            "vertices": [[_coord_to_json(v.x), _coord_to_json(v.y)] for v in self.polygon.half_vertices],
        }

    def __repr__(self) -> str:
        label = self.name or f"{self.polygon.m * 2}-gon"
        return f"PolygonNorm({label})"


@dataclass(frozen=True, eq=False)
class LpNorm(NormModel):
    p: float

    kind = "lp"
    is_polyhedral = False
    strictly_convex = True

    def __post_init__(self):
        if not (1.0 < self.p < math.inf):
            raise InvalidInput(f"LpNorm needs 1 < p < inf, got {self.p}; use lp_norm() for the polyhedral ends")

    def gauge_array(self, pts: np.ndarray) -> np.ndarray:
        pts = np.abs(np.asarray(pts, dtype=float))
        scale = np.max(pts, axis=-1)
        safe = np.where(scale > 0.0, scale, 1.0)
        if self.p == 2.0:
            return np.hypot(pts[..., 0], pts[..., 1])
        ratio = pts / safe[..., None]
        return scale * np.sum(ratio**self.p, axis=-1) ** (1.0 / self.p)

    def to_document(self) -> dict:
        return {"kind": "lp", "p": self.p}

    def __repr__(self) -> str:
        return f"LpNorm(p={self.p})"


def _coord_to_json(c: Number):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else c.numerator
    return float(c)


def polygon_norm(vertices: Iterable, name: str | None = None) -> PolygonNorm:
    return PolygonNorm(validate_polygon(vertices), name=name)


def lp_norm(p: float) -> NormModel:
    """l_p norm; p = 1 and p = inf are returned as their polygons."""
    p = float(p)
    if p < 1.0 or math.isnan(p):
        raise InvalidInput(f"l_p exponent must be >= 1, got {p}")
    doc = {"kind": "lp", "p": "inf" if math.isinf(p) else p}
    if math.isinf(p):
        return PolygonNorm(validate_polygon([(1, -1), (1, 1)]), name="l_inf", document=doc)
    if p == 1.0:
        return PolygonNorm(validate_polygon([(1, 0), (0, 1)]), name="l_1", document=doc)
    return LpNorm(p)


def regular_polygon_norm(sides: int, rotation: float = 0.0) -> PolygonNorm:
    """Regular polygon with unit inradius and a vertex at angle ``rotation``.

    With ``sides=4, rotation=pi/4`` this is the l_inf ball; with
    ``sides=8, rotation=pi/8`` it is the octagon max{|x|, |y|, (|x|+|y|)/sqrt 2}.
    """
    if isinstance(sides, bool) or int(sides) != sides or sides < 4 or sides % 2:
        raise InvalidInput(f"regular polygon needs an even number of sides >= 4, got {sides}")
    sides = int(sides)
    circ = 1.0 / math.cos(math.pi / sides)
    half = [
        (circ * math.cos(rotation + TWO_PI * k / sides), circ * math.sin(rotation + TWO_PI * k / sides))
        for k in range(sides // 2)
    ]
    doc = {"kind": "regular-polygon", "sides": sides, "rotation": float(rotation)}
    return PolygonNorm(validate_polygon(half), name=f"regular-{sides}", document=doc)


def octagon_norm() -> PolygonNorm:
    """The norm max{|x|, |y|, 2^(-1/2)(|x| + |y|)} as a float octagon."""
    g = math.sqrt(2.0) - 1.0
    poly = validate_polygon([(1.0, g), (g, 1.0), (-g, 1.0), (-1.0, g)])
    return PolygonNorm(poly, name="octagon-max", document={"kind": "preset", "preset": "octagon-max"})


def hexagon_norm() -> PolygonNorm:
    """Irregular hexagon with extreme points +-(1,-1), +-(1,1), +-(1/2,2)."""
    poly = validate_polygon([(1, -1), (1, 1), (Fraction(1, 2), 2)])
    return PolygonNorm(poly, name="hexagon-paper", document={"kind": "preset", "preset": "hexagon-paper"})


def square_norm() -> PolygonNorm:
    poly = validate_polygon([(1, -1), (1, 1)])
    return PolygonNorm(poly, name="square", document={"kind": "preset", "preset": "square"})


def euclidean_norm() -> LpNorm:
    return LpNorm(2.0)


PRESETS = {
    "octagon-max": octagon_norm,
    "hexagon-paper": hexagon_norm,
    "square": square_norm,
    "euclidean": euclidean_norm,
}


def preset(name: str) -> NormModel:
    try:
        return PRESETS[name]()
    except KeyError:
        raise InvalidInput(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def gauge(norm: NormModel, v) -> float:
    """Minkowski gauge ||v|| of the unit ball (float evaluation)."""
    v = as_vec(v)
    return float(norm.gauge_array(np.array([float(v.x), float(v.y)])))


def sphere_points(norm: NormModel, theta) -> np.ndarray:
    """Unit-sphere points in directions ``theta`` (array of angles) -> (..., 2)."""
    theta = np.asarray(theta, dtype=float)
    d = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    return d / norm.gauge_array(d)[..., None]


def sphere_point(norm: NormModel, theta: float) -> Vec2:
    x, y = sphere_points(norm, reduce_angle(float(theta)))
    return Vec2(float(x), float(y))


def extreme_points(norm: NormModel) -> list[Vec2]:
    if not norm.is_polyhedral:
        raise NotPolyhedral(f"{norm!r} has no polygonal vertex set")
    return list(norm.polygon.vertices)


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def rotation_invariance_check(norm: NormModel, theta: float, n_samples: int = 1000) -> float:
    """Largest |‖R(theta) u‖ - 1| over ``n_samples`` equally spaced sphere points."""
    if n_samples < 1:
        raise InvalidInput("n_samples must be >= 1")
    u = sphere_points(norm, TWO_PI * np.arange(n_samples) / n_samples)
    ru = u @ rotation_matrix(theta).T
    return float(np.max(np.abs(norm.gauge_array(ru) - 1.0)))


def to_points(vs: Sequence) -> np.ndarray:
    return np.array([[float(c) for c in as_vec(v)] for v in vs], dtype=float).reshape(-1, 2)
