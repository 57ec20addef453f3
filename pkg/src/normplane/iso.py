"""Isosceles and approximate isosceles orthogonality.

The partner solver relies on monotonicity: for fixed x, moving y along
r*S_X counterclockwise from the direction of x to the direction of -x makes
``||x + y|| - ||x - y||`` nonincreasing, from ``2 min(||x||, r)`` down to
``-2 min(||x||, r)``.  All searches here are bisections in direction angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._numerics import DEFAULT_CONFIG, SolverConfig, bisect_boundary
from .errors import BracketError, DegeneratePair, InvalidEpsilon, NonPositiveRadius, NotOnSphere, ZeroVector
from .norms import NormModel, Vec2, as_vec, direction_angle, gauge, reduce_angle, sphere_points


def _exact_pair(norm: NormModel, *vs: Vec2) -> bool:
    return bool(getattr(norm, "is_rational", False)) and all(v.is_exact for v in vs)


def _exact_gauge(norm, v):
    from .exact import exact_gauge

    return exact_gauge(norm.polygon, v)


def iso_defect(norm: NormModel, x, y):
    """||x + y|| - ||x - y||.  Exact (a Fraction) for rational data on a rational polygon."""
    x, y = as_vec(x), as_vec(y)
    if _exact_pair(norm, x, y):
        return _exact_gauge(norm, x + y) - _exact_gauge(norm, x - y)
    return gauge(norm, x + y) - gauge(norm, x - y)


def _check_epsilon(eps) -> None:
    if not (0 <= eps < 1):
        raise InvalidEpsilon(f"epsilon must lie in [0, 1), got {eps}")


def is_approx_iso(norm: NormModel, x, y, eps, *, atol: float = 0.0) -> bool:
    """Whether |‖x+y‖² - ‖x-y‖²| <= 4 eps ‖x‖ ‖y‖ (plus ``atol`` slack in float mode)."""
    _check_epsilon(eps)
    x, y = as_vec(x), as_vec(y)
    if _exact_pair(norm, x, y) and isinstance(eps, (int, Fraction)) and atol == 0:
        g = lambda v: _exact_gauge(norm, v)  # noqa: E731
        return abs(g(x + y) ** 2 - g(x - y) ** 2) <= 4 * Fraction(eps) * g(x) * g(y)
    lhs = abs(gauge(norm, x + y) ** 2 - gauge(norm, x - y) ** 2)
    return lhs <= 4.0 * float(eps) * gauge(norm, x) * gauge(norm, y) + atol


def min_feasible_epsilon(norm: NormModel, x, y, *, sphere_tol: float = 1e-9):
    """Smallest eps with x ⊥_I^eps y, for unit vectors x != ±y.  Always below 1."""
    x, y = as_vec(x), as_vec(y)
    if _exact_pair(norm, x, y):
        g = lambda v: _exact_gauge(norm, v)  # noqa: E731
        if g(x) != 1 or g(y) != 1:
            raise NotOnSphere("min_feasible_epsilon needs unit vectors")
        if x.cross(y) == 0:
            raise DegeneratePair("y = ±x has no feasible epsilon below 1")
        return abs(g(x + y) ** 2 - g(x - y) ** 2) / 4
    for v in (x, y):
        if abs(gauge(norm, v) - 1.0) > sphere_tol:
            raise NotOnSphere(f"{v} is not on the unit sphere")
    xf, yf = x.to_float(), y.to_float()
    if abs(xf.cross(yf)) <= 1e-14:
        raise DegeneratePair("y = ±x has no feasible epsilon below 1")
    return abs(gauge(norm, x + y) ** 2 - gauge(norm, x - y) ** 2) / 4.0


# ---------------------------------------------------------------------------
# Partner solver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartnerResult:
    """Isosceles partner of ``x`` on the sphere of radius ``radius``.

    ``primary`` satisfies cross(x, primary) > 0.  When the defect vanishes
    on an arc wider than the configured plateau width, ``plateau`` holds
    the bracketing direction angles and ``primary`` is its midpoint.
    """

    x: Vec2
    primary: Vec2
    radius: float
    angle: float
    plateau: tuple[float, float] | None = None
    plateau_points: tuple[Vec2, Vec2] | None = None

    @property
    def has_plateau(self) -> bool:
        return self.plateau is not None


def _defect_fn(norm: NormModel, X: np.ndarray, r: np.ndarray):
    def f(theta):
        Y = r[:, None] * sphere_points(norm, theta)
        return norm.gauge_array(X + Y) - norm.gauge_array(X - Y)

    return f


def partner_angles(norm: NormModel, X, r=1.0, config: SolverConfig = DEFAULT_CONFIG):
    """Vectorized partner search for the rows of ``X`` (shape (n, 2)).

    Returns ``(theta, lo, hi, plateau)``: the partner direction angle, the
    inner plateau brackets, and a boolean plateau mask.  ``theta`` is not
    reduced modulo 2*pi; it lies in (theta_x, theta_x + pi).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n = X.shape[0]
    r = np.broadcast_to(np.asarray(r, dtype=float), (n,)).copy()
    theta_x = np.arctan2(X[:, 1], X[:, 0])
    nx = norm.gauge_array(X)
    vtol = config.value_tol * np.maximum(nx, r)
    f = _defect_fn(norm, X, r)

    start, stop = theta_x, theta_x + math.pi
    ends = np.stack([f(start), f(stop)])
    if np.any(ends[0] <= vtol) or np.any(ends[1] >= -vtol):
        raise BracketError("defect does not change sign between x and -x; invalid norm or degenerate input")

    a_lo, a_hi = bisect_boundary(lambda t: f(t) > vtol, start, stop, config.angle_tol)
    b_lo, b_hi = bisect_boundary(lambda t: f(t) >= -vtol, start, stop, config.angle_tol)
    r_lo, r_hi = bisect_boundary(lambda t: f(t) > 0.0, a_lo, b_hi, config.angle_tol)
    # One secant step inside the final bracket; f is affine to rounding at this scale.
    f_lo, f_hi = f(r_lo), f(r_hi)
    den = f_lo - f_hi
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.where(den > 0, r_lo + f_lo / den * (r_hi - r_lo), 0.5 * (r_lo + r_hi))
    root = np.clip(root, r_lo, r_hi)

    # The zero set is a single point when r <= ||x|| or the norm is strictly
    # convex; a wide near-zero band there is flatness, not a plateau.
    plateau = (b_lo - a_hi) > config.plateau_width
    plateau &= r > nx * (1.0 + 1e-12)
    if getattr(norm, "strictly_convex", False):
        plateau[:] = False
    theta = np.where(plateau, 0.5 * (a_hi + b_lo), root)
    return theta, a_hi, b_lo, plateau


def iso_partner(norm: NormModel, x, r: float = 1.0, config: SolverConfig = DEFAULT_CONFIG) -> PartnerResult:
    """The y on r*S_X with ‖x + y‖ = ‖x - y‖ and cross(x, y) > 0."""
    x = as_vec(x)
    if x.is_zero:
        raise ZeroVector("x must be nonzero")
    if not r > 0:
        raise NonPositiveRadius(f"radius must be positive, got {r}")
    X = x.to_array()[None, :]
    theta, lo, hi, plateau = partner_angles(norm, X, float(r), config)
    t = float(theta[0])
    px, py = r * sphere_points(norm, t)
    y = Vec2(float(px), float(py))
    if plateau[0]:
        ends = r * sphere_points(norm, np.array([lo[0], hi[0]]))
        return PartnerResult(
            x,
            y,
            float(r),
            reduce_angle(t),
            plateau=(reduce_angle(float(lo[0])), reduce_angle(float(hi[0]))),
            plateau_points=(Vec2(*ends[0]), Vec2(*ends[1])),
        )
    return PartnerResult(x, y, float(r), reduce_angle(t))


# ---------------------------------------------------------------------------
# A(x, eps)
# ---------------------------------------------------------------------------


def _ccw_offset(phi, start):
    return np.mod(np.asarray(phi, dtype=float) - start, 2.0 * math.pi)


@dataclass(frozen=True)
class OrthogonalityArc:
    """The connected piece D of A(x, eps) = D ∪ -D.

    D runs counterclockwise from ``endpoint_right`` through ``anchor`` (the
    exact partner of x) to ``endpoint_left``.  ``t_right``/``t_left`` are
    the parameters of the endpoints on the segments (1-t)x + ty and
    -(1-t)x + ty.
    """

    x: Vec2
    anchor: Vec2
    endpoint_right: Vec2
    endpoint_left: Vec2
    epsilon: float
    theta_right: float
    theta_left: float
    t_right: float
    t_left: float

    @property
    def width(self) -> float:
        return float(_ccw_offset(self.theta_left, self.theta_right))

    def contains_angles(self, phi) -> np.ndarray:
        """Membership of the sphere points at direction angles ``phi`` in D ∪ -D."""
        w = self.width
        phi = np.asarray(phi, dtype=float)
        return (_ccw_offset(phi, self.theta_right) <= w) | (_ccw_offset(phi + math.pi, self.theta_right) <= w)

    def contains(self, z) -> bool:
        return bool(self.contains_angles(direction_angle(z)))

    def distance_to_endpoints(self, phi) -> np.ndarray:
        """Angular distance of ``phi`` (or its antipode) to the nearest endpoint."""
        phi = np.asarray(phi, dtype=float)
        out = np.full(phi.shape, np.inf)
        for end in (self.theta_right, self.theta_left):
            for shift in (0.0, math.pi):
                d = _ccw_offset(phi + shift, end)
                out = np.minimum(out, np.minimum(d, 2.0 * math.pi - d))
        return out


def _segment_parameter(x: Vec2, y: Vec2, u: Vec2, sign: int) -> float:
    # Solve sign*(1-t) x + t y ∥ u for t.
    cx, cy = x.cross(u), y.cross(u)
    den = cx + cy if sign < 0 else cx - cy
    return float(cx / den) if den != 0 else 1.0


def aset_arc(norm: NormModel, x, eps: float, config: SolverConfig = DEFAULT_CONFIG) -> OrthogonalityArc:
    """Arc D of sphere points y with x ⊥_I^eps y (for x on S_X)."""
    _check_epsilon(eps)
    x = as_vec(x).to_float()
    if abs(gauge(norm, x) - 1.0) > config.sphere_tol:
        raise NotOnSphere(f"{x} is not on the unit sphere")
    part = iso_partner(norm, x, 1.0, config)
    y = part.primary
    tx = direction_angle(x)
    ty = tx + float(_ccw_offset(part.angle, tx))
    if eps == 0:
        return OrthogonalityArc(x, y, y, y, 0.0, part.angle, part.angle, 1.0, 1.0)

    X = x.to_array()[None, :]
    nx = gauge(norm, x)

    def approx(theta):
        U = sphere_points(norm, theta)
        lhs = np.abs(norm.gauge_array(X + U) ** 2 - norm.gauge_array(X - U) ** 2)
        return lhs <= 4.0 * eps * nx * norm.gauge_array(U)

    # Right piece: from x (fails) to y (holds); left piece: from y (holds) to -x (fails).
    _, t_right = bisect_boundary(lambda t: ~approx(t), [tx], [ty], config.angle_tol)
    t_left, _ = bisect_boundary(approx, [ty], [tx + math.pi], config.angle_tol)
    th_r, th_l = float(t_right[0]), float(t_left[0])
    ur = Vec2(*sphere_points(norm, th_r))
    vl = Vec2(*sphere_points(norm, th_l))
    return OrthogonalityArc(
        x,
        y,
        ur,
        vl,
        float(eps),
        reduce_angle(th_r),
        reduce_angle(th_l),
        _segment_parameter(x, y, ur, +1),
        _segment_parameter(x, y, vl, -1),
    )


def approx_iso_mask(norm: NormModel, x, eps: float, phi) -> np.ndarray:
    """Direct evaluation of x ⊥_I^eps z for sphere points at angles ``phi``."""
    _check_epsilon(eps)
    X = as_vec(x).to_array()[None, :]
    Z = sphere_points(norm, phi)
    lhs = np.abs(norm.gauge_array(X + Z) ** 2 - norm.gauge_array(X - Z) ** 2)
    return lhs <= 4.0 * eps * norm.gauge_array(X) * norm.gauge_array(Z)
