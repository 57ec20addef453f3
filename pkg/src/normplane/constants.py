"""Global and local geometric constants of a normed plane.

All sweeps run over direction angles.  Local quantities are even
(``beta(x) = beta(-x)`` and likewise for the moduli), so sweeps cover the
half sphere ``[0, pi)``.  For polygonal norms the sample set is an
edge-wise subdivision that always contains the vertices; for smooth norms it
is a uniform angle grid.  The best sample is then refined by nested grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ._numerics import DEFAULT_CONFIG, SolverConfig, bisect_boundary, cyclic_neighbors, zoom_refine
from .errors import ComputationError, InvalidEpsilon, InvalidLambda, NotOnSphere
from .iso import is_approx_iso, partner_angles
from .norms import NormModel, Number, Vec2, as_vec, gauge, sphere_points

SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AttainmentPair:
    x: Vec2
    y: Vec2
    value: Number
    iso_defect: Number
    approx_epsilon: float | None = None


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""


@dataclass
class ConstantsReport:
    james: Number
    schaffer: float
    james_generalized: dict[float, float]
    delta_curve: list[tuple[float, float]]
    rho_curve: list[tuple[float, float]]
    rho_prime_curve: list[tuple[float, float]]
    james_attainment: list[AttainmentPair]
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


# ---------------------------------------------------------------------------
# Sample sets and sweeps
# ---------------------------------------------------------------------------


def half_sphere_samples(norm: NormModel, config: SolverConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Sorted direction angles in [0, pi) covering the half sphere."""
    if norm.is_polyhedral:
        cyc = norm.polygon.vertex_array
        m = norm.polygon.m
        t = np.arange(config.edge_samples) / config.edge_samples
        pts = np.concatenate([cyc[k] + t[:, None] * (cyc[k + 1] - cyc[k]) for k in range(m)])
        ang = np.mod(np.arctan2(pts[:, 1], pts[:, 0]), math.pi)
    else:
        ang = math.pi * np.arange(config.sweep_size) / config.sweep_size
    return np.unique(ang)


def _sweep(
    func: Callable[[np.ndarray], np.ndarray],
    samples: np.ndarray,
    *,
    maximize: bool,
    config: SolverConfig,
    period: float = math.pi,
) -> tuple[float, float, np.ndarray]:
    vals = np.asarray(func(samples), dtype=float)
    i = int(np.argmax(vals) if maximize else np.argmin(vals))
    prev, nxt = cyclic_neighbors(samples, i, period)
    center = float(samples[i])
    half = max(center - prev, nxt - center)
    best, arg = zoom_refine(
        func,
        center,
        half,
        maximize=maximize,
        points=config.refine_points,
        rounds=config.refine_rounds,
        best_value=float(vals[i]),
    )
    return best, arg, vals


def _check_unit(norm: NormModel, x: Vec2, config: SolverConfig) -> None:
    if abs(gauge(norm, x) - 1.0) > config.sphere_tol:
        raise NotOnSphere(f"{x} is not on the unit sphere (gauge {gauge(norm, x)!r})")


def _check_lambda(lam) -> None:
    if not (0 < lam < 1):
        raise InvalidLambda(f"lambda must lie in (0, 1), got {lam}")


# ---------------------------------------------------------------------------
# Local constants
# ---------------------------------------------------------------------------


def beta_points(norm: NormModel, X: np.ndarray, config: SolverConfig = DEFAULT_CONFIG) -> np.ndarray:
    """β at each row of X (unit vectors): ‖x + y‖ with y the isosceles partner."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    theta, *_ = partner_angles(norm, X, 1.0, config)
    return norm.gauge_array(X + sphere_points(norm, theta))


def beta_angles(norm: NormModel, theta, config: SolverConfig = DEFAULT_CONFIG) -> np.ndarray:
    return beta_points(norm, sphere_points(norm, np.atleast_1d(theta)), config)


def beta(norm: NormModel, x, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Local James constant β(x) for x on S_X."""
    x = as_vec(x).to_float()
    _check_unit(norm, x, config)
    return float(beta_points(norm, x.to_array(), config)[0])


def alpha(norm: NormModel, x, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Local Schäffer constant α(x); equal to β(x) in the plane."""
    return beta(norm, x, config)


def beta_lambda_points(norm: NormModel, X: np.ndarray, lam: float, config: SolverConfig = DEFAULT_CONFIG) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    r = (1.0 - lam) / lam
    theta, *_ = partner_angles(norm, X, r, config)
    Y = sphere_points(norm, theta)
    return norm.gauge_array(lam * X + (1.0 - lam) * Y)


def beta_lambda(norm: NormModel, x, lam: float, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """β(λ, x) = ‖λx + (1-λ)y‖ where x ⊥_I ((1-λ)/λ) y, y on S_X."""
    _check_lambda(lam)
    x = as_vec(x).to_float()
    _check_unit(norm, x, config)
    return float(beta_lambda_points(norm, x.to_array(), lam, config)[0])


# ---------------------------------------------------------------------------
# James, generalized James, Schäffer
# ---------------------------------------------------------------------------


def james(norm: NormModel, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """J(X).  Polygons: max of β over the extreme points; otherwise a refined sweep."""
    if norm.is_polyhedral:
        X = np.array([[float(v.x), float(v.y)] for v in norm.polygon.half_vertices])
        return float(np.max(beta_points(norm, X, config)))
    best, _, _ = _sweep(lambda t: beta_angles(norm, t, config), half_sphere_samples(norm, config), maximize=True, config=config)
    return best


def james_generalized(norm: NormModel, lam: float, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """J(λ, X) as the refined sweep maximum of β(λ, ·) over the half sphere."""
    _check_lambda(lam)

    def f(t):
        return beta_lambda_points(norm, sphere_points(norm, np.atleast_1d(t)), lam, config)

    best, _, _ = _sweep(f, half_sphere_samples(norm, config), maximize=True, config=config)
    return best


def schaffer(norm: NormModel, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """S(X) = inf of α = β over the sphere, by refined sweep."""
    best, _, _ = _sweep(lambda t: beta_angles(norm, t, config), half_sphere_samples(norm, config), maximize=False, config=config)
    return best


def james_attainment(norm: NormModel, tol: float = 1e-9, config: SolverConfig = DEFAULT_CONFIG) -> list[AttainmentPair]:
    """Pairs (x, y) on S_X x S_X attaining J(X) within ``tol``.

    Rational polygons are handled by the exact kernel (defects are exact
    zeros); float polygons use the extreme points; other norms return the
    sweep samples within ``tol`` of the refined maximum.
    """
    if norm.is_polyhedral and getattr(norm, "is_rational", False):
        from .exact import exact_james_attainment

        return [AttainmentPair(p.x, p.y, p.value, p.iso_defect) for p in exact_james_attainment(norm, Fraction(tol))]

    if norm.is_polyhedral:
        X = np.array([[float(v.x), float(v.y)] for v in norm.polygon.half_vertices])
        best = None
    else:
        samples = half_sphere_samples(norm, config)
        best, arg, vals = _sweep(lambda t: beta_angles(norm, t, config), samples, maximize=True, config=config)
        keep = samples[vals >= best - tol]
        X = sphere_points(norm, np.append(keep, arg))
    theta, *_ = partner_angles(norm, X, 1.0, config)
    Y = sphere_points(norm, theta)
    plus, minus = norm.gauge_array(X + Y), norm.gauge_array(X - Y)
    vals = np.minimum(plus, minus)
    if best is None:
        best = float(np.max(vals))
    out = []
    for i in np.flatnonzero(vals >= best - tol):
        out.append(AttainmentPair(Vec2(*X[i]), Vec2(*Y[i]), float(vals[i]), float(plus[i] - minus[i])))
    return out


# ---------------------------------------------------------------------------
# Moduli
# ---------------------------------------------------------------------------


def _check_modulus_eps(eps, upper: float, closed: bool) -> None:
    ok = 0 <= eps <= upper if closed else 0 <= eps < upper
    if not ok:
        bracket = "]" if closed else ")"
        raise InvalidEpsilon(f"epsilon must lie in [0, {upper:g}{bracket}, got {eps}")


def distance_partner_angles(norm: NormModel, theta_x, eps: float, kind: str, config: SolverConfig = DEFAULT_CONFIG):
    """For x = s(theta_x), the direction of y on the ccw arc toward -x with ‖x - y‖ = eps.

    ``kind="delta"`` returns the first such direction (smallest angle with
    ‖x - y‖ >= eps); ``kind="rho"`` the last (largest angle with
    ‖x - y‖ <= eps).  ‖x - y‖ is nondecreasing along the arc and ‖x + y‖
    nonincreasing, so these are the optimal representatives on a plateau.
    """
    theta_x = np.atleast_1d(np.asarray(theta_x, dtype=float))
    X = sphere_points(norm, theta_x)

    def dist(t):
        return norm.gauge_array(X - sphere_points(norm, t))

    lo = theta_x
    hi = theta_x + math.pi
    if kind == "delta":
        _, t = bisect_boundary(lambda t: dist(t) < eps, lo, hi, config.angle_tol)
    elif kind == "rho":
        t, _ = bisect_boundary(lambda t: dist(t) <= eps, lo, hi, config.angle_tol)
    else:
        raise ValueError(kind)
    return X, t


def _modulus_values(norm: NormModel, theta_x, eps: float, kind: str, config: SolverConfig) -> np.ndarray:
    X, t = distance_partner_angles(norm, theta_x, eps, kind, config)
    return 1.0 - 0.5 * norm.gauge_array(X + sphere_points(norm, t))


def _delta_sweep(norm: NormModel, eps: float, config: SolverConfig):
    return _sweep(lambda t: _modulus_values(norm, t, eps, "delta", config), half_sphere_samples(norm, config), maximize=False, config=config)


def delta(norm: NormModel, eps: float, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """Modulus of convexity δ_X(eps) for eps in [0, 2)."""
    _check_modulus_eps(eps, 2.0, closed=False)
    if eps == 0:
        return 0.0
    best, _, _ = _delta_sweep(norm, float(eps), config)
    return max(best, 0.0)


def rho(norm: NormModel, eps: float, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """sup{1 - ‖x+y‖/2 : x, y in S_X, ‖x-y‖ <= eps} for eps in [0, 2]."""
    _check_modulus_eps(eps, 2.0, closed=True)
    if eps == 0:
        return 0.0
    if eps == 2:
        return 1.0
    samples = half_sphere_samples(norm, config)
    best, _, _ = _sweep(lambda t: _modulus_values(norm, t, float(eps), "rho", config), samples, maximize=True, config=config)
    return best


def _rho_prime_grid(norm: NormModel, n: int) -> np.ndarray:
    ang = math.pi * np.arange(n) / n
    if norm.is_polyhedral:
        v = norm.polygon.vertex_array
        ang = np.concatenate([ang, np.mod(np.arctan2(v[:, 1], v[:, 0]), math.pi)])
    return np.unique(ang)


def rho_prime(norm: NormModel, eps: float, config: SolverConfig = DEFAULT_CONFIG) -> float:
    """sup over x, y in S_X of (‖x + eps y‖ + ‖x - eps y‖)/2 - 1, by 2-D sweep."""
    if eps < 0:
        raise InvalidEpsilon(f"epsilon must be nonnegative, got {eps}")
    if eps == 0:
        return 0.0
    eps = float(eps)

    def f(tx, ty):
        X = sphere_points(norm, tx)
        Y = eps * sphere_points(norm, ty)
        return 0.5 * (norm.gauge_array(X + Y) + norm.gauge_array(X - Y)) - 1.0

    grid = _rho_prime_grid(norm, config.rho_prime_grid)
    vals = f(grid[:, None], grid[None, :])
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best = float(vals[i, j])
    cx, cy = float(grid[i]), float(grid[j])
    h = 2.0 * math.pi / config.rho_prime_grid
    k = 17
    for _ in range(config.refine_rounds + 2):
        gx = np.linspace(cx - h, cx + h, k)
        gy = np.linspace(cy - h, cy + h, k)
        v = f(gx[:, None], gy[None, :])
        a, b = np.unravel_index(int(np.argmax(v)), v.shape)
        if v[a, b] > best:
            best, cx, cy = float(v[a, b]), float(gx[a]), float(gy[b])
        h = 2.0 * (2.0 * h / (k - 1))
    return min(max(best, 0.0), eps)


def delta_attainment(norm: NormModel, eps: float, tol: float = 1e-9, config: SolverConfig = DEFAULT_CONFIG) -> list[AttainmentPair]:
    """Minimizing pairs of δ_X(eps) with ‖u - v‖ = eps, annotated with ε₀.

    ε₀ = |1 + δ² - 2δ - eps²/4|; every returned pair is checked to satisfy
    u ⊥_I^{ε₀ + tol} v.
    """
    if not (0 < eps < 2):
        raise InvalidEpsilon(f"epsilon must lie in (0, 2), got {eps}")
    eps = float(eps)
    samples = half_sphere_samples(norm, config)
    best, arg, vals = _delta_sweep(norm, eps, config)
    d = max(best, 0.0)
    eps0 = abs(1.0 + d * d - 2.0 * d - eps * eps / 4.0)
    keep = np.append(samples[vals <= best + tol / 4.0], arg)
    X, t = distance_partner_angles(norm, keep, eps, "delta", config)
    Y = sphere_points(norm, t)
    plus, minus = norm.gauge_array(X + Y), norm.gauge_array(X - Y)
    out = []
    for i in range(len(keep)):
        u, v = Vec2(*X[i]), Vec2(*Y[i])
        if not is_approx_iso(norm, u, v, min(eps0 + tol, 1.0 - 1e-15)):
            raise ComputationError(f"attainment pair {u}, {v} violates u ⊥_I^(ε₀+tol) v with ε₀ = {eps0}")
        out.append(AttainmentPair(u, v, float(1.0 - 0.5 * plus[i]), float(plus[i] - minus[i]), eps0))
    return out


# ---------------------------------------------------------------------------
# Cross-checks through the moduli
# ---------------------------------------------------------------------------


def james_from_delta(norm: NormModel, grid: int = 12, config: SolverConfig = DEFAULT_CONFIG, tol: float = 1e-7) -> float:
    """sup{eps : eps < 2 - 2δ(eps)}, bracketed on a grid over [sqrt 2 - 0.01, 2].

    h(eps) = 2 - 2δ(eps) - eps is strictly decreasing; h(2) <= 0 always, so
    the right end is never evaluated.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    eps = np.linspace(SQRT2 - 0.01, 2.0, grid)

    def h(e):
        return 2.0 - 2.0 * delta(norm, e, config) - e

    signs = [h(float(e)) > 0 for e in eps[:-1]]
    positive = [k for k, s in enumerate(signs) if s]
    i = positive[-1] if positive else -1
    if i < 0:
        return float(eps[0])
    lo, hi = bisect_boundary(lambda e: np.array([h(float(e[0])) > 0]), [eps[i]], [eps[i + 1]], tol)
    return float(0.5 * (lo[0] + hi[0]))


def schaffer_from_rho(norm: NormModel, grid: int = 12, config: SolverConfig = DEFAULT_CONFIG, tol: float = 1e-7) -> float:
    """inf{eps : eps > 2 - 2ρ(eps)}, bracketed on a grid over [0.99, sqrt 2 + 0.01].

    g(eps) = eps - 2 + 2ρ(eps) is strictly increasing.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    eps = np.linspace(0.99, SQRT2 + 0.01, grid)

    def g(e):
        return e - 2.0 + 2.0 * rho(norm, e, config)

    j = None
    for k in range(grid):
        if g(float(eps[k])) > 0:
            j = k
            break
    if j is None:
        raise ComputationError("no sign change of eps - 2 + 2ρ(eps) below sqrt 2 + 0.01")
    if j == 0:
        return float(eps[0])
    lo, hi = bisect_boundary(lambda e: np.array([g(float(e[0])) <= 0]), [eps[j - 1]], [eps[j]], tol)
    return float(0.5 * (lo[0] + hi[0]))


def epsilon_grid(n: int = 20, upper: float = 2.0) -> list[float]:
    """n strictly increasing values in [0, upper)."""
    return [upper * k / n for k in range(n)]


def constants_report(
    norm: NormModel,
    *,
    lambdas: Sequence[float] = (0.25, 0.5, 0.75),
    eps_values: Sequence[float] | None = None,
    tol: float = 1e-9,
    config: SolverConfig = DEFAULT_CONFIG,
) -> ConstantsReport:
    eps_values = list(eps_values) if eps_values is not None else epsilon_grid()
    return ConstantsReport(
        james=james(norm, config),
        schaffer=schaffer(norm, config),
        james_generalized={float(l): james_generalized(norm, l, config) for l in lambdas},
        delta_curve=[(e, delta(norm, e, config)) for e in eps_values],
        rho_curve=[(e, rho(norm, e, config)) for e in eps_values],
        rho_prime_curve=[(e, rho_prime(norm, e, config)) for e in eps_values],
        james_attainment=james_attainment(norm, tol, config),
    )
