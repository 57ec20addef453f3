"""Brute-force ground truth evaluated literally from the definitions.

Nothing here calls the partner solver, the bisection helpers or the sweeps
of :mod:`normplane.constants`; only gauge evaluation and the angle
parametrization of the sphere are shared.  Sup-type oracles return lower
bounds of the true value and inf-type oracles upper bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidInput, ZeroVector
from .norms import NormModel, Vec2, as_vec, sphere_points

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GridSpec:
    n_directions: int = 2048
    refine_rounds: int = 3
    tolerance: float = 3e-3
    refine_points: int = 33
    chunk: int = 128
    candidates: int = 4

    def __post_init__(self):
        if self.n_directions < 8:
            raise InvalidInput("n_directions must be >= 8")
        if not self.tolerance > 0:
            raise InvalidInput("tolerance must be positive")


def _full_angles(n: int) -> np.ndarray:
    return TWO_PI * np.arange(n) / n


def _half_angles(n: int) -> np.ndarray:
    # Antipodal points are equivalent for all pair objectives below.
    return _full_angles(n)[: (n + 1) // 2]


def _better(a: float, b: float, maximize: bool) -> bool:
    return a > b if maximize else a < b


def _pair_candidates(
    norm: NormModel,
    ax: np.ndarray,
    ay: np.ndarray,
    objective: Callable[[np.ndarray, np.ndarray], np.ndarray],
    maximize: bool,
    chunk: int,
    symmetric: bool = False,
) -> list[tuple[float, int, int]]:
    """Best pair of each row block, in fixed row-major order.

    With ``symmetric`` the objective is assumed invariant under swapping x and
    y (and ax is ay), so only columns j >= first row of the block are scanned.
    """
    X = sphere_points(norm, ax)
    Y = sphere_points(norm, ay)
    out = []
    for start in range(0, len(ax), chunk):
        xs = X[start : start + chunk, None, :]
        col0 = start if symmetric else 0
        ys = Y[None, col0:, :]
        vals = objective(norm.gauge_array(xs + ys), norm.gauge_array(xs - ys))
        flat = int(np.argmax(vals) if maximize else np.argmin(vals))
        i, j = np.unravel_index(flat, vals.shape)
        out.append((float(vals[i, j]), start + int(i), col0 + int(j)))
    return out


def _pair_reduce(norm, ax, ay, objective, maximize, chunk) -> tuple[float, int, int]:
    cands = _pair_candidates(norm, ax, ay, objective, maximize, chunk)
    best = cands[0]
    for c in cands[1:]:
        if _better(c[0], best[0], maximize):
            best = c
    return best


def _refine(norm, objective, maximize, grid: "GridSpec", cx: float, cy: float, best: float, h: float) -> float:
    """Nested-grid search; the window only shrinks once the optimum is interior."""
    k = grid.refine_points
    shrinks = 0
    for _ in range(8 * grid.refine_rounds):
        gx = np.linspace(cx - h, cx + h, k)
        gy = np.linspace(cy - h, cy + h, k)
        v, a, b = _pair_reduce(norm, gx, gy, objective, maximize, k)
        improved = _better(v, best, maximize)
        if improved:
            best, cx, cy = v, float(gx[a]), float(gy[b])
        if improved and (a in (0, k - 1) or b in (0, k - 1)):
            continue
        shrinks += 1
        if shrinks == grid.refine_rounds:
            break
        h = 2.0 * (2.0 * h / (k - 1))
    return best


def _pair_oracle(norm, grid: GridSpec, objective, maximize: bool, ax=None, ay=None) -> float:
    symmetric = ax is None
    if symmetric:
        ax = ay = _half_angles(grid.n_directions)
    cands = _pair_candidates(norm, ax, ay, objective, maximize, grid.chunk, symmetric)
    cands.sort(key=lambda c: -c[0] if maximize else c[0])
    # Several block winners are refined: on polygons with long thin sides the
    # grid optimum need not sit in the basin of the true optimum.
    h = 2.0 * TWO_PI / grid.n_directions
    best = cands[0][0]
    for v, i, j in cands[: grid.candidates]:
        r = _refine(norm, objective, maximize, grid, float(ax[i]), float(ay[j]), v, h)
        if _better(r, best, maximize):
            best = r
    return float(best)


def oracle_james(norm: NormModel, grid: GridSpec = GridSpec()) -> float:
    """max over grid pairs of min{‖x+y‖, ‖x-y‖} (a lower bound of J)."""
    return _pair_oracle(norm, grid, np.minimum, maximize=True)


def oracle_schaffer(norm: NormModel, grid: GridSpec = GridSpec()) -> float:
    """min over grid pairs of max{‖x+y‖, ‖x-y‖} (an upper bound of S)."""
    return _pair_oracle(norm, grid, np.maximum, maximize=False)


def _modulus_oracle(norm, eps: float, grid: GridSpec, kind: str) -> float:
    if kind == "delta":

        def objective(plus, minus):
            return np.where(minus >= eps, 1.0 - 0.5 * plus, np.inf)

        maximize = False
    else:

        def objective(plus, minus):
            return np.where(minus <= eps, 1.0 - 0.5 * plus, -np.inf)

        maximize = True
    # x over the half sphere, y over the full sphere: the constraint is not even in y alone.
    return _pair_oracle(norm, grid, objective, maximize, _half_angles(grid.n_directions), _full_angles(grid.n_directions))


def oracle_delta(norm: NormModel, eps: float, grid: GridSpec = GridSpec()) -> float:
    """min over grid pairs with ‖x-y‖ >= eps of 1 - ‖x+y‖/2."""
    if eps == 0:
        return 0.0
    return _modulus_oracle(norm, float(eps), grid, "delta")


def oracle_rho(norm: NormModel, eps: float, grid: GridSpec = GridSpec()) -> float:
    """max over grid pairs with ‖x-y‖ <= eps of 1 - ‖x+y‖/2."""
    return _modulus_oracle(norm, float(eps), grid, "rho")


def oracle_partner(norm: NormModel, x, grid: GridSpec = GridSpec(), r: float = 1.0) -> Vec2:
    """Grid point of r*S_X minimizing |‖x+z‖ - ‖x-z‖| with cross(x, z) > 0, refined."""
    x = as_vec(x).to_float()
    if x.is_zero:
        raise ZeroVector("x must be nonzero")
    xa = x.to_array()

    def score(theta):
        Z = r * sphere_points(norm, theta)
        d = np.abs(norm.gauge_array(xa + Z) - norm.gauge_array(xa - Z))
        side = xa[0] * Z[:, 1] - xa[1] * Z[:, 0]
        return np.where(side > 0, d, np.inf)

    ang = _full_angles(grid.n_directions)
    vals = score(ang)
    i = int(np.argmin(vals))
    best, c = float(vals[i]), float(ang[i])
    h = TWO_PI / grid.n_directions
    k = grid.refine_points
    for _ in range(grid.refine_rounds + 6):
        g = np.linspace(c - h, c + h, k)
        v = score(g)
        a = int(np.argmin(v))
        if v[a] < best:
            best, c = float(v[a]), float(g[a])
        h = 2.0 * (2.0 * h / (k - 1))
    px, py = r * sphere_points(norm, c)
    return Vec2(float(px), float(py))
