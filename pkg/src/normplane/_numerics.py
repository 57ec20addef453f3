"""Vectorized bisection and grid-zoom refinement shared by the solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and sweep sizes.  Every numerical result is tied to one of these."""

    angle_tol: float = 1e-12
    value_tol: float = 1e-10
    plateau_width: float = 1e-8
    sweep_size: int = 4096
    edge_samples: int = 64
    refine_points: int = 33
    refine_rounds: int = 7
    rho_prime_grid: int = 256
    sphere_tol: float = 1e-9


DEFAULT_CONFIG = SolverConfig()


def bisect_boundary(
    pred: Callable[[np.ndarray], np.ndarray],
    lo,
    hi,
    tol: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Locate the switch of a monotone predicate, elementwise.

    ``pred`` is assumed True at ``lo`` and False at ``hi`` (neither end is
    evaluated).  Returns arrays ``(lo, hi)`` with ``pred(lo)`` True,
    ``pred(hi)`` False and ``hi - lo <= tol``.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    width = float(np.max(np.abs(hi - lo))) if lo.size else 0.0
    if width <= tol:
        return lo, hi
    n_iter = int(math.ceil(math.log2(width / tol))) + 1
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        ok = np.asarray(pred(mid), dtype=bool)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return lo, hi


def zoom_refine(
    func: Callable[[np.ndarray], np.ndarray],
    center: float,
    half_width: float,
    *,
    maximize: bool,
    points: int = 33,
    rounds: int = 7,
    best_value: float | None = None,
) -> tuple[float, float]:
    """Nested-grid search for the best value of ``func`` near ``center``.

    Each round samples ``points`` equally spaced abscissae on
    ``[center - h, center + h]``, recentres on the best sample and shrinks
    ``h`` to two grid steps.  The incumbent is never replaced by a worse
    sample, so the result is monotone in ``rounds``.
    """
    sign = 1.0 if maximize else -1.0
    best_x = float(center)
    if best_value is None:
        best_value = float(func(np.array([best_x]))[0])
    h = float(half_width)
    for _ in range(rounds):
        xs = np.linspace(best_x - h, best_x + h, points)
        vals = np.asarray(func(xs), dtype=float)
        i = int(np.argmax(sign * vals))
        if sign * vals[i] > sign * best_value:
            best_value = float(vals[i])
            best_x = float(xs[i])
        h = 2.0 * (2.0 * h / (points - 1))
    return best_value, best_x


def cyclic_neighbors(angles: np.ndarray, i: int, period: float) -> tuple[float, float]:
    """Previous and next abscissae of sorted ``angles[i]`` on a circle of ``period``."""
    n = len(angles)
    prev = angles[i - 1] if i > 0 else angles[-1] - period
    nxt = angles[i + 1] if i + 1 < n else angles[0] + period
    return float(prev), float(nxt)
