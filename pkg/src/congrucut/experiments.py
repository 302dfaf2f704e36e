"""Numerical experiments built on the search: corner trimming, perfect
partitions, the coverage gap of scalene triangles and sliver limits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .candidates import method1_candidates, method1_coverage, method2_candidates, method3_seeds
from .geom import ConvexPolygon, TrimSpec, trim_corner
from .search import BestPartition, SearchConfig, optimize
from .shapes import BASE, TriangleShape, make_triangle, metrics
from .sweep import Mode, best_coverage

SLIVER_HEIGHTS = (0.4, 0.2, 0.1)


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class TrimReport:
    alpha: float
    eps_hat: float
    predicted: float
    observed: float
    trimmed: ConvexPolygon | None = None

    @property
    def discrepancy(self) -> float:
        return self.observed - self.predicted


def predicted_trim_coverage(alpha: float, eps_hat: float) -> float:
    """Coverage after both pieces lose ``eps_hat`` and the region loses ``2 eps_hat``."""
    return (alpha - 2.0 * eps_hat) / (1.0 - 2.0 * eps_hat)


def triangle_optimum(s: TriangleShape, cfg: SearchConfig) -> BestPartition:
    tri = make_triangle(s)
    seeds = [*method1_candidates(tri), *method2_candidates(tri), *method3_seeds(tri)]
    return optimize(tri, seeds, cfg)


def trim_experiment(s: TriangleShape, eps: float, cfg: SearchConfig = SearchConfig()) -> TrimReport:
    """Trim corners A and B by ``eps`` each and re-optimize."""
    tri = make_triangle(s)
    if eps > 0.01 * tri.area:
        raise InvalidInput(f"eps={eps} exceeds 1% of the triangle area {tri.area}")
    best = triangle_optimum(s, cfg)
    alpha = best.coverage
    eps_hat = eps / tri.area
    if eps == 0.0:
        return TrimReport(alpha, 0.0, alpha, alpha, tri)
    trimmed = trim_corner(tri, TrimSpec(0, eps))
    # A became two vertices, so B moved from index 1 to 2
    trimmed = trim_corner(trimmed, TrimSpec(2, eps))
    seeds = [(p.line, p.map) for p in best.all_partitions()]
    observed = optimize(trimmed, seeds, cfg).coverage
    return TrimReport(alpha, eps_hat, predicted_trim_coverage(alpha, eps_hat), observed, trimmed)


def perfect_partition_exists(s: TriangleShape, tol: float = 1e-6) -> bool:
    """Isosceles test; a mirror cut along the symmetry axis is then perfect."""
    m = metrics(s)
    a, b, c = sorted((m.side_a, m.side_b, m.side_c))
    scale = c
    return (b - a) <= tol * scale or (c - b) <= tol * scale


def scalene_gap(s: TriangleShape, cfg: SearchConfig = SearchConfig()) -> float:
    """Uncovered fraction of a scalene triangle under its best partition found."""
    if perfect_partition_exists(s):
        raise InvalidInput(f"({s.x3}, {s.y3}) is isosceles; a perfect partition exists")
    return 1.0 - triangle_optimum(s, cfg).coverage


def sliver_limit(x3: float, mode: Mode, cfg: SearchConfig = SearchConfig(),
                 heights: tuple[float, ...] = SLIVER_HEIGHTS) -> float:
    """Best coverage extrapolated linearly to zero height."""
    if not 0.0 < x3 < 5.0:
        raise InvalidInput("x3 must lie strictly between 0 and 5")
    ys = np.array(heights)
    covs = np.array([best_coverage(TriangleShape(x3, y), mode, cfg).cov_best for y in ys])
    slope, intercept = np.polyfit(ys, covs, 1)
    return float(intercept)


def refine_sliver_minimax(x0: float, step: float, mode: Mode, cfg: SearchConfig = SearchConfig(),
                          heights: tuple[float, ...] = SLIVER_HEIGHTS) -> tuple[float, float]:
    """Minimize the sliver limit over ``x3`` in ``[x0 - step, x0 + step]``.

    Returns ``(x3, limit)``.
    """
    lo, hi = max(x0 - step, 1e-3), min(x0 + step, 5.0 - 1e-3)
    res = minimize_scalar(lambda x: sliver_limit(x, mode, cfg, heights), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-5})
    return float(res.x), float(res.fun)


def m1_flat_coverage(x3: float) -> float:
    """Best bisector coverage of the zero-height triangle with apex at ``x3``."""
    a, b, c = BASE - x3, x3, BASE  # |BC|, |CA|, |AB| in the flat limit
    return max(method1_coverage(c, b), method1_coverage(a, c), method1_coverage(b, a))


def m1_flat_minimax() -> float:
    """Apex position where the bisector-at-B and bisector-at-C coverages cross.

    For ``x <= 5`` they are ``2(10 - x)/(20 - x)`` and ``x/5``; the first
    decreases and the second increases in ``x``, so the crossing is the
    minimax of their maximum.
    """
    return brentq(lambda x: method1_coverage(BASE, BASE - x) - method1_coverage(x, BASE - x), 1.0, 5.0,
                  xtol=1e-14, rtol=1e-15)


GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0
