"""Acceptance runner: seven numbered criteria, each reported as PASS or FAIL.

``FULL`` uses the default resolutions; ``FAST`` uses step-0.2 grids, fewer
random starts and the widened minimax window, for CI.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .experiments import (
    GOLDEN,
    scalene_gap,
    m1_flat_minimax,
    perfect_partition_exists,
    refine_sliver_minimax,
    sliver_limit,
    triangle_optimum,
    trim_experiment,
)
from .geom import (
    ConvexPolygon,
    Isometry,
    Point,
    SeparatingLine,
    apply_isometry,
    area,
    clip_halfplane,
    congruent,
)
from .oracle import brute_force_coverage
from .search import SearchConfig
from .shapes import GridSpec, TriangleShape, grid, make_triangle, mirrored
from .sweep import Mode, SweepResult, best_coverage, sweep

ORACLE_TRIANGLES = ((4.2, 6.7), (3.0, 4.0), (2.0, 1.0), (4.8, 8.5), (1.5, 3.0))
REFERENCE_SHAPE = TriangleShape(4.2, 6.7)


@dataclass(frozen=True)
class Settings:
    name: str
    m1_step: float
    m12_step: float
    all_step: float
    cfg: SearchConfig
    refine_step: float
    refine_window: float
    refine_cfg: SearchConfig
    minimax_radius: float
    minimax_range: tuple[float, float]
    minimax_budget: float
    oracle_samples: int
    property_cases: int = 1000


FULL = Settings("full", 0.05, 0.05, 0.1, SearchConfig(), 0.01, 0.5, SearchConfig(random_starts=8),
                0.3, (0.935, 0.955), 7200.0, 12)
FAST = Settings("fast", 0.2, 0.2, 0.2, SearchConfig(random_starts=16), 0.05, 0.3,
                SearchConfig(random_starts=8), 0.5, (0.93, 0.96), 600.0, 10)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} [{self.number}] {self.title}: {self.detail} ({self.seconds:.1f}s)"


@dataclass
class Context:
    settings: Settings
    threads: int | None = None
    cache: dict = field(default_factory=dict)

    def full_sweep(self) -> tuple[SweepResult, float]:
        if "all" not in self.cache:
            st = self.settings
            t0 = time.perf_counter()
            r = sweep(GridSpec(st.all_step, st.all_step), Mode.ALL, st.cfg, refine=True,
                      refine_step=st.refine_step, refine_window=st.refine_window, refine_cfg=st.refine_cfg,
                      threads=self.threads)
            self.cache["all"] = (r, time.perf_counter() - t0)
        return self.cache["all"]


def criterion_1(ctx: Context) -> tuple[bool, str]:
    st = ctx.settings
    t0 = time.perf_counter()
    r = sweep(GridSpec(st.m1_step, st.m1_step), Mode.M1, st.cfg, threads=ctx.threads)
    x, value = refine_sliver_minimax(r.minimax_shape.x3, st.m1_step, Mode.M1, st.cfg)
    took = time.perf_counter() - t0
    root = m1_flat_minimax()
    exact = 10.0 / GOLDEN**2
    ok = (abs(x - 3.82) <= 0.05 and abs(value - 0.7639) <= 0.005
          and abs(root - exact) <= 1e-6 and took < 60.0)
    return ok, (f"refined argmin x3={x:.4f} (grid {r.minimax_shape.x3:.2f}), sliver limit={value:.5f}, root={root:.9f} vs 10/phi^2={exact:.9f}, "
                f"sweep {took:.1f}s")


def criterion_2(ctx: Context) -> tuple[bool, str]:
    st = ctx.settings
    t0 = time.perf_counter()
    value = sliver_limit(2.9289, Mode.M1M2, st.cfg)
    g = GridSpec(st.m12_step, st.m12_step)
    r = sweep(g, Mode.M1M2, st.cfg, threads=ctx.threads)
    row = [rec for rec in r.records if abs(rec.shape.y3 - g.y_min) < 1e-12]
    low = min(row, key=lambda rec: (rec.cov_best, rec.shape.x3))
    took = time.perf_counter() - t0
    ok = abs(value - 0.8284) <= 0.02 and abs(low.shape.x3 - 2.93) <= 0.1 and took < 900.0
    return ok, f"sliver limit={value:.5f}, y_min-row argmin x3={low.shape.x3:.3f}, {took:.1f}s"


def criterion_3(ctx: Context) -> tuple[bool, str]:
    st = ctx.settings
    r, took = ctx.full_sweep()
    s = r.minimax_shape
    dist = math.hypot(s.x3 - REFERENCE_SHAPE.x3, s.y3 - REFERENCE_SHAPE.y3)
    lo, hi = st.minimax_range
    bp = triangle_optimum(s, st.cfg)
    classes = sorted({p.piece_class for p in bp.all_partitions() if p.coverage >= bp.coverage - st.cfg.tie_tol})
    ok = (dist <= st.minimax_radius and lo <= r.minimax_value <= hi and {3, 5} <= set(classes)
          and took < st.minimax_budget)
    return ok, (f"minimax ({s.x3:.2f}, {s.y3:.2f}) at distance {dist:.2f}, value={r.minimax_value:.5f}, "
                f"tied piece classes {classes}, {took:.0f}s")


def criterion_4(ctx: Context) -> tuple[bool, str]:
    r, _ = ctx.full_sweep()
    tp = r.triple_point
    if tp is None:
        return False, "no cell has all three families within tie_tol"
    dist = math.hypot(tp.x - 4.5, tp.y - 5.3)
    return dist <= 0.4, f"triple point ({tp.x:.2f}, {tp.y:.2f}), distance {dist:.2f}"


def criterion_5(ctx: Context) -> tuple[bool, str]:
    tri = make_triangle(REFERENCE_SHAPE)
    rep = trim_experiment(REFERENCE_SHAPE, 0.001 * tri.area, ctx.settings.cfg)
    tol = max(1e-3, 0.5 * rep.eps_hat)
    ok = rep.observed < rep.alpha and abs(rep.discrepancy) <= tol
    return ok, (f"alpha={rep.alpha:.6f}, predicted={rep.predicted:.6f}, observed={rep.observed:.6f}, "
                f"discrepancy={rep.discrepancy:.2e}")


def criterion_6(ctx: Context) -> tuple[bool, str]:
    gap = scalene_gap(REFERENCE_SHAPE, ctx.settings.cfg)
    iso = [TriangleShape(5.0, y) for y in (1.0, 4.0, 8.0)]
    perfect = all(perfect_partition_exists(s) for s in iso) and not perfect_partition_exists(REFERENCE_SHAPE)
    ok = 0.045 <= gap <= 0.060 and perfect
    return ok, f"gap={gap:.5f}, perfect-partition predicate {'consistent' if perfect else 'inconsistent'}"


def _random_triangle(rng: np.random.Generator) -> ConvexPolygon:
    while True:
        pts = rng.uniform(-10.0, 10.0, size=(3, 2))
        (ax, ay), (bx, by), (cx, cy) = pts
        if abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)) > 1.0:
            return ConvexPolygon.from_points([Point(*p) for p in pts])


def _geometry_cases(n: int, seed: int = 7) -> list[str]:
    rng = np.random.default_rng(seed)
    failures = []
    for k in range(n):
        p = _random_triangle(rng)
        line = SeparatingLine(Point(*rng.uniform(-5.0, 5.0, 2)), float(rng.uniform(0.0, math.pi)))
        total = area(clip_halfplane(p, line, True)) + area(clip_halfplane(p, line, False))
        if abs(total - p.area) > 1e-9 * p.area:
            failures.append(f"case {k}: clip areas sum to {total} vs {p.area}")
        g = Isometry(bool(rng.integers(2)), float(rng.uniform(-math.pi, math.pi)), Point(*rng.uniform(-5, 5, 2)))
        a, b = Point(*rng.uniform(-10, 10, 2)), Point(*rng.uniform(-10, 10, 2))
        if abs((g(a) - g(b)).norm() - (a - b).norm()) > 1e-9 * max(1.0, (a - b).norm()):
            failures.append(f"case {k}: isometry changed a distance")
        if not congruent(p, apply_isometry(g, p)):
            failures.append(f"case {k}: image not congruent")
    return failures


def criterion_7(ctx: Context) -> tuple[bool, str]:
    st = ctx.settings
    notes = []
    failures = _geometry_cases(st.property_cases)
    notes.append(f"{st.property_cases - len(failures)}/{st.property_cases} geometry cases")
    oracle_ok = True
    margins = []
    for x, y in ORACLE_TRIANGLES:
        tri = make_triangle(TriangleShape(x, y))
        ref = brute_force_coverage(tri, st.oracle_samples)
        got = triangle_optimum(TriangleShape(x, y), st.cfg).coverage
        margins.append(got - ref)
        oracle_ok &= got >= ref - 0.002
    notes.append(f"oracle margin min {min(margins):+.4f}")
    mono_bad = 0
    mirror_gap = 0.0
    for s in grid(GridSpec(0.5, 0.5)):
        m1 = best_coverage(s, Mode.M1, st.cfg).cov_best
        m12 = best_coverage(s, Mode.M1M2, st.cfg).cov_best
        full = best_coverage(s, Mode.ALL, st.cfg).cov_best
        if not (m1 <= m12 + 1e-12 and m12 <= full + 1e-12):
            mono_bad += 1
        other = best_coverage(mirrored(s), Mode.ALL, st.cfg).cov_best
        mirror_gap = max(mirror_gap, abs(other - full))
    notes.append(f"monotonicity violations {mono_bad}, max mirror gap {mirror_gap:.1e}")
    ok = not failures and oracle_ok and mono_bad == 0 and mirror_gap <= 2e-3
    return ok, ", ".join(notes)


CRITERIA: list[tuple[int, str, Callable[[Context], tuple[bool, str]]]] = [
    (1, "bisector-only minimax", criterion_1),
    (2, "bisector+quad minimax", criterion_2),
    (3, "full minimax", criterion_3),
    (4, "triple point", criterion_4),
    (5, "corner trimming", criterion_5),
    (6, "scalene coverage gap", criterion_6),
    (7, "property suites", criterion_7),
]


def run_criterion(number: int, ctx: Context) -> CriterionResult:
    _, title, fn = next(c for c in CRITERIA if c[0] == number)
    t0 = time.perf_counter()
    try:
        ok, detail = fn(ctx)
    except Exception as exc:  # a crash is a failed criterion, not a crashed runner
        ok, detail = False, f"error: {exc!r}"
    return CriterionResult(number, title, ok, detail, time.perf_counter() - t0)


def run_all(fast: bool = False, emit: Callable[[str], None] = print, threads: int | None = None,
            only: tuple[int, ...] | None = None, seed: int | None = None) -> list[CriterionResult]:
    st = FAST if fast else FULL
    if seed is not None:
        st = replace(st, cfg=replace(st.cfg, rng_seed=seed), refine_cfg=replace(st.refine_cfg, rng_seed=seed))
    ctx = Context(st, threads)
    out = []
    for number, _, _ in CRITERIA:
        if only and number not in only:
            continue
        res = run_criterion(number, ctx)
        emit(res.line())
        out.append(res)
    return out
