"""Sweeps over triangle shapes and the minimax extraction."""

from __future__ import annotations

import enum
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .candidates import (
    SearchFailed,
    TriangleLike,
    as_triangle,
    method1_candidates,
    method2_candidates,
    method3_seeds,
)
from .geom import Point
from .partition import Family, Partition
from .search import SearchConfig, optimize
from .shapes import GridSpec, TriangleShape, grid

log = logging.getLogger(__name__)

THREADS_ENV = "CONGRUCUT_THREADS"


class Mode(enum.Enum):
    M1 = "m1"
    M1M2 = "m1m2"
    ALL = "all"


@dataclass
class SweepRecord:
    shape: TriangleShape
    cov_m1: float
    cov_m2: float | None
    cov_search: float | None
    cov_best: float
    winner: Family
    piece_class: int
    # best partition of the winning family; kept in memory, not serialized
    best: Partition | None = field(default=None, repr=False, compare=False)
    # configurations worth handing to neighbouring cells
    warm: tuple = field(default=(), repr=False, compare=False)


@dataclass
class SweepResult:
    mode: Mode
    records: list[SweepRecord]
    minimax_shape: TriangleShape
    minimax_value: float
    triple_point: Point | None = None
    refined: list[SweepRecord] = field(default_factory=list)

    def all_records(self) -> list[SweepRecord]:
        return self.records + self.refined


class CellError(RuntimeError):
    def __init__(self, shape: TriangleShape, cause: Exception):
        super().__init__(f"cell ({shape.x3}, {shape.y3}) failed: {cause}")
        self.shape = shape


def _winner(cov_m1: float, cov_m2: float | None, cov_search: float | None, tie_tol: float) -> tuple[Family, float]:
    best = max(c for c in (cov_m1, cov_m2, cov_search) if c is not None)
    if cov_m1 >= best - tie_tol:
        return Family.BISECTOR, best
    if cov_m2 is not None and cov_m2 >= best - tie_tol:
        return Family.QUAD, best
    return Family.SEARCH, best


def best_coverage(s: TriangleLike, mode: Mode, cfg: SearchConfig = SearchConfig(),
                  extra_seeds: Sequence = ()) -> SweepRecord:
    """Best coverage of one triangle under the families enabled by ``mode``."""
    tri = as_triangle(s)
    shape = s if isinstance(s, TriangleShape) else TriangleShape(tri.vertices[2].x, tri.vertices[2].y)
    m1 = method1_candidates(tri)
    best1 = max(m1, key=lambda p: p.coverage)
    cov_m2 = cov_search = None
    best2 = best3 = None
    m2: list[Partition] = []
    if mode in (Mode.M1M2, Mode.ALL):
        m2 = method2_candidates(tri)
        best2 = max(m2, key=lambda p: p.coverage)
        cov_m2 = best2.coverage
    warm: tuple = ()
    if mode is Mode.ALL:
        seeds = [*m1, *m2, *method3_seeds(tri), *extra_seeds]
        bp = optimize(tri, seeds, cfg)
        cov_search = bp.coverage
        best3 = bp.partition
        warm = tuple((p.line, p.map) for p in bp.all_partitions()[:3])
    winner, cov_best = _winner(best1.coverage, cov_m2, cov_search, cfg.tie_tol)
    chosen = {Family.BISECTOR: best1, Family.QUAD: best2, Family.SEARCH: best3}[winner]
    return SweepRecord(shape, best1.coverage, cov_m2, cov_search, cov_best, winner,
                       chosen.piece_class, best=chosen, warm=warm)


def _cell(args) -> SweepRecord:
    s, mode, cfg, extra = args
    try:
        return best_coverage(s, mode, cfg, extra)
    except (SearchFailed, ValueError, RuntimeError) as exc:
        raise CellError(s, exc) from exc


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def _map(jobs: list, threads: int | None = None) -> list[SweepRecord]:
    threads = _threads() if threads is None else threads
    if threads <= 1 or len(jobs) < 2:
        return [_cell(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_cell, jobs, chunksize=max(1, len(jobs) // (8 * threads))))


def _neighbours(records: list[SweepRecord], step: float) -> dict[int, list[int]]:
    index = {(round(r.shape.x3 / step), round(r.shape.y3 / step)): i for i, r in enumerate(records)}
    out = {}
    for (i, j), k in index.items():
        out[k] = [index[(i + di, j + dj)] for di in (-1, 0, 1) for dj in (-1, 0, 1)
                  if (di or dj) and (i + di, j + dj) in index]
    return out


def _polish(records: list[SweepRecord], step: float, cfg: SearchConfig, passes: int = 3,
            threads: int | None = None) -> list[SweepRecord]:
    """Re-seed every cell from its neighbours' best configurations.

    Each pass reads the previous pass's snapshot, so the outcome does not
    depend on evaluation order or worker count.
    """
    nb = _neighbours(records, step)
    local = replace(cfg, random_starts=0)
    for _ in range(passes):
        jobs = []
        idx = []
        for k, r in enumerate(records):
            seeds = [w for j in nb[k] for w in records[j].warm[:1]]
            if seeds:
                jobs.append((r.shape, Mode.ALL, local, tuple(seeds)))
                idx.append(k)
        changed = 0
        fresh = _map(jobs, threads)
        nxt = list(records)
        for k, rec in zip(idx, fresh):
            if rec.cov_search > records[k].cov_search + cfg.ftol * 10:
                nxt[k] = rec
                changed += 1
        records = nxt
        log.info("neighbour polish: %d cells improved", changed)
        if not changed:
            break
    return records


def _argmin(records: Iterable[SweepRecord]) -> SweepRecord:
    # lowest value, then row-major position
    return min(records, key=lambda r: (r.cov_best, r.shape.y3, r.shape.x3))


def sweep(g: GridSpec, mode: Mode, cfg: SearchConfig = SearchConfig(), refine: bool = False,
          refine_step: float = 0.01, refine_window: float = 0.5, refine_cfg: SearchConfig | None = None,
          threads: int | None = None) -> SweepResult:
    """Evaluate every grid shape; optionally refine around the minimax."""
    shapes = grid(g)
    if not shapes:
        raise ValueError(f"grid step {g.step} leaves no shapes inside the region")
    records = _map([(s, mode, cfg, ()) for s in shapes], threads)
    if mode is Mode.ALL:
        records = _polish(records, g.step, cfg, threads=threads)
    result = SweepResult(mode, records, _argmin(records).shape, _argmin(records).cov_best)
    if refine:
        result.refined = _refine(result, g, mode, refine_cfg or cfg, refine_step, refine_window, threads)
        low = _argmin(result.all_records())
        result.minimax_shape, result.minimax_value = low.shape, low.cov_best
    if mode is Mode.ALL:
        result.triple_point = region_map(result, cfg.tie_tol)[1]
    return result


def _refine(result: SweepResult, g: GridSpec, mode: Mode, cfg: SearchConfig, step: float,
            window: float, threads: int | None) -> list[SweepRecord]:
    c = result.minimax_shape
    coarse = {(r.shape.x3, r.shape.y3): r for r in result.records}
    ilo, ihi = math.ceil((c.x3 - window) / step - 1e-9), math.floor((c.x3 + window) / step + 1e-9)
    jlo, jhi = math.ceil((c.y3 - window) / step - 1e-9), math.floor((c.y3 + window) / step + 1e-9)
    shapes = []
    for j in range(jlo, jhi + 1):
        y = round(j * step, 12)
        if y < g.y_min - 1e-12:
            continue
        for i in range(ilo, ihi + 1):
            s = TriangleShape(round(i * step, 12), y)
            if s.valid and (s.x3, s.y3) not in coarse:
                shapes.append(s)
    if not shapes:
        return []

    def nearest_warm(s: TriangleShape) -> tuple:
        r = min(result.records, key=lambda r: (r.shape.x3 - s.x3) ** 2 + (r.shape.y3 - s.y3) ** 2)
        return r.warm

    jobs = [(s, mode, cfg, nearest_warm(s)) for s in shapes]
    fine = _map(jobs, threads)
    if mode is Mode.ALL:
        fine = _polish(fine, step, cfg, threads=threads)
    return fine


def region_map(r: SweepResult, tie_tol: float) -> tuple[dict[TriangleShape, Family], Point | None]:
    """Winning family per cell and the three-way tie centroid, if any cell ties."""
    labels = {rec.shape: rec.winner for rec in r.records}
    ties = [rec.shape for rec in r.records
            if rec.cov_m2 is not None and rec.cov_search is not None
            and min(rec.cov_m1, rec.cov_m2, rec.cov_search) >= rec.cov_best - tie_tol]
    if not ties or tie_tol <= 0:
        return labels, None
    return labels, Point(sum(s.x3 for s in ties) / len(ties), sum(s.y3 for s in ties) / len(ties))
