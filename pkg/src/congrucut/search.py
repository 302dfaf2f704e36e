"""Multi-start search for the maximum 2-coverage of a convex region.

The search space is a separating line (offset, angle) plus an isometry
(reflect flag, angle, translation).  Parameters are expressed in a frame
centred on the region centroid and scaled by its diameter, which makes the
search scale-invariant.  The objective is evaluated by the compiled kernels;
final partitions are rebuilt with the pure-Python geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import _kernels as K
from .geom import ConvexPolygon, Isometry, Point, SeparatingLine
from .partition import Family, Partition, classify, coverage_at, make_partition

__all__ = [
    "SearchConfig",
    "BestPartition",
    "Frame",
    "coverage_at",
    "classify",
    "optimize",
]

Seed = Union[Partition, tuple[SeparatingLine, Isometry]]


@dataclass(frozen=True)
class SearchConfig:
    random_starts: int = 64
    rng_seed: int = 42
    local_iters: int = 400
    xtol: float = 1e-7
    ftol: float = 1e-9
    tie_tol: float = 1e-4

    def __post_init__(self):
        if self.random_starts < 0 or self.local_iters <= 0:
            raise ValueError("random_starts must be >= 0 and local_iters positive")
        if min(self.xtol, self.ftol, self.tie_tol) <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class BestPartition:
    partition: Partition
    runner_ups: list[Partition] = field(default_factory=list)
    family_scores: dict[Family, float] = field(default_factory=dict)

    @property
    def coverage(self) -> float:
        return self.partition.coverage

    def all_partitions(self) -> list[Partition]:
        return [self.partition, *self.runner_ups]


class Frame:
    """Normalized coordinates of a region: ``u = (p - centroid) / diameter``."""

    def __init__(self, region: ConvexPolygon):
        self.region = region
        self.c = region.centroid
        self.D = region.diameter
        xs = np.array([(v.x - self.c.x) / self.D for v in region.vertices])
        ys = np.array([(v.y - self.c.y) / self.D for v in region.vertices])
        self.rx = np.ascontiguousarray(xs)
        self.ry = np.ascontiguousarray(ys)
        self.n = len(region.vertices)
        self.scale = 2.0 / K.shoelace(self.rx, self.ry, self.n)

    def coverage(self, x: np.ndarray, reflect: bool) -> float:
        return K.piece_area(self.rx, self.ry, self.n, np.asarray(x, dtype=float), reflect) * self.scale

    def to_vector(self, line: SeparatingLine, g: Isometry) -> tuple[np.ndarray, bool]:
        n = line.normal
        off = (n.x * (line.anchor.x - self.c.x) + n.y * (line.anchor.y - self.c.y)) / self.D
        gc = g(self.c)
        tau = ((gc.x - self.c.x) / self.D, (gc.y - self.c.y) / self.D)
        return np.array([off, line.angle, g.theta, tau[0], tau[1]]), g.reflect

    def from_vector(self, x: Sequence[float], reflect: bool) -> tuple[SeparatingLine, Isometry]:
        off, phi, theta, tx, ty = (float(v) for v in x)
        nx, ny = -math.sin(phi), math.cos(phi)
        anchor = Point(self.c.x + off * self.D * nx, self.c.y + off * self.D * ny)
        lin = Isometry(reflect, theta, Point(0.0, 0.0))
        lc = lin(self.c)
        g = Isometry(reflect, theta, Point(self.c.x - lc.x + self.D * tx, self.c.y - lc.y + self.D * ty))
        line = SeparatingLine(anchor, phi)
        if math.cos(phi - line.angle) < 0.0:
            # normalizing the angle flipped the sides; hand the roles over
            g = g.inverse()
        return line, g

    def random_start(self, rng: np.random.Generator, reflect: bool) -> np.ndarray | None:
        w = rng.dirichlet(np.ones(self.n))
        ux, uy = float(w @ self.rx), float(w @ self.ry)
        phi = rng.uniform(0.0, math.pi)
        off = -math.sin(phi) * ux + math.cos(phi) * uy
        cents, ok = K.side_centroids(self.rx, self.ry, self.n, off, phi)
        theta = rng.uniform(-math.pi, math.pi)
        jitter = rng.normal(0.0, 0.02, size=2)
        if not ok:
            return None
        c1x, c1y, c2x, c2y = cents
        ct, st = math.cos(theta), math.sin(theta)
        my = -c1y if reflect else c1y
        tx = c2x - (ct * c1x - st * my) + jitter[0]
        ty = c2y - (st * c1x + ct * my) + jitter[1]
        return np.array([off, phi, theta, tx, ty])


@dataclass
class _Result:
    coverage: float
    order: int
    x: np.ndarray
    reflect: bool
    family: Family
    partition: Partition | None = None


def _line_key(x: np.ndarray) -> tuple[float, float]:
    off, phi = float(x[0]), float(x[1]) % (2.0 * math.pi)
    if phi >= math.pi:
        phi -= math.pi
        off = -off
    return off, phi


def _line_distance(a: np.ndarray, b: np.ndarray) -> float:
    oa, pa = _line_key(a)
    ob, pb = _line_key(b)
    d = max(abs(oa - ob), abs(pa - pb))
    # angle 0 and angle pi describe the same line with opposite offset sign
    d_wrap = max(abs(oa + ob), math.pi - abs(pa - pb))
    return min(d, d_wrap)


def _iso_distance(a: _Result, b: _Result) -> float:
    if a.reflect != b.reflect:
        return math.inf
    dth = abs((a.x[2] - b.x[2] + math.pi) % (2.0 * math.pi) - math.pi)
    return max(dth, abs(a.x[3] - b.x[3]), abs(a.x[4] - b.x[4]))


def optimize(region: ConvexPolygon, seeds: Sequence[Seed] = (), cfg: SearchConfig = SearchConfig()) -> BestPartition:
    """Best partition found from the seeds plus ``cfg.random_starts`` random starts.

    Seeds given as ``Partition`` objects are also kept unrefined in the result
    pool under their own family, so closed-form candidates survive as
    runner-ups when the search reproduces them.
    """
    frame = Frame(region)
    budget = 3 * cfg.local_iters
    results: list[_Result] = []
    order = 0

    def run(x0: np.ndarray, reflect: bool, step: float):
        nonlocal order
        x, f, _ = K.local_search(frame.rx, frame.ry, frame.n, reflect, frame.scale,
                                 np.asarray(x0, dtype=float), step, budget, cfg.xtol, cfg.ftol)
        results.append(_Result(-f, order, x, reflect, Family.SEARCH))
        order += 1

    for s in seeds:
        if isinstance(s, Partition):
            x0, reflect = frame.to_vector(s.line, s.map)
            results.append(_Result(s.coverage, order, x0, reflect, s.family, s))
            order += 1
        else:
            x0, reflect = frame.to_vector(s[0], s[1])
        run(x0, reflect, 0.02)

    rng = np.random.default_rng(cfg.rng_seed)
    for _ in range(cfg.random_starts):
        for reflect in (False, True):
            x0 = frame.random_start(rng, reflect)
            if x0 is not None:
                run(x0, reflect, 0.1)

    if not results:
        raise ValueError("nothing to optimize: no seeds and no random starts")

    family_scores: dict[Family, float] = {}
    for r in results:
        family_scores[r.family] = max(family_scores.get(r.family, 0.0), min(r.coverage, 1.0))

    results.sort(key=lambda r: (-r.coverage, r.family.rank, r.order))
    top = results[0].coverage
    # numerically equal optima go to the simpler family, then the earlier start
    lead = min((r for r in results if r.coverage >= top - 10 * cfg.ftol), key=lambda r: (r.family.rank, r.order))
    results = [lead] + [r for r in results if r is not lead]
    pool: list[_Result] = []
    for r in results:
        if r.coverage < top - cfg.tie_tol:
            break
        if any(q.family == r.family and _line_distance(q.x, r.x) <= 1e-6 and _iso_distance(q, r) <= 1e-6
               for q in pool):
            continue
        pool.append(r)
        if len(pool) >= 24:
            break

    kept: list[Partition] = []
    for r in pool:
        part = r.partition
        if part is None:
            line, g = frame.from_vector(r.x, r.reflect)
            part = make_partition(region, line, g, Family.SEARCH)
            if part is None:
                continue
        distinct = all(
            part.piece_class != k.piece_class
            or _line_distance(frame.to_vector(part.line, part.map)[0],
                              frame.to_vector(k.line, k.map)[0]) > 1e-2
            for k in kept
        )
        if distinct:
            kept.append(part)
    if not kept:
        raise RuntimeError("search produced no materializable partition")
    return BestPartition(partition=kept[0], runner_ups=kept[1:], family_scores=family_scores)
