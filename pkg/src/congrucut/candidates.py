"""Closed-form candidate partitions of a triangle.

Three families:

* bisector pairs: cut along an angle bisector and reflect the smaller side
  into the larger one;
* quadrilateral pairs: reflect across a line perpendicular to a base edge,
  placed so that the reference line at height ``d = h / (c + 1)`` crosses the
  two slanted sides at mirror-image points;
* pentagon seeds: median cuts with the best vertex-matched isometry between
  the two halves, left for ``search.optimize`` to refine.

The quadrilateral construction, for base ``AB`` with ``A`` the included
corner: ``A'`` and ``B'`` are the points of ``AC`` and ``BC`` at height ``d``.
The mirror axis is the perpendicular bisector of ``A'B'``; it meets ``AB`` at
``Q'`` and ``BC`` at ``Q``.  The pieces are ``A Q' Q A'`` and its mirror
``Q' P B' Q`` (``P`` the image of ``A``), wasting triangles ``A' Q C`` and
``P B B'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .geom import ConvexPolygon, Isometry, Point, SeparatingLine, clip_halfplane
from .partition import Family, Partition, coverage_at, make_partition
from .shapes import ShapeMetrics, TriangleShape, make_triangle

EDGES = {"AB": (0, 1), "BC": (1, 2), "CA": (2, 0)}
LABELS = "ABC"

TriangleLike = Union[TriangleShape, ConvexPolygon]


class SearchFailed(RuntimeError):
    """No admissible configuration exists for a family that should have one."""


def as_triangle(t: TriangleLike) -> ConvexPolygon:
    if isinstance(t, TriangleShape):
        return make_triangle(t)
    if len(t) != 3:
        raise ValueError("expected a triangle")
    return t


@dataclass(frozen=True)
class Method2Params:
    base_edge: str
    orientation: bool  # True: the first endpoint of base_edge is the included corner
    d: float
    c: float
    h: float


def method1_partition(t: TriangleLike, vertex: int) -> Partition:
    """Bisector pair at ``vertex`` (0, 1, 2 for A, B, C)."""
    tri = as_triangle(t)
    vs = tri.vertices
    v, u, w = vs[vertex], vs[(vertex + 1) % 3], vs[(vertex + 2) % 3]
    p, q = math.dist(v, u), math.dist(v, w)
    foot = u + (w - u).scale(p / (p + q))
    line, _ = SeparatingLine.through(v, foot)
    g = Isometry.reflection_across(line)
    part = make_partition(tri, line, g, Family.BISECTOR, vertex=LABELS[vertex],
                          closed_form=2.0 * min(p, q) / (p + q))
    if part is None:
        raise SearchFailed(f"bisector at {LABELS[vertex]} produced an empty piece")
    return part


def method1_candidates(t: TriangleLike) -> list[Partition]:
    return [method1_partition(t, i) for i in range(3)]


def method1_coverage(p: float, q: float) -> float:
    """Closed form for adjacent side lengths ``p`` and ``q``."""
    return 2.0 * min(p, q) / (p + q)


def _height(tri: ConvexPolygon, i: int, j: int) -> float:
    return 2.0 * tri.area / math.dist(tri.vertices[i], tri.vertices[j])


def _offset(alpha: float, beta: float, h: float) -> tuple[float, float]:
    c = 2.0 * math.sin(alpha) * math.cos(beta) / math.sin(alpha + beta)
    return c, h / (c + 1.0)


def method2_reference_offset(m: ShapeMetrics, base_edge: str, orientation: bool) -> Method2Params:
    """Reference-line offset ``d = h / (c + 1)`` with ``c = 2 sin(a) cos(b) / sin(a + b)``."""
    area = 0.5 * m.side_c * m.h
    angles = {"AB": (m.alpha, m.beta, m.side_c), "BC": (m.beta, m.gamma, m.side_a),
              "CA": (m.gamma, m.alpha, m.side_b)}
    first, second, length = angles[base_edge]
    alpha, beta = (first, second) if orientation else (second, first)
    h = 2.0 * area / length
    c, d = _offset(alpha, beta, h)
    return Method2Params(base_edge, orientation, d, c, h)


def _params_from_triangle(tri: ConvexPolygon, base_edge: str, orientation: bool) -> Method2Params:
    i, j = EDGES[base_edge]
    if not orientation:
        i, j = j, i
    alpha = tri.interior_angle(i)
    beta = tri.interior_angle(j)
    h = _height(tri, i, j)
    c, d = _offset(alpha, beta, h)
    return Method2Params(base_edge, orientation, d, c, h)


def method2_partition(t: TriangleLike, base_edge: str, orientation: bool,
                      d: float | None = None) -> Partition | None:
    """Quadrilateral construction at offset ``d`` (the formula value by default).

    Returns ``None`` when the construction degenerates into something other
    than a pair of quadrilaterals.
    """
    tri = as_triangle(t)
    params = _params_from_triangle(tri, base_edge, orientation)
    if d is None:
        d = params.d
    i, j = EDGES[base_edge]
    k = 3 - i - j
    if not orientation:
        i, j = j, i
    a, b, z = tri.vertices[i], tri.vertices[j], tri.vertices[k]
    if not 0.0 < d < params.h:
        return None
    s = d / params.h
    a2 = a + (z - a).scale(s)
    b2 = b + (z - b).scale(s)
    mid = Point(0.5 * (a2.x + b2.x), 0.5 * (a2.y + b2.y))
    base_angle = math.atan2(b.y - a.y, b.x - a.x)
    line = SeparatingLine(mid, base_angle + 0.5 * math.pi)
    g = Isometry.reflection_across(line)
    part = make_partition(tri, line, g, Family.QUAD, base_edge=base_edge,
                          orientation=orientation, d=d, c=params.c, h=params.h)
    if part is None or part.piece_class != 4:
        return None
    return part


def method2_best(t: TriangleLike, base_edge: str) -> Partition:
    """Better of the two orientations over ``base_edge``."""
    found = [p for p in (method2_partition(t, base_edge, o) for o in (True, False)) if p is not None]
    if not found:
        raise SearchFailed(f"no quadrilateral pair over edge {base_edge}")
    return max(found, key=lambda p: p.coverage)


def method2_candidates(t: TriangleLike) -> list[Partition]:
    """One quadrilateral pair per base edge that admits one."""
    out = []
    for edge in EDGES:
        try:
            out.append(method2_best(t, edge))
        except SearchFailed:
            continue
    if not out:
        raise SearchFailed("no edge admits a quadrilateral pair")
    return out


def _fit_isometry(src: list[Point], dst: list[Point], reflect: bool) -> Isometry:
    """Least-squares isometry taking ``src[i]`` to ``dst[i]``."""
    if reflect:
        src = [Point(p.x, -p.y) for p in src]
    n = len(src)
    sx = sum(p.x for p in src) / n
    sy = sum(p.y for p in src) / n
    dx = sum(p.x for p in dst) / n
    dy = sum(p.y for p in dst) / n
    num = den = 0.0
    for p, q in zip(src, dst):
        px, py = p.x - sx, p.y - sy
        qx, qy = q.x - dx, q.y - dy
        num += px * qy - py * qx
        den += px * qx + py * qy
    theta = math.atan2(num, den)
    c, s = math.cos(theta), math.sin(theta)
    return Isometry(reflect, theta, Point(dx - (c * sx - s * sy), dy - (s * sx + c * sy)))


def method3_seeds(t: TriangleLike) -> list[tuple[SeparatingLine, Isometry]]:
    """One median cut per vertex, paired with its best vertex-matched isometry."""
    tri = as_triangle(t)
    vs = tri.vertices
    seeds = []
    for i in range(3):
        mid = (vs[(i + 1) % 3] + vs[(i + 2) % 3]).scale(0.5)
        line, _ = SeparatingLine.through(vs[i], mid)
        r1 = clip_halfplane(tri, line, True)
        r2 = clip_halfplane(tri, line, False)
        best = None
        src = list(r1.vertices)
        dst = list(r2.vertices)
        for reflect in (False, True):
            order = list(reversed(dst)) if reflect else dst
            for shift in range(len(order)):
                target = order[shift:] + order[:shift]
                g = _fit_isometry(src, target, reflect)
                cov, _ = coverage_at(tri, line, g)
                if best is None or cov > best[0] + 1e-12:
                    best = (cov, line, g)
        seeds.append((best[1], best[2]))
    return seeds
