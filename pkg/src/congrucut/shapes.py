"""Shape space of triangles.

Every triangle shape, up to similarity and reflection, appears exactly once as
``A=(0,0)``, ``B=(10,0)``, ``C=(x3,y3)`` with ``AB`` a longest side and ``C``
in the left half: ``0 < x3 <= 5``, ``y3 > 0``, ``|C - B| <= 10``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geom import ConvexPolygon, Point

BASE = 10.0
# slack on the circle boundary so rounded inputs like (5, 8.6603) are accepted
REGION_TOL = 1e-3


class OutOfRegion(ValueError):
    """The third vertex lies outside the canonical shape region."""


@dataclass(frozen=True, order=True)
class TriangleShape:
    x3: float
    y3: float

    def problems(self) -> list[str]:
        out = []
        if not (math.isfinite(self.x3) and math.isfinite(self.y3)):
            out.append("coordinates must be finite")
            return out
        if self.y3 <= 0.0:
            out.append(f"y3={self.y3} must be positive")
        if not 0.0 < self.x3 <= 5.0 + 1e-12:
            out.append(f"x3={self.x3} must lie in (0, 5]")
        if math.hypot(self.x3 - BASE, self.y3) > BASE + REGION_TOL:
            out.append(f"|C - B| = {math.hypot(self.x3 - BASE, self.y3):.6g} exceeds {BASE}")
        return out

    @property
    def valid(self) -> bool:
        return not self.problems()

    def check(self) -> "TriangleShape":
        issues = self.problems()
        if issues:
            raise OutOfRegion(f"({self.x3}, {self.y3}) outside shape region: " + "; ".join(issues))
        return self


@dataclass(frozen=True)
class ShapeMetrics:
    side_a: float  # |BC|
    side_b: float  # |CA|
    side_c: float  # |AB|
    alpha: float  # angle at A
    beta: float  # angle at B
    gamma: float  # angle at C
    h: float  # height of C over AB


@dataclass(frozen=True)
class GridSpec:
    step: float
    y_min: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if self.y_min < self.step / 10.0:
            raise ValueError("y_min must be at least step/10")


def make_triangle(s: TriangleShape) -> ConvexPolygon:
    s.check()
    return ConvexPolygon((Point(0.0, 0.0), Point(BASE, 0.0), Point(s.x3, s.y3)))


def _angle(v: Point, a: Point, b: Point) -> float:
    ux, uy = a.x - v.x, a.y - v.y
    wx, wy = b.x - v.x, b.y - v.y
    return math.atan2(abs(ux * wy - uy * wx), ux * wx + uy * wy)


def metrics(s: TriangleShape) -> ShapeMetrics:
    A, B, C = Point(0.0, 0.0), Point(BASE, 0.0), Point(s.x3, s.y3)
    alpha = _angle(A, B, C)
    beta = _angle(B, C, A)
    return ShapeMetrics(
        side_a=math.dist(B, C),
        side_b=math.dist(C, A),
        side_c=BASE,
        alpha=alpha,
        beta=beta,
        gamma=math.pi - alpha - beta,
        h=s.y3,
    )


def grid(g: GridSpec) -> list[TriangleShape]:
    """Lattice shapes inside the region, rows of constant ``y3`` bottom-up."""
    xs = []
    i = 1
    while i * g.step <= 5.0 + 1e-9:
        xs.append(round(min(i * g.step, 5.0), 12))
        i += 1
    ys = [g.y_min]
    j = 1
    while j * g.step <= BASE:
        y = round(j * g.step, 12)
        if y > g.y_min + 1e-12:
            ys.append(y)
        j += 1
    out = []
    for y in ys:
        for x in xs:
            s = TriangleShape(x, y)
            if s.valid:
                out.append(s)
    return out


def mirrored(s: TriangleShape) -> ConvexPolygon:
    """The reflected twin ``(10 - x3, y3)``, outside the canonical half."""
    return ConvexPolygon((Point(0.0, 0.0), Point(BASE, 0.0), Point(BASE - s.x3, s.y3)))
