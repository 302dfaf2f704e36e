"""Planar geometry on convex polygons.

Polygons are immutable, counterclockwise, and at least triangles.  Clipping
and intersection return ``None`` when nothing with positive area is left;
callers probing infeasible configurations rely on that instead of catching
exceptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

# absolute area/degeneracy threshold, in units of the 10-long base side
GEOM_EPS = 1e-9
# collinear snap tolerance, relative to the polygon diameter
SNAP_REL = 1e-6


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def scale(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


def cross(o: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _signed_area(pts: Sequence[Sequence[float]]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise convex polygon."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(Point(float(x), float(y)) for x, y in self.vertices)
        if len(verts) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        if not all(math.isfinite(c) for v in verts for c in v):
            raise ValueError("polygon vertices must be finite")
        if _signed_area(verts) <= 0.0:
            raise ValueError("polygon must be counterclockwise with positive area")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_points(cls, pts: Iterable[Sequence[float]]) -> "ConvexPolygon":
        """Build from vertices in either orientation."""
        verts = [Point(float(x), float(y)) for x, y in pts]
        if len(verts) >= 3 and _signed_area(verts) < 0.0:
            verts.reverse()
        return cls(tuple(verts))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def area(self) -> float:
        return _signed_area(self.vertices)

    @property
    def centroid(self) -> Point:
        a = cx = cy = 0.0
        n = len(self.vertices)
        for i in range(n):
            x0, y0 = self.vertices[i]
            x1, y1 = self.vertices[(i + 1) % n]
            w = x0 * y1 - x1 * y0
            a += w
            cx += (x0 + x1) * w
            cy += (y0 + y1) * w
        return Point(cx / (3.0 * a), cy / (3.0 * a))

    @property
    def diameter(self) -> float:
        vs = self.vertices
        return max(math.dist(p, q) for i, p in enumerate(vs) for q in vs[i + 1:])

    @property
    def perimeter(self) -> float:
        vs = self.vertices
        return sum(math.dist(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def edges(self):
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    def interior_angle(self, i: int) -> float:
        vs = self.vertices
        v = vs[i]
        a = vs[i - 1] - v
        b = vs[(i + 1) % len(vs)] - v
        return math.atan2(abs(a.x * b.y - a.y * b.x), a.x * b.x + a.y * b.y)

    def contains(self, p: Sequence[float], tol: float = 1e-9) -> bool:
        return all(cross(a, b, p) >= -tol * max(1.0, math.dist(a, b)) for a, b in self.edges())

    def as_list(self) -> list[list[float]]:
        return [[v.x, v.y] for v in self.vertices]


def area(p: ConvexPolygon | None) -> float:
    """Shoelace area; zero for an empty result."""
    return 0.0 if p is None else p.area


@dataclass(frozen=True)
class SeparatingLine:
    """Oriented line; the first side (R1) lies to the left of its direction."""

    anchor: Point
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "anchor", Point(float(self.anchor[0]), float(self.anchor[1])))
        object.__setattr__(self, "angle", float(self.angle) % math.pi)

    @classmethod
    def through(cls, p: Sequence[float], q: Sequence[float]) -> tuple["SeparatingLine", bool]:
        """Line through ``p`` and ``q``.

        Also returns whether the normalized line kept the direction ``p -> q``;
        when it did not, the sides are swapped relative to that direction.
        """
        raw = math.atan2(q[1] - p[1], q[0] - p[0])
        line = cls(Point(*p), raw)
        kept = math.isclose(math.cos(raw - line.angle), 1.0, abs_tol=1e-9)
        return line, kept

    @property
    def direction(self) -> Point:
        return Point(math.cos(self.angle), math.sin(self.angle))

    @property
    def normal(self) -> Point:
        """Unit normal pointing into the left side."""
        return Point(-math.sin(self.angle), math.cos(self.angle))

    def side(self, p: Sequence[float]) -> float:
        """Signed distance, positive on the left."""
        n = self.normal
        return n.x * (p[0] - self.anchor.x) + n.y * (p[1] - self.anchor.y)


def _clip_coeffs(pts, a: float, b: float, c: float) -> list[Point]:
    """Sutherland-Hodgman step keeping ``a*x + b*y + c >= 0``."""
    out: list[Point] = []
    n = len(pts)
    for i in range(n):
        p = pts[i]
        q = pts[(i + 1) % n]
        dp = a * p[0] + b * p[1] + c
        dq = a * q[0] + b * q[1] + c
        if dp >= 0.0:
            out.append(Point(p[0], p[1]))
        if (dp > 0.0 > dq) or (dp < 0.0 < dq):
            t = dp / (dp - dq)
            out.append(Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _finish(pts: list[Point], eps: float) -> ConvexPolygon | None:
    # drop exact repeats left by vertices sitting on the clip line
    clean: list[Point] = []
    for p in pts:
        if not clean or p != clean[-1]:
            clean.append(p)
    if len(clean) > 1 and clean[0] == clean[-1]:
        clean.pop()
    if len(clean) < 3 or _signed_area(clean) <= eps:
        return None
    return ConvexPolygon(tuple(clean))


def clip_halfplane(p: ConvexPolygon | None, line: SeparatingLine, keep_left: bool = True,
                   eps: float = GEOM_EPS) -> ConvexPolygon | None:
    """Part of ``p`` on one side of ``line``; ``None`` if it has no area."""
    if p is None:
        return None
    n = line.normal
    s = 1.0 if keep_left else -1.0
    a, b = s * n.x, s * n.y
    c = -(a * line.anchor.x + b * line.anchor.y)
    return _finish(_clip_coeffs(p.vertices, a, b, c), eps)


def intersect_convex(a: ConvexPolygon | None, b: ConvexPolygon | None,
                     eps: float = GEOM_EPS) -> ConvexPolygon | None:
    if a is None or b is None:
        return None
    pts: list[Point] = list(a.vertices)
    for p, q in b.edges():
        ea = -(q.y - p.y)
        eb = q.x - p.x
        pts = _clip_coeffs(pts, ea, eb, -(ea * p.x + eb * p.y))
        if len(pts) < 3:
            return None
    return _finish(pts, eps)


@dataclass(frozen=True)
class Isometry:
    """``p -> Rot(theta) @ Mirror @ p + t`` with Mirror negating y when ``reflect``."""

    reflect: bool = False
    theta: float = 0.0
    t: Point = Point(0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "reflect", bool(self.reflect))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "t", Point(float(self.t[0]), float(self.t[1])))

    @classmethod
    def identity(cls) -> "Isometry":
        return cls()

    @classmethod
    def rotation_about(cls, center: Sequence[float], theta: float) -> "Isometry":
        c, s = math.cos(theta), math.sin(theta)
        cx, cy = center
        return cls(False, theta, Point(cx - (c * cx - s * cy), cy - (s * cx + c * cy)))

    @classmethod
    def reflection_across(cls, line: SeparatingLine) -> "Isometry":
        # mirror about a line through the origin at angle phi is Rot(2 phi) @ Mirror
        th = 2.0 * line.angle
        g = cls(True, th, Point(0.0, 0.0))
        img = g(line.anchor)
        return cls(True, th, Point(line.anchor.x - img.x, line.anchor.y - img.y))

    def linear(self, v: Sequence[float]) -> Point:
        x, y = v[0], (-v[1] if self.reflect else v[1])
        c, s = math.cos(self.theta), math.sin(self.theta)
        return Point(c * x - s * y, s * x + c * y)

    def __call__(self, p: Sequence[float]) -> Point:
        q = self.linear(p)
        return Point(q.x + self.t.x, q.y + self.t.y)

    def inverse(self) -> "Isometry":
        # (R M)^-1 = M R^-1; for a reflection R M is an involution-like mirror
        if self.reflect:
            inv = Isometry(True, self.theta, Point(0.0, 0.0))
        else:
            inv = Isometry(False, -self.theta, Point(0.0, 0.0))
        mt = inv.linear(self.t)
        return Isometry(inv.reflect, inv.theta, Point(-mt.x, -mt.y))

    def compose(self, other: "Isometry") -> "Isometry":
        """``self`` after ``other``."""
        refl = self.reflect != other.reflect
        theta = self.theta - other.theta if self.reflect else self.theta + other.theta
        t = self(other.t)
        return Isometry(refl, theta, t)


def apply_isometry(g: Isometry, p: ConvexPolygon) -> ConvexPolygon:
    pts = [g(v) for v in p.vertices]
    if g.reflect:
        pts.reverse()
    return ConvexPolygon(tuple(pts))


def snap_vertices(p: ConvexPolygon, collinear_tol: float) -> ConvexPolygon:
    """Merge near-duplicate vertices and drop near-collinear ones."""
    pts = list(p.vertices)
    merged: list[Point] = []
    for v in pts:
        if not merged or math.dist(v, merged[-1]) > collinear_tol:
            merged.append(v)
    while len(merged) > 3 and math.dist(merged[0], merged[-1]) <= collinear_tol:
        merged.pop()
    pts = merged
    while len(pts) > 3:
        best_i, best_dev = -1, collinear_tol
        for i in range(len(pts)):
            a, v, b = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            chord = math.dist(a, b)
            if chord == 0.0:
                dev = math.dist(a, v)
            else:
                dev = abs(cross(a, b, v)) / chord
            if dev < best_dev:
                best_i, best_dev = i, dev
        if best_i < 0:
            break
        pts.pop(best_i)
    if _signed_area(pts) <= 0.0:
        return p
    return ConvexPolygon(tuple(pts))


def _turn_signature(p: ConvexPolygon) -> list[tuple[float, float]]:
    n = len(p.vertices)
    return [(math.dist(p.vertices[i], p.vertices[(i + 1) % n]), p.interior_angle(i)) for i in range(n)]


def congruent(a: ConvexPolygon, b: ConvexPolygon, tol: float = 1e-9) -> bool:
    """Whether some cyclic alignment, direct or mirrored, matches lengths and angles."""
    scale = max(1.0, a.diameter, b.diameter)
    a = snap_vertices(a, tol * scale)
    b = snap_vertices(b, tol * scale)
    if len(a) != len(b):
        return False
    n = len(a)
    sa = _turn_signature(a)
    sb = _turn_signature(b)
    # mirrored: walk b backwards; edge i then runs from vertex i+1 to i
    rb = [(sb[(-i - 1) % n][0], sb[-i % n][1]) for i in range(n)]
    for seq in (sb, rb):
        for shift in range(n):
            if all(abs(sa[i][0] - seq[(i + shift) % n][0]) <= tol * scale
                   and abs(sa[i][1] - seq[(i + shift) % n][1]) <= tol
                   for i in range(n)):
                return True
    return False


class TrimTooLarge(ValueError):
    """The requested corner cut does not fit on the adjacent edges."""


@dataclass(frozen=True)
class TrimSpec:
    vertex_index: int
    area: float


def trim_corner(p: ConvexPolygon, spec: TrimSpec) -> ConvexPolygon:
    """Cut off vertex ``spec.vertex_index`` with an isosceles chord removing ``spec.area``."""
    n = len(p.vertices)
    if not 0 <= spec.vertex_index < n:
        raise IndexError(f"vertex index {spec.vertex_index} out of range for {n} vertices")
    if spec.area <= 0.0:
        raise ValueError("trim area must be positive")
    if spec.area >= 0.1 * p.area:
        raise TrimTooLarge(f"trim area {spec.area} is not below a tenth of the polygon area {p.area}")
    i = spec.vertex_index
    v = p.vertices[i]
    prev = p.vertices[i - 1]
    nxt = p.vertices[(i + 1) % n]
    theta = p.interior_angle(i)
    t = math.sqrt(2.0 * spec.area / math.sin(theta))
    l_prev = math.dist(v, prev)
    l_next = math.dist(v, nxt)
    if t >= l_prev or t >= l_next:
        raise TrimTooLarge(f"chord offset {t:.6g} exceeds an adjacent edge ({l_prev:.6g}, {l_next:.6g})")
    a = v + (prev - v).scale(t / l_prev)
    b = v + (nxt - v).scale(t / l_next)
    verts = list(p.vertices)
    verts[i:i + 1] = [a, b]
    return ConvexPolygon(tuple(verts))


def difference_pieces(outer: ConvexPolygon, inner: ConvexPolygon | None,
                      eps: float = GEOM_EPS) -> list[ConvexPolygon]:
    """Convex decomposition of ``outer`` minus a convex ``inner``."""
    if inner is None:
        return [outer]
    out: list[ConvexPolygon] = []
    rest: list[Point] = list(outer.vertices)
    for p, q in inner.edges():
        ea = -(q.y - p.y)
        eb = q.x - p.x
        ec = -(ea * p.x + eb * p.y)
        piece = _finish(_clip_coeffs(rest, -ea, -eb, -ec), eps)
        if piece is not None:
            out.append(piece)
        rest = _clip_coeffs(rest, ea, eb, ec)
        if len(rest) < 3:
            break
    return out
