"""Two congruent convex pieces cut from a region, and how to score them.

Two interior-disjoint convex pieces always admit a separating line ``l``.  With
``R1``/``R2`` the sides of the region and ``g`` the isometry carrying the first
piece onto the second, the largest admissible first piece is
``R1 & g^-1(R2)``, so a configuration ``(l, g)`` determines the partition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .geom import (
    GEOM_EPS,
    SNAP_REL,
    ConvexPolygon,
    Isometry,
    SeparatingLine,
    apply_isometry,
    clip_halfplane,
    difference_pieces,
    intersect_convex,
    snap_vertices,
)


class Family(enum.Enum):
    BISECTOR = "Bisector"
    QUAD = "Quad"
    SEARCH = "Search"

    @property
    def rank(self) -> int:
        # tie-break order: simpler constructions win
        return {"Bisector": 0, "Quad": 1, "Search": 2}[self.value]


@dataclass(frozen=True)
class Partition:
    region: ConvexPolygon
    piece1: ConvexPolygon
    piece2: ConvexPolygon
    map: Isometry
    line: SeparatingLine
    coverage: float
    waste: tuple[ConvexPolygon, ...]
    family: Family
    piece_class: int
    meta: dict = field(default_factory=dict, compare=False)


def coverage_at(region: ConvexPolygon, line: SeparatingLine, g: Isometry) -> tuple[float, ConvexPolygon | None]:
    """Coverage of the largest piece pair for a fixed line and isometry."""
    r1 = clip_halfplane(region, line, keep_left=True)
    r2 = clip_halfplane(region, line, keep_left=False)
    if r1 is None or r2 is None:
        return 0.0, None
    p1 = intersect_convex(r1, apply_isometry(g.inverse(), r2))
    if p1 is None:
        return 0.0, None
    return 2.0 * p1.area / region.area, p1


def classify(p: Partition | ConvexPolygon, collinear_tol: float | None = None) -> int:
    """Vertex count of the snapped first piece."""
    poly = p.piece1 if isinstance(p, Partition) else p
    if collinear_tol is None:
        collinear_tol = SNAP_REL * poly.diameter
    return len(snap_vertices(poly, collinear_tol))


def make_partition(region: ConvexPolygon, line: SeparatingLine, g: Isometry,
                   family: Family, **meta) -> Partition | None:
    """Materialize the partition for ``(line, g)``; ``None`` if the piece is empty."""
    cov, p1 = coverage_at(region, line, g)
    if p1 is None:
        return None
    p2 = apply_isometry(g, p1)
    r1 = clip_halfplane(region, line, keep_left=True)
    r2 = clip_halfplane(region, line, keep_left=False)
    # waste bits thinner than the snap scale are clipping noise, not shape
    eps = max(GEOM_EPS, (SNAP_REL * region.diameter) ** 2)
    tol = SNAP_REL * region.diameter
    waste = tuple(snap_vertices(w, tol) for w in difference_pieces(r1, p1, eps) + difference_pieces(r2, p2, eps))
    return Partition(
        region=region,
        piece1=p1,
        piece2=p2,
        map=g,
        line=line,
        coverage=cov,
        waste=waste,
        family=family,
        piece_class=classify(p1),
        meta=dict(meta),
    )
