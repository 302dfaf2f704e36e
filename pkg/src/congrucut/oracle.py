"""Coarse brute-force reference for the coverage search.

Scores a full tensor grid of (line offset, line angle, rotation, translation,
reflection) with shapely's vectorized boolean operations.  It measures
``area(g(R1) & R2)``, the same quantity as the search objective, through an
unrelated code path.
"""

from __future__ import annotations

import numpy as np
import shapely
from shapely.geometry import Polygon

from .geom import ConvexPolygon


def _halfplane(region: Polygon, c: tuple[float, float], off: float, phi: float, left: bool, big: float):
    n = np.array([-np.sin(phi), np.cos(phi)])
    u = np.array([np.cos(phi), np.sin(phi)])
    base = np.asarray(c) + off * n
    s = 1.0 if left else -1.0
    pts = [base - big * u, base + big * u, base + big * u + s * big * n, base - big * u + s * big * n]
    return region.intersection(Polygon(pts))


def brute_force_coverage(region: ConvexPolygon, samples: int = 12, return_argmax: bool = False):
    """Best coverage over a ``samples**5 * 2`` configuration grid."""
    poly = Polygon([(v.x, v.y) for v in region.vertices])
    c = poly.centroid.coords[0]
    diam = region.diameter
    big = 4.0 * diam
    offs = np.linspace(-0.45, 0.45, samples) * diam
    phis = np.arange(samples) * np.pi / samples
    thetas = np.arange(samples) * 2.0 * np.pi / samples - np.pi
    trans = np.linspace(-0.45, 0.45, samples) * diam
    tx, ty, th = np.meshgrid(trans, trans, thetas, indexing="ij")
    tx, ty, th = tx.ravel(), ty.ravel(), th.ravel()
    cos, sin = np.cos(th), np.sin(th)
    best = 0.0
    arg = None
    total = poly.area
    for off in offs:
        for phi in phis:
            r1 = _halfplane(poly, c, off, phi, True, big)
            r2 = _halfplane(poly, c, off, phi, False, big)
            if r1.is_empty or r2.is_empty or r1.area <= 0 or r2.area <= 0:
                continue
            ring = np.asarray(r1.exterior.coords) - c
            for mirror in (1.0, -1.0):
                x = ring[:, 0][None, :]
                y = mirror * ring[:, 1][None, :]
                gx = cos[:, None] * x - sin[:, None] * y + c[0] + tx[:, None]
                gy = sin[:, None] * x + cos[:, None] * y + c[1] + ty[:, None]
                imgs = shapely.polygons(np.stack([gx, gy], axis=-1))
                areas = shapely.area(shapely.intersection(imgs, r2))
                k = int(np.argmax(areas))
                cov = 2.0 * float(areas[k]) / total
                if cov > best:
                    best = cov
                    arg = (off, phi, th[k], tx[k], ty[k], mirror < 0)
    if return_argmax:
        return best, arg
    return best



def score_configuration(region: ConvexPolygon, line, g) -> float:
    """Coverage of ``(line, g)`` measured as ``area(g(R1) & R2)`` with shapely."""
    poly = Polygon([(v.x, v.y) for v in region.vertices])
    big = 4.0 * region.diameter
    c = (line.anchor.x, line.anchor.y)
    r1 = _halfplane(poly, c, 0.0, line.angle, True, big)
    r2 = _halfplane(poly, c, 0.0, line.angle, False, big)
    if r1.is_empty or r2.is_empty:
        return 0.0
    img = Polygon([tuple(g(p)) for p in r1.exterior.coords])
    # GEOS overlay misbehaves on near-zero coordinates such as 1e-67; snap them away
    grid_size = 1e-12 * region.diameter
    img, r2 = shapely.set_precision(img, grid_size), shapely.set_precision(r2, grid_size)
    return 2.0 * img.intersection(r2).area / poly.area
