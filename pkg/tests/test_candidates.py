import math

import numpy as np
import pytest

from congrucut.candidates import (
    EDGES,
    SearchFailed,
    method1_candidates,
    method1_coverage,
    method2_best,
    method2_candidates,
    method2_partition,
    method2_reference_offset,
    method3_seeds,
)
from congrucut.geom import ConvexPolygon
from congrucut.partition import Family
from congrucut.search import SearchConfig
from congrucut.shapes import TriangleShape, make_triangle, metrics
from congrucut.sweep import Mode, best_coverage

REF = TriangleShape(4.2, 6.7)
T345 = ConvexPolygon.from_points([(0, 0), (4, 0), (0, 3)])


def test_method1_345():
    covs = sorted(p.coverage for p in method1_candidates(T345))
    assert covs == pytest.approx(sorted([6 / 7, 3 / 4, 8 / 9]), abs=1e-12)


def test_method1_matches_closed_form_at_reference():
    m = metrics(REF)
    at_c = next(p for p in method1_candidates(REF) if p.meta["vertex"] == "C")
    assert at_c.coverage == pytest.approx(2 * m.side_b / (m.side_b + m.side_a), abs=1e-12)
    assert at_c.coverage == pytest.approx(0.9431, abs=1e-4)


def test_method1_isosceles_apex_is_perfect():
    at_c = method1_candidates(TriangleShape(5.0, 3.0))[2]
    assert at_c.coverage == pytest.approx(1.0, abs=1e-12)
    assert at_c.waste == ()


@pytest.mark.parametrize("s", [REF, TriangleShape(2, 1), TriangleShape(1.5, 3)])
def test_method1_partitions_valid(s, check_partition):
    for p in method1_candidates(s):
        check_partition(p)
        assert p.piece_class == 3
        assert p.family is Family.BISECTOR


def test_method1_coverage_symmetric():
    assert method1_coverage(3, 5) == method1_coverage(5, 3) == pytest.approx(0.75)


def test_reference_offset_equilateral():
    m = metrics(TriangleShape(5.0, 5.0 * math.sqrt(3)))
    for e in EDGES:
        r = method2_reference_offset(m, e, True)
        assert r.c == pytest.approx(1.0, abs=1e-12)
        assert r.d == pytest.approx(r.h / 2, abs=1e-12)


def test_reference_offset_isosceles_base():
    m = metrics(TriangleShape(5.0, 2.0))
    r = method2_reference_offset(m, "AB", False)
    assert r.c == pytest.approx(1.0, abs=1e-12)


def test_reference_offset_sliver_limit():
    m = metrics(TriangleShape(2.9289, 1e-5))
    r = method2_reference_offset(m, "AB", True)
    assert r.c == pytest.approx(math.sqrt(2), abs=1e-4)
    assert r.d == pytest.approx(r.h / (1 + math.sqrt(2)), rel=1e-4)


@pytest.mark.parametrize("xy", [(4.2, 6.7), (3, 4), (1.5, 3), (2, 1), (4.5, 2)])
def test_method2_offset_is_scan_maximum(xy):
    s = TriangleShape(*xy)
    for e in EDGES:
        best = method2_best(s, e)
        o, h, d = best.meta["orientation"], best.meta["h"], best.meta["d"]
        scan = [method2_partition(s, e, o, dd) for dd in np.linspace(0.002, 0.998, 499) * h]
        top = max(p.coverage for p in scan if p is not None)
        assert best.coverage >= top - 1e-9
        # stationary: symmetric second-order drop on both sides
        for k in (-1, 1):
            near = method2_partition(s, e, o, d + k * 1e-3 * h)
            assert near.coverage <= best.coverage
            assert best.coverage - near.coverage < 1e-5


def test_method2_pieces_are_quads_with_two_waste_triangles(check_partition):
    for p in method2_candidates(REF):
        check_partition(p)
        assert p.piece_class == 4
        assert len(p.waste) == 2
        assert all(len(w) == 3 for w in p.waste)


def test_method2_sliver_limit_value():
    p = method2_best(TriangleShape(2.9289, 1e-4), "AB")
    assert p.coverage == pytest.approx(2 * math.sqrt(2) - 2, abs=1e-3)


def test_method2_golden_sliver():
    x = 10 / ((1 + math.sqrt(5)) / 2) ** 2
    p = max(method2_candidates(TriangleShape(x, 1e-4)), key=lambda q: q.coverage)
    assert p.coverage == pytest.approx(0.894, abs=5e-3)


def test_method2_near_equilateral_below_one():
    p = max(method2_candidates(TriangleShape(5.0, 8.66)), key=lambda q: q.coverage)
    assert p.coverage < 1.0
    assert p.coverage < max(q.coverage for q in method1_candidates(TriangleShape(5.0, 8.66)))


def test_method2_exact_isosceles_degenerates():
    tri = ConvexPolygon.from_points([(0, 0), (10, 0), (5, 5 * math.sqrt(3))])
    with pytest.raises(SearchFailed):
        method2_candidates(tri)


def test_method3_seed_contract():
    tri = make_triangle(REF)
    seeds = method3_seeds(tri)
    assert len(seeds) == 3
    for line, _ in seeds:
        sides = [line.side(v) for v in tri.vertices]
        assert min(sides) < 0 < max(sides)


def test_method3_refined_beats_closed_forms():
    r = best_coverage(REF, Mode.ALL, SearchConfig(random_starts=0))
    assert r.cov_search >= max(r.cov_m1, r.cov_m2)
    assert r.piece_class == 5
