import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from congrucut.candidates import method1_candidates, method2_candidates, method3_seeds
from congrucut.experiments import triangle_optimum
from congrucut.geom import ConvexPolygon, Isometry, Point, SeparatingLine
from congrucut.oracle import brute_force_coverage, score_configuration
from congrucut.partition import Family, classify, coverage_at
from congrucut.search import Frame, SearchConfig, optimize
from congrucut.shapes import TriangleShape, make_triangle

REF = TriangleShape(4.2, 6.7)
QUICK = SearchConfig(random_starts=8)


@pytest.fixture(scope="module")
def ref_best():
    return triangle_optimum(REF, SearchConfig())


def test_identity_covers_nothing():
    tri = make_triangle(REF)
    cov, _ = coverage_at(tri, SeparatingLine(Point(4, 3), 1.0), Isometry.identity())
    assert cov == pytest.approx(0.0, abs=1e-12)


def test_mirror_axis_of_isosceles_is_perfect():
    tri = make_triangle(TriangleShape(5.0, 4.0))
    axis = SeparatingLine(Point(5, 0), math.pi / 2)
    cov, _ = coverage_at(tri, axis, Isometry.reflection_across(axis))
    assert cov == pytest.approx(1.0, abs=1e-12)


def test_bisector_reflection_at_reference():
    p = method1_candidates(REF)[2]
    cov, _ = coverage_at(p.region, p.line, Isometry.reflection_across(p.line))
    assert cov == pytest.approx(0.9431, abs=1e-4)


def test_reference_optimum_dominates_closed_forms(ref_best, check_partition):
    closed = max(p.coverage for p in [*method1_candidates(REF), *method2_candidates(REF)])
    assert ref_best.coverage >= closed
    check_partition(ref_best.partition)
    assert all(r.coverage <= ref_best.coverage for r in ref_best.runner_ups)
    assert all(0.0 <= v <= 1.0 for v in ref_best.family_scores.values())


def test_reference_optimum_is_pentagon_pair(ref_best):
    p = ref_best.partition
    assert p.family is Family.SEARCH
    assert classify(p) == p.piece_class == 5
    assert len(p.waste) == 3
    assert all(len(w) == 3 for w in p.waste)


def test_reference_optimum_rescored_by_shapely(ref_best):
    p = ref_best.partition
    assert score_configuration(p.region, p.line, p.map) == pytest.approx(p.coverage, abs=1e-9)


def test_reference_optimum_is_local_maximum(ref_best):
    p = ref_best.partition
    frame = Frame(p.region)
    x, reflect = frame.to_vector(p.line, p.map)
    assert frame.coverage(x, reflect) == pytest.approx(p.coverage, abs=1e-9)
    rng = np.random.default_rng(0)
    for _ in range(200):
        dx = rng.normal(0.0, 1e-4, 5)
        assert frame.coverage(x + dx, reflect) <= p.coverage + 1e-9


def test_isosceles_reaches_one():
    s = TriangleShape(5.0, 3.0)
    assert triangle_optimum(s, QUICK).coverage >= 0.999


def test_345_at_least_best_bisector():
    tri = ConvexPolygon.from_points([(0, 0), (4, 0), (0, 3)])
    best = optimize(tri, [*method1_candidates(tri), *method3_seeds(tri)], QUICK)
    assert best.coverage >= 8 / 9 - 1e-12


def test_scale_and_placement_invariance():
    tri = make_triangle(TriangleShape(3.0, 4.0))
    g = Isometry(False, 0.9, Point(-7, 12))
    big = ConvexPolygon(tuple(g(v).scale(3.7) for v in tri.vertices))
    a = optimize(tri, method1_candidates(tri) + method3_seeds(tri), QUICK).coverage
    b = optimize(big, method1_candidates(big) + method3_seeds(big), QUICK).coverage
    assert a == pytest.approx(b, abs=1e-6)


def test_deterministic(ref_best):
    again = triangle_optimum(REF, SearchConfig())
    assert again.coverage == ref_best.coverage
    assert again.partition.line == ref_best.partition.line


def test_beats_coarse_oracle():
    tri = make_triangle(TriangleShape(3.0, 4.0))
    ref = brute_force_coverage(tri, samples=6)
    assert triangle_optimum(TriangleShape(3.0, 4.0), QUICK).coverage >= ref - 0.002


def test_seed_only_search():
    tri = make_triangle(REF)
    best = optimize(tri, method1_candidates(tri), SearchConfig(random_starts=0))
    assert best.coverage >= 0.9431 - 1e-4


def test_nothing_to_optimize():
    with pytest.raises(ValueError):
        optimize(make_triangle(REF), [], SearchConfig(random_starts=0))


@pytest.mark.parametrize("kw", [dict(random_starts=-1), dict(local_iters=0), dict(tie_tol=0.0)])
def test_bad_config(kw):
    with pytest.raises(ValueError):
        SearchConfig(**kw)


FRAME = Frame(make_triangle(TriangleShape(3.3, 5.1)))


@settings(max_examples=300, deadline=None)
@given(st.floats(-0.4, 0.4), st.floats(0, 2 * math.pi), st.floats(-math.pi, math.pi),
       st.floats(-0.5, 0.5), st.floats(-0.5, 0.5), st.booleans())
def test_kernel_agrees_with_reference_geometry(off, phi, theta, tx, ty, reflect):
    x = np.array([off, phi, theta, tx, ty])
    line, g = FRAME.from_vector(x, reflect)
    slow, _ = coverage_at(FRAME.region, line, g)
    assert FRAME.coverage(x, reflect) == pytest.approx(slow, abs=1e-9)
    assert score_configuration(FRAME.region, line, g) == pytest.approx(slow, abs=1e-9)
