import math

import pytest

from congrucut.shapes import GridSpec, OutOfRegion, TriangleShape, grid, make_triangle, metrics, mirrored


def test_reference_shape_area():
    assert make_triangle(TriangleShape(4.2, 6.7)).area == pytest.approx(33.5)


def test_equilateral_boundary_point_accepted():
    s = TriangleShape(5.0, 8.660)
    assert s.valid
    m = metrics(TriangleShape(5.0, 8.6603))
    for a in (m.alpha, m.beta, m.gamma):
        assert a == pytest.approx(math.pi / 3, abs=1e-4)


@pytest.mark.parametrize("x, y", [(6, 1), (2, 0), (2, -1), (0, 3), (1, 5), (math.inf, 1)])
def test_out_of_region(x, y):
    s = TriangleShape(x, y)
    assert not s.valid
    with pytest.raises(OutOfRegion, match="outside shape region"):
        make_triangle(s)


def test_metrics_reference():
    m = metrics(TriangleShape(4.2, 6.7))
    assert m.side_b == pytest.approx(7.9074, abs=5e-4)
    assert m.side_a == pytest.approx(8.8617, abs=1e-4)
    assert m.h == 6.7
    assert m.alpha + m.beta + m.gamma == pytest.approx(math.pi)


def test_metrics_sliver_sides():
    m = metrics(TriangleShape(2.9289, 1e-3))
    assert m.side_b == pytest.approx(2.929, abs=1e-3)
    assert m.side_a == pytest.approx(7.071, abs=1e-3)


def test_grid_members_valid():
    shapes = grid(GridSpec(1.0, 0.5))
    assert shapes
    assert all(s.valid for s in shapes)
    assert shapes[0].y3 == 0.5


def test_grid_hand_enumerated():
    assert grid(GridSpec(2.5, 2.5)) == [
        TriangleShape(2.5, 2.5), TriangleShape(5.0, 2.5),
        TriangleShape(2.5, 5.0), TriangleShape(5.0, 5.0),
        TriangleShape(5.0, 7.5),
    ]


def test_grid_too_coarse_is_empty():
    assert grid(GridSpec(20.0, 20.0)) == []


@pytest.mark.parametrize("step, ymin", [(0, 1), (-1, 1), (1, 0.01)])
def test_bad_grid_spec(step, ymin):
    with pytest.raises(ValueError):
        GridSpec(step, ymin)


def test_mirrored_twin_is_congruent():
    s = TriangleShape(3.0, 4.0)
    a, b = make_triangle(s), mirrored(s)
    assert sorted(a.perimeter for _ in (0,)) == [pytest.approx(b.perimeter)]
    assert a.area == pytest.approx(b.area)
