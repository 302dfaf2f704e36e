import math

import pytest

from congrucut.experiments import (
    GOLDEN,
    InvalidInput,
    scalene_gap,
    m1_flat_coverage,
    m1_flat_minimax,
    perfect_partition_exists,
    predicted_trim_coverage,
    sliver_limit,
    trim_experiment,
)
from congrucut.search import SearchConfig
from congrucut.shapes import TriangleShape, make_triangle
from congrucut.sweep import Mode

REF = TriangleShape(4.2, 6.7)
QUICK = SearchConfig(random_starts=8)


def test_predicted_identities():
    assert predicted_trim_coverage(0.93, 0.0) == 0.93
    assert predicted_trim_coverage(1.0, 0.01) == pytest.approx(1.0)


def test_trim_at_reference():
    eps = 0.001 * make_triangle(REF).area
    rep = trim_experiment(REF, eps)
    assert rep.eps_hat == pytest.approx(0.001)
    assert rep.observed < rep.alpha
    assert abs(rep.observed - rep.predicted) <= max(1e-3, 0.5 * rep.eps_hat)
    assert rep.trimmed.area == pytest.approx(make_triangle(REF).area - 2 * eps)


def test_trim_zero_is_identity():
    rep = trim_experiment(REF, 0.0, QUICK)
    assert rep.observed == rep.predicted == rep.alpha


def test_trimmed_isosceles_stays_at_most_one():
    s = TriangleShape(5.0, 4.0)
    rep = trim_experiment(s, 0.001 * make_triangle(s).area, QUICK)
    assert rep.observed <= 1.0 + 1e-12


def test_trim_too_large_rejected():
    with pytest.raises(InvalidInput):
        trim_experiment(REF, 0.02 * make_triangle(REF).area, QUICK)


@pytest.mark.parametrize("s", [TriangleShape(5.0, 8.6603), TriangleShape(5.0, 1.0), TriangleShape(5.0, 6.0)])
def test_perfect_partition_on_symmetry_locus(s):
    assert perfect_partition_exists(s)


def test_no_perfect_partition_for_scalene():
    assert not perfect_partition_exists(REF)


def test_gap_positive_for_scalene():
    assert scalene_gap(TriangleShape(3.0, 4.0), QUICK) > 0.005
    # stays well above the 1e-3 floor at the reference shape
    assert scalene_gap(REF, QUICK) > 1e-3


def test_gap_rejects_isosceles():
    with pytest.raises(InvalidInput):
        scalene_gap(TriangleShape(5.0, 3.0))


def test_golden_sliver_limit():
    assert sliver_limit(3.8197, Mode.M1) == pytest.approx(1 - 1 / GOLDEN**3, abs=5e-3)


def test_silver_sliver_limit():
    assert sliver_limit(2.9289, Mode.M1M2) == pytest.approx(0.8284, abs=0.02)


@pytest.mark.parametrize("x", [0.0, 5.0, 7.0])
def test_sliver_limit_rejects_bad_x(x):
    with pytest.raises(InvalidInput):
        sliver_limit(x, Mode.M1)


def test_flat_closed_form():
    assert m1_flat_coverage(3.8197) == pytest.approx(0.76393, abs=1e-4)


def test_flat_minimax_is_golden_root():
    x = m1_flat_minimax()
    assert x == pytest.approx(10 / GOLDEN**2, abs=1e-6)
    assert x * x - 30 * x + 100 == pytest.approx(0.0, abs=1e-9)
    assert x == pytest.approx(15 - 5 * math.sqrt(5), abs=1e-12)
