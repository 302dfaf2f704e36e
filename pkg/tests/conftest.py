import pytest

from congrucut.geom import area, congruent, intersect_convex


def _check(p):
    assert congruent(p.piece1, p.piece2, 1e-6)
    assert area(intersect_convex(p.piece1, p.region)) == pytest.approx(p.piece1.area, abs=1e-7)
    assert area(intersect_convex(p.piece2, p.region)) == pytest.approx(p.piece2.area, abs=1e-7)
    assert area(intersect_convex(p.piece1, p.piece2)) <= 1e-7
    assert p.coverage == pytest.approx((p.piece1.area + p.piece2.area) / p.region.area, abs=1e-9)
    assert 0.0 <= p.coverage <= 1.0 + 1e-12


@pytest.fixture
def check_partition():
    """Assert the structural invariants every partition must satisfy."""
    return _check


REPORT_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_report(request):
    return request.config.stash.setdefault(REPORT_KEY, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(REPORT_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
