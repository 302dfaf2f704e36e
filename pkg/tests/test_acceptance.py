"""Numbered acceptance criteria at their stated tolerances.

Fast settings by default; set ``CONGRUCUT_FULL_ACCEPTANCE=1`` for the
default-resolution runs.  Each criterion prints one PASS/FAIL line.
"""

import os

import pytest

from congrucut.acceptance import CRITERIA, FAST, FULL, Context, run_criterion

FULL_RUN = os.environ.get("CONGRUCUT_FULL_ACCEPTANCE") == "1"


@pytest.fixture(scope="module")
def ctx():
    return Context(FULL if FULL_RUN else FAST)


@pytest.mark.slow
@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, ctx, acceptance_report):
    res = run_criterion(number, ctx)
    print(res.line())
    acceptance_report.append(res.line())
    assert res.passed, res.line()
