"""Acceptance criteria; each test prints its PASS/FAIL line (visible with -s)."""
import pytest

from curvecount.acceptance import CRITERIA, LIMITS, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    outcome = run_criterion(number)
    print(outcome.line())
    assert outcome.passed, outcome.detail
    if number in LIMITS:
        assert outcome.elapsed < LIMITS[number], f"took {outcome.elapsed:.2f}s"
