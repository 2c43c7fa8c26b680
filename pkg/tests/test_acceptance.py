"""Acceptance gate: every criterion at its stated tolerance, one line each."""

import pytest

from compatorder.sweeps import CRITERIA, SweepConfig

CFG = SweepConfig()
# the oracle sweep carries a wall-clock bound in addition to zero discrepancies
TIME_LIMITS = {1: 120.0}


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: c.__name__.removeprefix("criterion_"))
def test_criterion(criterion, capsys):
    result = criterion(CFG)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.violations[:5]
    limit = TIME_LIMITS.get(result.number)
    if limit is not None:
        assert result.seconds < limit
