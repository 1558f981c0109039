"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

Criterion 7 is expected to fail: the closed-form bound 1 + e^(k/p) does not
dominate the recursive monotone threshold for some p >= 3 and k >= 7.  The
check stays strict rather than being relaxed to pass.
"""

import pytest

from mbox.acceptance import ALL_CHECKS
from mbox.solver import Solver


@pytest.fixture(scope="module")
def solver():
    return Solver()


@pytest.mark.parametrize("check", ALL_CHECKS, ids=lambda fn: fn.__name__)
def test_criterion(check, solver, capsys):
    result = check(solver) if "solver" in check.__code__.co_varnames else check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
