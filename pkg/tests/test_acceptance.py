"""Acceptance matrix: one test per criterion, each printing a PASS/FAIL line.

The lines are collected in LINES and echoed in the pytest terminal summary
(see conftest.py).  scripts/run_acceptance.py prints the same lines without pytest.
"""

import pytest

from rigged.suites import ACCEPTANCE, check_criterion

LINES = {}


@pytest.mark.parametrize("number", sorted(ACCEPTANCE))
def test_criterion(number):
    _, problems, line = check_criterion(number)
    LINES[number] = line
    print(line)
    assert not problems, line
