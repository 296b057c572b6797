"""Acceptance criteria, one test each.

Each test prints a single PASS/FAIL line (visible with ``pytest -s``); the
lines are also collected into an "acceptance criteria" section of the
terminal summary.  Tolerances are exact equality and,
where stated, a wall-clock limit enforced inside the driver.
"""

import pytest

from affauto import verify
from conftest import CRITERION_LINES


@pytest.mark.parametrize(
    "number",
    sorted(verify.CRITERIA),
    ids=[f"{k}-{name}" for name, k in sorted(verify.SUITES.items(), key=lambda kv: kv[1])],
)
def test_criterion(number):
    result = verify.CRITERIA[number](verify.DEFAULT_SEED)
    print(result.line())
    CRITERION_LINES.append(result.line())
    assert result.passed, result.line()


def test_worked_semigroup_example_is_part_of_the_suite():
    assert "(2, 3)" in verify.criterion_7(count=1).detail
