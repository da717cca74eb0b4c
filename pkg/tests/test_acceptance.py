"""Acceptance gate: the nine verification criteria, one pass/fail line each.

Every criterion is decided in exact arithmetic; the stated time budgets are
hard bounds.  Run with `pytest -s` (or look at the captured output) to see the
per-criterion lines.
"""

import pytest

from kleinsail import verify

CRITERIA = sorted(verify.suite_number(name) for name in verify._NAMES.values())


@pytest.mark.parametrize("number", CRITERIA)
def test_criterion(number, capsys):
    result = verify.run([number])[0]
    with capsys.disabled():
        print(result.line())
    assert result.passed, result.line()
    if result.budget is not None:
        assert result.elapsed < result.budget, (
            f"criterion {number} exceeded its {result.budget}s budget: "
            f"{result.elapsed:.2f}s"
        )
