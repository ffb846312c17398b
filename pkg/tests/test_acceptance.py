"""Acceptance criteria: one test per criterion, each backed by a corpus case.

Each test records a "[PASS] n ..." or "[FAIL] n ..." line; the lines are
printed in the terminal summary (see conftest.py) and when this file is run
as a script.
"""

from __future__ import annotations

import sys

import pytest

from stoichgeom.corpus import CASES, run_case

ACCEPTANCE = [c for c in CASES if c.criterion is not None]
LINES: dict[int, str] = {}


def acceptance_line(result) -> str:
    tag = "PASS" if result.passed else "FAIL"
    line = f"[{tag}] {result.criterion:2d} {result.title}"
    if result.error:
        line += f" | error: {result.error}"
    for check in result.failures():
        line += f" | {check.label}: {check.detail}"
    return line


@pytest.mark.parametrize("case", ACCEPTANCE, ids=[f"criterion_{c.criterion:02d}" for c in ACCEPTANCE])
def test_criterion(case):
    result = run_case(case)
    LINES[case.criterion] = acceptance_line(result)
    print(LINES[case.criterion])
    assert result.error is None, result.error
    failed = [f"{c.label}: {c.detail}" for c in result.failures()]
    assert not failed, "; ".join(failed)


def test_every_criterion_has_a_case():
    assert sorted(c.criterion for c in ACCEPTANCE) == list(range(1, 17))


if __name__ == "__main__":
    results = [run_case(c) for c in ACCEPTANCE]
    for r in results:
        print(acceptance_line(r))
    sys.exit(0 if all(r.passed for r in results) else 1)
