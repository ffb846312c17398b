from __future__ import annotations

import pytest

from stoichgeom.corpus import CASES, run_case

SUPPLEMENTARY = [c for c in CASES if c.criterion is None]


@pytest.mark.parametrize("case", SUPPLEMENTARY, ids=[c.key for c in SUPPLEMENTARY])
def test_supplementary_case(case):
    result = run_case(case)
    assert result.passed, result.line()
