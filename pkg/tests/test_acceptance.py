"""Acceptance suite: every criterion at its stated tolerance, one
pass/fail line each (run with -s to see them inline)."""

import pytest

from monorm.selfcheck import CRITERIA


@pytest.mark.parametrize("label,criterion", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, criterion):
    result = criterion()
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}  criterion {label}: {result.detail}")
    assert result.passed, f"criterion {label}: {result.detail}"
