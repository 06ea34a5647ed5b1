"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from constrank.acceptance import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(criterion, capsys):
    outcome = criterion()
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.passed, outcome.detail
