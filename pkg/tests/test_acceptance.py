"""Acceptance gate: every criterion runs at its stated size and tolerance
(exact equalities in modular arithmetic; the two oracle-agreement checks
carry their own margins).  One PASS/FAIL line prints per criterion; the CLI
``congroup selftest`` runs the same functions."""

import pytest

from congroup import selftest

SEED = 0


@pytest.mark.parametrize("criterion", selftest.CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion):
    result = criterion(SEED)
    print(result.line())
    assert result.passed, result.line()
