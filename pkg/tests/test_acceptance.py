"""Acceptance gate: every criterion runs at its stated tolerance.

One test per criterion; each prints a single pass/fail line.  The checks
live in contractsched.verification so the CLI `verify` command and this
module agree on what is being asserted.
"""

import pytest

from contractsched.verification import ACCEPTANCE_CHECKS, ALL_CHECKS, VerifyConfig

CONFIG = VerifyConfig(seed=0)
PROPERTY_CHECKS = [c for c in ALL_CHECKS if c.check_id.startswith("P")]


@pytest.mark.parametrize("check", ACCEPTANCE_CHECKS, ids=[c.check_id for c in ACCEPTANCE_CHECKS])
def test_acceptance_criterion(check):
    result = check(CONFIG)
    print(f"{result.check_id} {'PASS' if result.passed else 'FAIL'} ({result.seconds:.2f}s): {result.details}")
    assert result.passed, f"{result.check_id} {result.description}: {result.details}"


@pytest.mark.parametrize("check", PROPERTY_CHECKS, ids=[c.check_id for c in PROPERTY_CHECKS])
def test_property_suite(check):
    result = check(CONFIG)
    print(f"{result.check_id} {'PASS' if result.passed else 'FAIL'} ({result.seconds:.2f}s): {result.details}")
    assert result.passed, f"{result.check_id} {result.description}: {result.details}"
