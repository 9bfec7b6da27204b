"""One test per acceptance criterion; each prints a single PASS/FAIL line."""
import pytest

from m05kim import acceptance


@pytest.fixture
def check(capsys):
    def report(res):
        with capsys.disabled():
            print("\n" + res.line())
        assert res.passed, res.details
    return report


def test_criterion_1_kernel_identity(check):
    check(acceptance.kernel_identity())


def test_criterion_2_nonvanishing(check):
    check(acceptance.nonvanishing())


@pytest.mark.slow
def test_criterion_3_lie_structure(check):
    check(acceptance.lie_structure())


def test_criterion_4_theta_table(check):
    check(acceptance.theta_table())


def test_criterion_5_arithmetic_step(check):
    check(acceptance.arithmetic_step())


def test_criterion_6_padic_identities(check):
    check(acceptance.padic_identities())


def test_criterion_7_polylog_properties(check):
    check(acceptance.polylog_properties())


@pytest.mark.slow
def test_criterion_8_end_to_end(check):
    check(acceptance.end_to_end())


def test_criterion_9_enumeration(check):
    check(acceptance.enumeration())
