from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from m05kim.padic import PadicContext, padic_log, rational_reconstruct, teichmuller, vp

CTX = PadicContext(13, 20)
small = st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=10 ** 4)


def test_context_validation():
    for bad in (4, 2, 3):
        with pytest.raises(ValueError):
            PadicContext(bad, 20)
    with pytest.raises(ValueError):
        PadicContext(13, 3)


def test_vp():
    assert vp(13 ** 3 * 7, 13) == 3
    assert vp(5, 13) == 0


@settings(max_examples=150, deadline=None)
@given(small, small, small)
def test_ring_operations_match_rationals(a, b, c):
    x, y, z = CTX(a), CTX(b), CTX(c)
    assert x + y == CTX(a + b)
    assert x * y == CTX(a * b)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0
    if b != 0:
        assert x / y == CTX(a / b)


@settings(max_examples=150, deadline=None)
@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=1000))
def test_reconstruction_round_trip(q):
    assume(q.denominator % 13 != 0)
    assert rational_reconstruct(CTX(q)) == q


def test_reconstruction_with_valuation():
    q = Fraction(-7, 9) * 13 ** 2
    x = CTX(q)
    assert x.valuation() == 2
    assert rational_reconstruct(x) == q


def test_exact_and_inexact_zero():
    z = CTX.zero()
    assert z.is_exact_zero() and not z
    w = CTX(13 ** 25)  # beyond the cap: still a nonzero number with valuation 25
    assert w.valuation() == 25 and w.is_exact_zero() is False
    d = CTX(1) + CTX(13 ** 25) - CTX(1)
    assert not d.is_exact_zero() and d.is_zero()
    assert d.valuation() >= 20
    inexact = CTX.inexact_zero(7)
    assert inexact == 0 and inexact.absprec() == 7
    with pytest.raises(ValueError):
        rational_reconstruct(inexact)


def test_precision_is_tracked_through_cancellation():
    a = CTX(Fraction(1, 3))
    b = a + CTX(13 ** 5)
    diff = b - a
    assert diff.valuation() == 5
    assert diff.absprec() <= 20


def test_digit_string():
    assert CTX(0).digit_string() == "0"
    assert CTX(14).digit_string().startswith("13^0:1,1,0")
    assert CTX(Fraction(1, 13)).digit_string().startswith("13^-1:1,")


@pytest.mark.parametrize("a", [2, 3, 5, 12])
def test_teichmuller(a):
    w = teichmuller(CTX(a))
    assert w ** 12 == 1
    assert (w - CTX(a)).valuation() >= 1


def test_teichmuller_rejects_non_units():
    with pytest.raises(ValueError):
        teichmuller(CTX(13))


def test_log_basics():
    assert padic_log(CTX(13)) == 0
    assert padic_log(CTX(-1)) == 0
    assert padic_log(teichmuller(CTX(5))) == 0
    assert padic_log(CTX(14)).valuation() == 1


@settings(max_examples=60, deadline=None)
@given(small, small)
def test_log_is_a_homomorphism(a, b):
    assume(a != 0 and b != 0)
    x, y = CTX(a), CTX(b)
    assume(not x.is_zero() and not y.is_zero())
    assert padic_log(x * y) == padic_log(x) + padic_log(y)


def test_mixing_primes_is_an_error():
    with pytest.raises(ValueError):
        PadicContext(7, 20)(CTX(2))
