from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from m05kim.padic import PadicContext, padic_log
from m05kim.polylog import PolylogDomainError, li_series, padic_li, padic_zeta

P, N = 13, 20
CTX = PadicContext(P, N)


def test_li1_is_minus_log():
    assert padic_li(1, CTX(Fraction(4, 3))) == padic_log(CTX(3))
    for z in (Fraction(1, 2), Fraction(5), Fraction(-7, 4)):
        assert padic_li(1, CTX(z)) == -padic_log(CTX(1 - z))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6), st.integers(1, 4))
def test_disk_matches_series(a, b, n):
    z = CTX(Fraction(P * a, P * b + 1))
    assert (padic_li(n, z) - li_series(n, z)).valuation() >= N - 1




def _good(z: Fraction) -> bool:
    if z == 0 or z.denominator % P == 0:
        return False
    return (z.numerator - z.denominator) % P != 0 and (z.numerator + z.denominator) % P != 0


samples = st.fractions(min_value=-500, max_value=500, max_denominator=500).filter(_good)


@settings(max_examples=25, deadline=None)
@given(samples, st.integers(1, 4))
def test_distribution_relation(z, n):
    x = CTX(z)
    lhs = padic_li(n, x * x)
    rhs = (padic_li(n, x) + padic_li(n, -x)) * 2 ** (n - 1)
    assert (lhs - rhs).valuation() >= N - 2


@settings(max_examples=20, deadline=None)
@given(samples.filter(lambda z: z.numerator % P != 0), st.integers(1, 4))
def test_inversion_relation(z, n):
    # Li_n(z) + (-1)^n Li_n(1/z) = -log(-z)^n / n!, with zeta_p of even weight equal to zero
    x = CTX(z)
    lhs = padic_li(n, x) + padic_li(n, 1 / x) * (-1) ** n
    rhs = -(padic_log(-x) ** n) / factorial(n)
    assert (lhs - rhs).valuation() >= N - 3


@pytest.mark.parametrize("n", [2, 4])
def test_even_values_at_minus_one_vanish(n):
    assert padic_li(n, CTX(-1)).valuation() >= N - 2


def test_zeta3_from_three_term_relation():
    # Li_3(z) + Li_3(1-z) + Li_3(1-1/z) = zeta(3) + log^3 z / 6 - log^2 z log(1-z) / 2
    z = CTX(Fraction(5, 7))
    lz, l1z = padic_log(z), padic_log(1 - z)
    lhs = padic_li(3, z) + padic_li(3, 1 - z) + padic_li(3, 1 - 1 / z)
    rhs = padic_zeta(3, CTX) + lz ** 3 / 6 - lz ** 2 * l1z / 2
    assert (lhs - rhs).valuation() >= N - 3


def test_zeta_argument_checks():
    with pytest.raises(ValueError):
        padic_zeta(4, CTX)
    with pytest.raises(ValueError):
        padic_li(0, CTX(2))


def test_domain():
    with pytest.raises(PolylogDomainError):
        padic_li(2, CTX(Fraction(1, 13)))
    with pytest.raises(PolylogDomainError):
        li_series(2, CTX(3))
    assert padic_li(3, CTX.zero()).is_exact_zero()


def test_result_precision_matches_input():
    out = padic_li(2, CTX(Fraction(2, 5)))
    assert out.absprec() <= N + out.valuation()
