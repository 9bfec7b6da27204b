from fractions import Fraction

import pytest

from m05kim.padic import PadicContext
from m05kim.periods import (CONSISTENT_TABLE, COPRODUCT_TABLE_ERRATA, REFERENCE_TABLE, ZETA3, DictionaryMismatch,
                            Li, NotSUnit, PeriodDictionary, PeriodSymbol, W, build_period_dictionary,
                            coproduct_table, derive_dictionary, full_inversion, l2, l3, log,
                            period_half_weights, recompute_sigma_constants, recorded_coproduct_table,
                            sigma_pairing, six_unit_valuations, table_dictionary, validate_dictionary,
                            zeta3_coefficient)
from m05kim.pipeline import X_POINTS

CTX = PadicContext(13, 20)


@pytest.fixture(scope="module")
def derived():
    return derive_dictionary(CTX)


def test_symbols():
    assert PeriodSymbol.parse("Li(4,2/3)") == PeriodSymbol("Li", 4, Fraction(2, 3))
    assert PeriodSymbol.parse("zeta3").half_weight == 3
    with pytest.raises(ValueError):
        PeriodSymbol("Li", 2, 1)
    with pytest.raises(ValueError):
        PeriodSymbol.parse("exp(2)")


def test_logs_of_six_units():
    assert six_unit_valuations(Fraction(-8, 27)) == (3, -3)
    with pytest.raises(NotSUnit):
        six_unit_valuations(10)
    assert log(Fraction(-4, 3)) == 2 * l2 - l3
    assert log(5).variables() == {"log(5)"}


def test_recomputed_dictionary_matches_its_table(derived):
    assert derived.entries == CONSISTENT_TABLE
    d = build_period_dictionary(CTX)
    assert len(d.sha256()) == 64


def test_reference_constants_disagree_with_reference_table():
    # two weight-four entries cannot be reproduced from the reference inputs
    with pytest.raises(DictionaryMismatch) as info:
        build_period_dictionary(CTX, constants="reference")
    assert str(info.value).endswith("tau.tau.upsilon.upsilon, tau.upsilon.upsilon.upsilon")


def test_reference_derivation_agrees_below_weight_four():
    ref = derive_dictionary(CTX, "reference").entries
    same = [w for w in REFERENCE_TABLE if ref[w] == REFERENCE_TABLE[w]]
    assert len(same) == 9


def test_entries_are_homogeneous(derived):
    for w, p in derived.entries.items():
        assert period_half_weights(p) == {len(w) + 2 * w.count("sigma")}


def test_single_inversion_agrees(derived):
    full = full_inversion(CTX, derived.sigma)
    for w in (W("t", "t", "t", "u"), W("t", "t", "u", "u"), W("t", "u", "u", "u")):
        assert full[w] == derived.entries[w]


def test_sigma_constants():
    f_st, f_su = recompute_sigma_constants(CTX)
    assert f_st == -Fraction(8, 7) * Li(4, Fraction(1, 2)) - Fraction(1, 21) * l2 ** 4
    assert l3 * ZETA3 - f_su == CONSISTENT_TABLE[W("u", "s")]


@pytest.mark.parametrize("a,expected", [(Fraction(1, 2), Fraction(7, 8)), (Fraction(4, 3), Fraction(-1, 3)),
                                        (Fraction(9), None), (Fraction(1, 3), Fraction(0))])
def test_sigma_pairings(a, expected):
    values = {q: sigma_pairing(a, PadicContext(q, 20)) for q in (5, 7, 11, 13)}
    assert len(set(values.values())) == 1
    if expected is not None:
        assert values[13] == expected


def test_zeta3_coefficient():
    assert zeta3_coefficient(ZETA3 * 5, CTX) == 5
    assert zeta3_coefficient(Li(3, 1 - Fraction(1, 2)) * 0, CTX) == 0


def test_validate_recomputed_dictionary():
    res = validate_dictionary(CONSISTENT_TABLE, CTX, X_POINTS)
    assert len(res) == 3 * len(X_POINTS)
    assert min(res.values()) >= 19


def test_validate_reference_dictionary_finds_discrepancy():
    res = validate_dictionary(REFERENCE_TABLE, CTX, [Fraction(4, 3)], weights=(4,))
    assert res[(4, Fraction(4, 3))] < 15


def test_table_dictionary_shape():
    d = table_dictionary()
    assert len(d.entries) == 11 and d[W("s")] == ZETA3
    with pytest.raises(ValueError):
        PeriodDictionary({W("t"): l2}, {})
    bad = dict(CONSISTENT_TABLE)
    bad[W("t")] = l2 * l3
    with pytest.raises(ValueError):
        PeriodDictionary(bad, {})


def test_coproduct_table_11_matches():
    assert coproduct_table((1, 1)) == recorded_coproduct_table((1, 1))


def test_coproduct_table_21_single_cell_differs():
    computed, recorded = coproduct_table((2, 1)), recorded_coproduct_table((2, 1))
    diffs = [(k, i) for k in recorded for i, (a, b) in enumerate(zip(computed[k], recorded[k])) if a != b]
    assert diffs == list(COPRODUCT_TABLE_ERRATA[(2, 1)])
    assert computed == recorded_coproduct_table((2, 1), corrected=True)
