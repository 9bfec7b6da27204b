import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from m05kim.cocycle import (DEFAULT_CONFIG, ArithSpecialization, GaloisConfig, cocycle_expand,
                            dimension_audit, half_weight_of_monomial, mutated_theta, phi_var, specialize,
                            symbolic_seed, theta, theta_derived)
from m05kim.lie import PLCoordinate, coordinates
from m05kim.poly import Poly
from m05kim.shuffle import dual_var

G = DEFAULT_CONFIG.alphabet
E1, E2 = PLCoordinate("e1"), PLCoordinate("e2")
T11 = [PLCoordinate("11", i) for i in range(1, 5)]
T12 = [PLCoordinate("12", i) for i in range(1, 5)]


def P(rho, lam):
    return Poly.var(phi_var(rho, lam))


def f(*letters):
    return Poly.var(dual_var(letters))


def test_config_validation():
    with pytest.raises(ValueError):
        GaloisConfig(odd_generators=((4, "x"),))
    with pytest.raises(ValueError):
        GaloisConfig(weight_bound=0)
    assert len(DEFAULT_CONFIG.seed_keys()) == 13
    assert len(DEFAULT_CONFIG.lyndon_words()) == 11


def test_cocycle_expand_weight_two():
    a, b, c, d = (Fraction(x) for x in (2, 3, 5, 7))
    seed = {k: Fraction(0) for k in DEFAULT_CONFIG.seed_keys()}
    seed[("tau", E1)], seed[("upsilon", E1)] = a, b
    seed[("tau", T11[0])], seed[("upsilon", T11[0])] = c, d
    out = cocycle_expand(seed, T11[1])
    assert out.terms == {("tau", "tau"): c * a, ("tau", "upsilon"): c * b,
                         ("upsilon", "tau"): d * a, ("upsilon", "upsilon"): d * b}


def test_cocycle_expand_sigma_terms():
    out = cocycle_expand(symbolic_seed(), T11[3])
    assert out.coefficient(["sigma", "tau"]) == P("sigma", T11[2]) * P("tau", E1)
    assert out.coefficient(["tau", "sigma"]) == 0


def test_cocycle_expand_bound():
    with pytest.raises(ValueError):
        cocycle_expand(symbolic_seed(), PLCoordinate("11", 5))


def test_theta_first_line():
    assert theta(E1) == f("tau") * P("tau", E1) + f("upsilon") * P("upsilon", E1)


def test_theta_mixed_tower_uses_sum():
    th = theta(T12[1])
    s = th.subs({phi_var("tau", E2): Poly.const(0), phi_var("upsilon", E1): Poly.const(0),
                 phi_var("upsilon", E2): Poly.const(0), phi_var("upsilon", T12[0]): Poly.const(0)})
    # only Phi^tau_{e1} survives in Phi^tau_{e1+e2}
    assert s == f("tau") ** 2 * Fraction(1, 2) * P("tau", T12[0]) * P("tau", E1)


def test_theta_sigma_upsilon_term():
    th = theta(T11[3])
    sig_u = th.coefficient_in(phi_var("sigma", T11[2]), 1)
    assert sig_u == (f("sigma") * f("upsilon") - f("upsilon", "sigma")) * P("upsilon", E1) \
        + (f("sigma") * f("tau") - f("tau", "sigma")) * P("tau", E1)


@pytest.mark.parametrize("lam", coordinates(4), ids=str)
def test_theta_table_equals_derived(lam):
    assert theta(lam) == theta_derived(lam)


def _split_weights(mono):
    galois = tuple((v, e) for v, e in mono if not v.startswith("Phi["))
    seeds = tuple((v, e) for v, e in mono if v.startswith("Phi["))
    return half_weight_of_monomial(galois), half_weight_of_monomial(seeds)


@pytest.mark.parametrize("lam", coordinates(4), ids=str)
def test_theta_homogeneous(lam):
    # the Lyndon-dual part and the seed part each carry the half-weight of lambda
    n = lam.half_weight
    assert {_split_weights(m) for m in theta(lam).terms} == {(n, n)}


def test_cocycle_expand_is_graded():
    for lam in coordinates(4):
        assert cocycle_expand(symbolic_seed(), lam).half_weights() == {lam.half_weight}


def test_mutation_changes_theta():
    with mutated_theta(T11[2], Poly.const(1)):
        assert theta(T11[2]) != theta_derived(T11[2])
    assert theta(T11[2]) == theta_derived(T11[2])


def test_specialize_examples():
    spec = ArithSpecialization({w: Fraction(1) for w in DEFAULT_CONFIG.lyndon_words()})
    spec.lyndon_values[("tau",)] = Fraction(1)
    spec.lyndon_values[("upsilon",)] = Fraction(0)
    seed = {k: Fraction(0) for k in DEFAULT_CONFIG.seed_keys()}
    seed[("tau", E1)] = Fraction(5)
    assert specialize(spec, seed, theta(E1)) == 5
    ones = ArithSpecialization({w: Fraction(1) for w in DEFAULT_CONFIG.lyndon_words()})
    assert specialize(ones, {k: Fraction(1) for k in DEFAULT_CONFIG.seed_keys()}, theta(T11[1])) == 2
    zero_seed = {k: Fraction(0) for k in DEFAULT_CONFIG.seed_keys()}
    for lam in coordinates(4):
        assert specialize(ones, zero_seed, theta(lam)) == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(coordinates(4)), st.sampled_from(coordinates(4)))
def test_specialize_is_multiplicative(seed, lam1, lam2):
    rng = random.Random(seed)
    spec = {w: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for w in DEFAULT_CONFIG.lyndon_words()}
    phis = {k: Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for k in DEFAULT_CONFIG.seed_keys()}
    a, b = theta(lam1), theta(lam2)
    assert specialize(spec, phis, a * b) == specialize(spec, phis, a) * specialize(spec, phis, b)


def test_word_value_uses_shuffle_relations():
    spec = ArithSpecialization({w: Fraction(3) for w in DEFAULT_CONFIG.lyndon_words()})
    assert spec.word_value(("tau", "tau")) == Fraction(9, 2)
    assert spec.word_value(("upsilon", "tau")) == 9 - 3


def test_dimension_audit():
    assert dimension_audit("M05") == (14, 13)
    assert dimension_audit("M04") == (5, 5)
    # the counting rule at half-weight bound 3 includes the three sigma seeds of weight 3
    assert dimension_audit("M05", 3) == (11, 13)
