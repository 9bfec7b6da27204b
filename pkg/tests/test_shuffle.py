from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from m05kim.cocycle import DEFAULT_CONFIG
from m05kim.poly import Poly
from m05kim.shuffle import (AlphabetMismatch, GradedAlphabet, ShuffleElement, TensorElement, deconcat,
                            dual_var, expand_in_lyndon, is_lyndon, lyndon_factorization, lyndon_to_shuffle,
                            lyndon_words, pair, shuffle)

G = DEFAULT_CONFIG.alphabet
GEO = GradedAlphabet((("e1", 1), ("e11", 1), ("e2", 1), ("e22", 1), ("e12", 1)))
AB = GradedAlphabet((("a", 1), ("b", 1), ("c", 2)))


def w(alphabet, *letters):
    return ShuffleElement.word(alphabet, letters)


words = st.lists(st.sampled_from(["a", "b", "c"]), max_size=5).map(tuple)
elements = st.dictionaries(words, st.integers(-3, 3).map(Fraction), max_size=3).map(lambda d: ShuffleElement(AB, d))


def test_alphabet_validation():
    with pytest.raises(ValueError):
        GradedAlphabet((("a", 1), ("a", 2)))
    with pytest.raises(ValueError):
        GradedAlphabet((("a", 0),))
    assert G.names == ("tau", "upsilon", "sigma")
    assert G.half_weight(("tau", "sigma")) == 4


def test_shuffle_examples():
    assert w(G, "tau") * w(G, "sigma") == w(G, "tau", "sigma") + w(G, "sigma", "tau")
    two = w(G, "tau")
    assert two * two == w(G, "tau", "tau").scale(2)
    assert ShuffleElement.unit(G) * w(G, "tau", "upsilon") == w(G, "tau", "upsilon")


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        shuffle(w(G, "tau"), w(AB, "a"))
    with pytest.raises(AlphabetMismatch):
        w(G, "e1")


@settings(max_examples=200, deadline=None)
@given(elements, elements, elements)
def test_shuffle_commutative_associative(u, v, x):
    assert u * v == v * u
    assert (u * v) * x == u * (v * x)


@settings(max_examples=60, deadline=None)
@given(elements)
def test_deconcat_coassociative(u):
    d = deconcat(u)
    assert d.apply_deconcat(0) == d.apply_deconcat(1)


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_deconcat_is_algebra_morphism(u, v):
    assert deconcat(u * v) == deconcat(u).shuffle(deconcat(v))


def test_deconcat_single_letter_primitive():
    d = deconcat(w(GEO, "e1"))
    assert d.terms == {(("e1",), ()): 1, ((), ("e1",)): 1}


def _sum_word(n):
    return ShuffleElement.from_pattern(GEO, [{"e1": 1, "e2": 1}] * n)


def test_deconcat_linear_letter_power():
    lhs = deconcat(_sum_word(3))
    rhs = TensorElement(GEO)
    for i in range(4):
        rhs = rhs + TensorElement.tensor(_sum_word(i), _sum_word(3 - i))
    assert lhs == rhs


def test_deconcat_headed_tower():
    head = ShuffleElement.from_pattern(GEO, ["e12"] + [{"e1": 1, "e2": 1}] * 2)
    rhs = TensorElement.tensor(ShuffleElement.unit(GEO), head)
    for i in range(3):
        left = ShuffleElement.from_pattern(GEO, ["e12"] + [{"e1": 1, "e2": 1}] * i)
        rhs = rhs + TensorElement.tensor(left, _sum_word(2 - i))
    assert deconcat(head) == rhs


def test_pairing():
    f = w(G, "tau", "sigma")
    assert pair(f, ("tau", "sigma")) == 1
    assert pair(f, ("sigma", "tau")) == 0
    g = ShuffleElement.from_pattern(GEO, ["e12", {"e1": 1, "e2": 1}])
    assert pair(g, ("e12", "e1")) == 1
    with pytest.raises(AlphabetMismatch):
        pair(f, ("e1",))


def test_shuffle_power_identity():
    a, b = Poly.var("a"), Poly.var("b")
    alpha = GradedAlphabet((("x", 1), ("y", 1)))
    lin = ShuffleElement(alpha, {("x",): a, ("y",): b})
    for n in range(1, 5):
        expected = {}
        for word in alpha.words(n):
            c = Poly.const(factorial(n))
            for letter in word:
                c = c * (a if letter == "x" else b)
            expected[word] = c
        assert (lin ** n).terms == ShuffleElement(alpha, expected).terms


def test_lyndon_words_of_galois_alphabet():
    lw = lyndon_words(G, 4)
    assert len(lw) == 11
    assert ("tau", "sigma") in lw and ("sigma", "tau") not in lw
    assert all(is_lyndon(G, x) for x in lw)


def test_lyndon_factorization_non_increasing():
    word = ("upsilon", "tau", "tau", "upsilon", "sigma")
    parts = lyndon_factorization(G, word)
    assert sum(parts, ()) == word
    keys = [G.key(p) for p in parts]
    assert keys == sorted(keys, reverse=True)


def test_expand_in_lyndon_examples():
    fT, fU, fS = (Poly.var(dual_var((x,))) for x in ("tau", "upsilon", "sigma"))
    assert expand_in_lyndon(G, ("upsilon", "tau")) == fT * fU - Poly.var(dual_var(("tau", "upsilon")))
    assert expand_in_lyndon(G, ("tau", "tau")) == fT * fT * Fraction(1, 2)
    assert expand_in_lyndon(G, ("sigma", "tau")) == fS * fT - Poly.var(dual_var(("tau", "sigma")))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_expand_in_lyndon_round_trip(n):
    for word in G.words(n):
        assert lyndon_to_shuffle(G, expand_in_lyndon(G, word)) == ShuffleElement.word(G, word)
