from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from m05kim.lie import (GAMMA, GENERATORS, PLBasisVector, PLCoordinate, PLLieElement, WeightBoundExceeded,
                        ad_power, bracket, coordinates, lie_normal_form, pl_dim, tower_pairing,
                        verify_pl_coordinate)
from m05kim.shuffle import ShuffleElement


def test_basis_vector_validation():
    assert PLBasisVector("T12", 3).half_weight == 4
    with pytest.raises(ValueError):
        PLBasisVector("E1", 2)
    with pytest.raises(ValueError):
        PLBasisVector("X")


def test_relations_vanish():
    assert lie_normal_form(("e1", "e2")).is_zero()
    assert lie_normal_form(("e2", ad_power("e1", 3, "e11"))).is_zero()
    assert lie_normal_form([(1, ("e1", "e12")), (-1, ("e2", "e12"))]).is_zero()
    for n in range(1, 6):
        diff = [(1, ad_power("e1", n, "e12")), (-1, ad_power("e2", n, "e12"))]
        assert lie_normal_form(diff).is_zero()


def test_normal_form_idempotent_on_basis():
    x = lie_normal_form(ad_power("e1", 2, "e11"))
    assert x == PLLieElement({PLBasisVector("T11", 2): 1})
    assert lie_normal_form(x) == x


def test_weight_bound():
    with pytest.raises(WeightBoundExceeded):
        lie_normal_form(ad_power("e1", 6, "e11"), weight_bound=6)


basis = st.sampled_from([PLBasisVector("E1"), PLBasisVector("E2")]
                        + [PLBasisVector(k, n) for k in ("T11", "T22", "T12") for n in range(3)])
elements = st.dictionaries(basis, st.integers(-3, 3), max_size=3).map(PLLieElement)


@settings(max_examples=100, deadline=None)
@given(elements, elements, elements)
def test_antisymmetry_and_jacobi(x, y, z):
    assert bracket(x, y) + bracket(y, x) == 0
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert jac == 0


@pytest.mark.parametrize("n,expected", [(1, 5), (2, 3), (3, 3), (4, 3), (5, 3)])
def test_pl_dim(n, expected):
    assert pl_dim(n) == expected


@pytest.mark.slow
def test_pl_dim_six():
    assert pl_dim(6) == 3


def test_coordinates_list():
    names = [c.name for c in coordinates(4)]
    assert len(names) == 14
    assert "e12(e1+e2)^3" in names
    assert PLCoordinate("12", 2).element() == ShuffleElement(GAMMA, {("e12", "e1"): 1, ("e12", "e2"): 1})


@pytest.mark.parametrize("lam", coordinates(4), ids=str)
def test_every_coordinate_is_polylogarithmic(lam):
    assert verify_pl_coordinate(lam, 6)


def test_non_coordinate_is_rejected():
    assert not verify_pl_coordinate(ShuffleElement.word(GAMMA, ("e1", "e12")), 6)


def test_weight_bound_below_coordinate():
    with pytest.raises(ValueError):
        verify_pl_coordinate(PLCoordinate("11", 4), 3)


@pytest.mark.parametrize("n", range(6))
def test_tower_pairing_sign(n):
    assert tower_pairing(n) == Fraction((-1) ** n)


def test_generators():
    assert GENERATORS == ("e1", "e2", "e11", "e22", "e12")
