import random

import gmpy2
import pytest

from m05kim.acceptance import FREE_WITNESS, free_point
from m05kim import resultant as rs
from m05kim.cocycle import mutated_theta
from m05kim.geometric import (TOWERS, ResultantProgram, ScalarEnv, build_P, certify, default_program,
                              evaluate_F, homogeneity_weight, kernel_check, random_free_coordinates,
                              random_lyndon_values, random_seed_values, tail_root, theta_coordinates)
from m05kim.lie import coordinates
from m05kim.poly import Poly

ONE = gmpy2.mpq(1)


def cocycle_env(seed):
    r = random.Random(seed)
    lyn = random_lyndon_values(r)
    return ScalarEnv(lyn, theta_coordinates(lyn, random_seed_values(r)), ONE)


def free_env(seed):
    r = random.Random(seed)
    return ScalarEnv(random_lyndon_values(r), random_free_coordinates(r), ONE)


def test_certified_shape():
    c = certify()
    assert c.d == (2, 2, 2)
    assert c.k == (0, 0, 0)
    assert default_program().d == c.d


def test_certification_is_stable_across_seeds():
    assert certify(3, seed=11).d == certify(3, seed=12).d


@pytest.mark.parametrize("index", sorted(TOWERS))
def test_uncorrected_variant_misses_the_tail_root(index):
    # at a cocycle point the tau seed on the tower tail is a root of the corrected P only
    r = random.Random(5)
    lyn, seeds = random_lyndon_values(r), random_seed_values(r)
    env = ScalarEnv(lyn, theta_coordinates(lyn, seeds), ONE)
    y = tail_root(seeds, index)
    assert rs.peval(build_P(env, TOWERS[index]), y, env.zero) == 0
    assert rs.peval(build_P(env, TOWERS[index], variant="uncorrected"), y, env.zero) != 0


@pytest.mark.parametrize("tower", TOWERS.values())
def test_norm_mode_collapses(tower):
    # the conjugate product vanishes identically, so it carries no information
    for env in (cocycle_env(3), free_env(3)):
        assert all(c == 0 for c in build_P(env, tower, mode="norm"))
    assert any(c != 0 for c in build_P(free_env(3), tower, mode="branch"))


def test_kernel_check_small():
    rep = kernel_check(5, seed=7)
    assert rep.all_zero and len(rep.seeds) == 5
    assert kernel_check(5, seed=7).seeds == rep.seeds


def test_kernel_check_rejects_bad_trials():
    with pytest.raises(ValueError):
        kernel_check(0)


@pytest.mark.parametrize("index", [0, 4, 9, 13])
def test_mutation_is_detected(index):
    lam = coordinates(4)[index]
    with mutated_theta(lam, Poly.const(1)):
        assert not kernel_check(2, seed=1).all_zero


def test_free_point_witness():
    lyn, coords = free_point()
    assert evaluate_F(lyn, coords) == FREE_WITNESS


def test_final_resultant_routes_agree():
    lyn, coords = free_point()
    base = default_program()
    euclid = ResultantProgram(base.d, base.k, final="euclid")
    assert evaluate_F(lyn, coords, program=euclid) == FREE_WITNESS


def test_symbolic_inner_resultant_matches_interpolation():
    r = random.Random(2)
    lyn = {w: gmpy2.mpq(r.randint(1, 9), r.randint(1, 5)) for w in random_lyndon_values(r)}
    coords = {lam.name: gmpy2.mpq(r.randint(-9, 9), r.randint(1, 5)) for lam in coordinates(4)}
    base = default_program()
    symbolic = ResultantProgram(base.d, base.k, interpolation=False)
    assert evaluate_F(lyn, coords, program=symbolic) == evaluate_F(lyn, coords)


def test_homogeneity_weight():
    assert homogeneity_weight() == 324
