"""Galois-side coordinates, cocycle coefficients and the evaluation map theta.

The Galois side is a free graded Lie algebra with a set of half-weight-one
generators (default ``tau, upsilon``) and one generator in each odd half-weight
``>= 3`` (default ``sigma`` in half-weight 3).  A cocycle is determined by the
seed values ``Phi[rho|lambda]`` with ``half_weight(rho) == half_weight(lambda)``;
pulling a geometric coordinate ``f_lambda`` back along it gives a shuffle
element over Galois words whose coefficients are products of seed values.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .lie import PLCoordinate, coordinates
from .poly import Poly
from .shuffle import GradedAlphabet, ShuffleElement, dual_var, expand_in_lyndon, lyndon_words


@dataclass(frozen=True)
class GaloisConfig:
    weight_minus_one_letters: tuple = ("tau", "upsilon")
    odd_generators: tuple = ((3, "sigma"),)
    weight_bound: int = 4
    alphabet: GradedAlphabet = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.weight_bound < 1:
            raise ValueError("weight bound must be positive")
        odd = tuple(sorted((int(k), str(v)) for k, v in dict(self.odd_generators).items()))
        if any(k < 3 or k % 2 == 0 for k, _ in odd):
            raise ValueError("odd generators live in odd half-weights >= 3")
        object.__setattr__(self, "odd_generators", odd)
        letters = [(a, 1) for a in self.weight_minus_one_letters] + [(v, k) for k, v in odd]
        object.__setattr__(self, "alphabet", GradedAlphabet(tuple(letters)))

    def generators_of_weight(self, n: int) -> list:
        if n == 1:
            return list(self.weight_minus_one_letters)
        return [v for k, v in self.odd_generators if k == n]

    def seed_keys(self) -> list:
        """(generator, coordinate) pairs carrying a seed value, for coordinates up to the bound."""
        return [(rho, lam) for lam in coordinates(self.weight_bound)
                for rho in self.generators_of_weight(lam.half_weight)]

    def lyndon_words(self) -> list:
        return lyndon_words(self.alphabet, self.weight_bound)


DEFAULT_CONFIG = GaloisConfig()


def phi_var(rho: str, lam: PLCoordinate | str) -> str:
    name = lam.name if isinstance(lam, PLCoordinate) else lam
    return f"Phi[{rho}|{name}]"


def symbolic_seed(config: GaloisConfig = DEFAULT_CONFIG) -> dict:
    return {(rho, lam): Poly.var(phi_var(rho, lam)) for rho, lam in config.seed_keys()}


def _phi(seed: Mapping, rho: str, lam):
    """Seed value with the combination e1+e2 expanded linearly."""
    if isinstance(lam, dict):
        total = None
        for letter, c in lam.items():
            v = seed[(rho, PLCoordinate(letter))] * c
            total = v if total is None else total + v
        return total
    if isinstance(lam, str):
        lam = PLCoordinate(lam)
    return seed[(rho, lam)]


def cocycle_expand(seed: Mapping, lam: PLCoordinate, config: GaloisConfig = DEFAULT_CONFIG) -> ShuffleElement:
    """Pullback of f_lambda along the cocycle with the given seed values.

    Built by the coproduct recursion: a tower coordinate of length n is the
    length n-1 expansion extended on the right by one half-weight-one letter
    weighted by the tail seed, plus the odd generator of half-weight n.
    """
    if lam.half_weight > config.weight_bound:
        raise ValueError(f"{lam} exceeds the weight bound {config.weight_bound}")
    G = config.alphabet
    if lam.length == 1:
        terms = {(rho,): _phi(seed, rho, lam) for rho in config.generators_of_weight(1)}
        return ShuffleElement(G, terms)
    prev = cocycle_expand(seed, lam.shorter(), config)
    terms: dict = {}
    for w, c in prev.terms.items():
        for rho in config.generators_of_weight(1):
            terms[w + (rho,)] = c * _phi(seed, rho, lam.tail)
    for rho in config.generators_of_weight(lam.length):
        terms[(rho,)] = _phi(seed, rho, lam)
    return ShuffleElement(G, terms)


def to_lyndon_poly(u: ShuffleElement) -> Poly:
    """Rewrite a shuffle element with polynomial coefficients in Lyndon duals."""
    out = Poly()
    for w, c in u.terms.items():
        out = out + Poly.coerce(c) * expand_in_lyndon(u.alphabet, w)
    return out


# The pullback table, written out for the first tower; the other two towers are
# obtained by renaming (e11, e1) to (e22, e2) and to (e12, e1+e2).
_TABLE_E1 = "f(tau) P(tau,e1) + f(upsilon) P(upsilon,e1)"
_TABLE_E2 = "f(tau) P(tau,e2) + f(upsilon) P(upsilon,e2)"
_TABLE_TOWER = {
    1: """f(tau) P(tau,e11)
    + f(upsilon) P(upsilon,e11)""",
    2: """f(tau,tau) P(tau,e11) P(tau,e1)
    + f(tau,upsilon) P(tau,e11) P(upsilon,e1)
    + f(upsilon,tau) P(upsilon,e11) P(tau,e1)
    + f(upsilon,upsilon) P(upsilon,e11) P(upsilon,e1)""",
    3: """f(tau,tau,tau) P(tau,e11) P(tau,e1) P(tau,e1)
    + f(tau,tau,upsilon) P(tau,e11) P(tau,e1) P(upsilon,e1)
    + f(tau,upsilon,tau) P(tau,e11) P(upsilon,e1) P(tau,e1)
    + f(tau,upsilon,upsilon) P(tau,e11) P(upsilon,e1) P(upsilon,e1)
    + f(upsilon,tau,tau) P(upsilon,e11) P(tau,e1) P(tau,e1)
    + f(upsilon,tau,upsilon) P(upsilon,e11) P(tau,e1) P(upsilon,e1)
    + f(upsilon,upsilon,tau) P(upsilon,e11) P(upsilon,e1) P(tau,e1)
    + f(upsilon,upsilon,upsilon) P(upsilon,e11) P(upsilon,e1) P(upsilon,e1)
    + f(sigma) P(sigma,e11e1^2)""",
    4: """f(tau,tau,tau,tau) P(tau,e11) P(tau,e1) P(tau,e1) P(tau,e1)
    + f(tau,tau,tau,upsilon) P(tau,e11) P(tau,e1) P(tau,e1) P(upsilon,e1)
    + f(tau,tau,upsilon,tau) P(tau,e11) P(tau,e1) P(upsilon,e1) P(tau,e1)
    + f(tau,tau,upsilon,upsilon) P(tau,e11) P(tau,e1) P(upsilon,e1) P(upsilon,e1)
    + f(tau,upsilon,tau,tau) P(tau,e11) P(upsilon,e1) P(tau,e1) P(tau,e1)
    + f(tau,upsilon,tau,upsilon) P(tau,e11) P(upsilon,e1) P(tau,e1) P(upsilon,e1)
    + f(tau,upsilon,upsilon,tau) P(tau,e11) P(upsilon,e1) P(upsilon,e1) P(tau,e1)
    + f(tau,upsilon,upsilon,upsilon) P(tau,e11) P(upsilon,e1) P(upsilon,e1) P(upsilon,e1)
    + f(upsilon,tau,tau,tau) P(upsilon,e11) P(tau,e1) P(tau,e1) P(tau,e1)
    + f(upsilon,tau,tau,upsilon) P(upsilon,e11) P(tau,e1) P(tau,e1) P(upsilon,e1)
    + f(upsilon,tau,upsilon,tau) P(upsilon,e11) P(tau,e1) P(upsilon,e1) P(tau,e1)
    + f(upsilon,tau,upsilon,upsilon) P(upsilon,e11) P(tau,e1) P(upsilon,e1) P(upsilon,e1)
    + f(upsilon,upsilon,tau,tau) P(upsilon,e11) P(upsilon,e1) P(tau,e1) P(tau,e1)
    + f(upsilon,upsilon,tau,upsilon) P(upsilon,e11) P(upsilon,e1) P(tau,e1) P(upsilon,e1)
    + f(upsilon,upsilon,upsilon,tau) P(upsilon,e11) P(upsilon,e1) P(upsilon,e1) P(tau,e1)
    + f(upsilon,upsilon,upsilon,upsilon) P(upsilon,e11) P(upsilon,e1) P(upsilon,e1) P(upsilon,e1)
    + f(sigma,tau) P(sigma,e11e1^2) P(tau,e1)
    + f(sigma,upsilon) P(sigma,e11e1^2) P(upsilon,e1)""",
}

_RENAME = {
    "11": {"e11": "e11", "e11e1^2": "e11e1^2", "e1": "e1"},
    "22": {"e11": "e22", "e11e1^2": "e22e2^2", "e1": "e2"},
    "12": {"e11": "e12", "e11e1^2": "e12(e1+e2)^2", "e1": "e1+e2"},
}

_TERM = re.compile(r"(f|P)\(([^)]*)\)")

# Perturbations of the table, used to check that the kernel test can fail.
_MUTATIONS: dict = {}


def _parse_table(text: str, rename: Mapping[str, str]) -> Poly:
    G = DEFAULT_CONFIG.alphabet
    total = Poly()
    for raw in text.split("+"):
        term = Poly.const(1)
        for kind, arg in _TERM.findall(raw):
            if kind == "f":
                term = term * expand_in_lyndon(G, tuple(arg.split(",")))
            else:
                rho, lam = arg.split(",", 1)
                lam = rename.get(lam, lam)
                if lam == "e1+e2":
                    term = term * (Poly.var(phi_var(rho, "e1")) + Poly.var(phi_var(rho, "e2")))
                else:
                    term = term * Poly.var(phi_var(rho, lam))
        total = total + term
    return total


def theta(lam: PLCoordinate) -> Poly:
    """Tabulated pullback of f_lambda, with Galois words rewritten in Lyndon duals."""
    if lam.half_weight > 4:
        raise ValueError("the table covers half-weight at most 4")
    if lam.tower == "e1":
        out = _parse_table(_TABLE_E1, {})
    elif lam.tower == "e2":
        out = _parse_table(_TABLE_E2, {})
    else:
        out = _parse_table(_TABLE_TOWER[lam.length], _RENAME[lam.tower])
    if lam in _MUTATIONS:
        out = out + _MUTATIONS[lam]
    return out


def theta_derived(lam: PLCoordinate, config: GaloisConfig = DEFAULT_CONFIG) -> Poly:
    return to_lyndon_poly(cocycle_expand(symbolic_seed(config), lam, config))


class mutated_theta:
    """Context manager adding ``delta`` to the tabulated pullback of one coordinate."""

    def __init__(self, lam: PLCoordinate, delta: Poly):
        self.lam, self.delta = lam, delta

    def __enter__(self):
        _MUTATIONS[self.lam] = self.delta
        return self

    def __exit__(self, *exc):
        _MUTATIONS.pop(self.lam, None)
        return False


@dataclass
class ArithSpecialization:
    """Values of the Lyndon duals; every other f_w follows from shuffle relations."""

    lyndon_values: dict  # Lyndon word tuple -> scalar

    def variables(self) -> dict:
        return {dual_var(w): v for w, v in self.lyndon_values.items()}

    def word_value(self, word, one=None):
        G = DEFAULT_CONFIG.alphabet
        return expand_in_lyndon(G, tuple(word)).evaluate(self.variables(), one)


def specialize(spec: ArithSpecialization | Mapping, seed: Mapping, P: Poly, one=None):
    """Evaluate a polynomial in Lyndon duals and seed variables at scalars."""
    lyn = spec.variables() if isinstance(spec, ArithSpecialization) else {dual_var(w): v for w, v in spec.items()}
    values = dict(lyn)
    for (rho, lam), v in seed.items():
        values[phi_var(rho, lam)] = v
    if one is None:
        sample = next(iter(values.values()), Fraction(1))
        one = sample * 0 + 1
    return P.evaluate(values, one)


def half_weight_of_monomial(mono) -> int:
    """Half-weight of a monomial in Lyndon duals and seed variables."""
    total = 0
    for v, e in mono:
        if v.startswith("Phi["):
            lam = v[v.index("|") + 1:-1]
            w = 1 if lam in ("e1", "e2") else _coordinate_weight(lam)
        else:
            letters = v[2:-1].split(",")
            w = DEFAULT_CONFIG.alphabet.half_weight(letters)
        total += w * e
    return total


def _coordinate_weight(name: str) -> int:
    for c in coordinates(8):
        if c.name == name:
            return c.half_weight
    raise KeyError(name)


# dimension counts

@dataclass(frozen=True)
class CurveShape:
    """Abelian letters plus a number of towers, each contributing one coordinate per half-weight."""

    abelian: int
    towers: int


CURVES = {"M05": CurveShape(abelian=2, towers=3), "M04": CurveShape(abelian=1, towers=1)}


def dimension_audit(curve: str = "M05", weight_bound: int = 4, config: GaloisConfig = DEFAULT_CONFIG) -> tuple:
    """Counts of geometric coordinates and of seed variables up to a half-weight bound.

    In half-weight one every coordinate (abelian letters and tower heads) pairs
    with each half-weight-one generator; in higher half-weight each tower
    coordinate pairs with the odd generators of that half-weight.
    """
    shape = CURVES[curve]
    geometric = shape.abelian + shape.towers * weight_bound
    selmer = 0
    for n in range(1, weight_bound + 1):
        coords = shape.abelian + shape.towers if n == 1 else shape.towers
        selmer += coords * len(config.generators_of_weight(n))
    return geometric, selmer
