"""The polylogarithmic Lie algebra on five generators and its coordinate functions.

Generators ``e1, e2`` (the abelian part) and ``e11, e22, e12``.  The quotient
Lie algebra has basis ``e1, e2`` together with three towers
``(ad e1)^n e11``, ``(ad e2)^n e22`` and ``(ad e1)^n e12 = (ad e2)^n e12``.

Two independent views are provided:

* ``lie_normal_form`` evaluates bracket expressions with the closed bracket
  table of the quotient;
* ``pl_dim`` recomputes graded dimensions from scratch inside the free Lie
  algebra, by exact linear algebra modulo the defining ideal.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Mapping

from .shuffle import GradedAlphabet, ShuffleElement, is_lyndon, pair

GENERATORS = ("e1", "e2", "e11", "e22", "e12")
GAMMA = GradedAlphabet(tuple((g, 1) for g in GENERATORS))
DEPTH_LETTERS = ("e11", "e22", "e12")


class WeightBoundExceeded(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PLBasisVector:
    """``kind`` is one of E1, E2, T11, T22, T12; ``n`` is the tower index."""

    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("E1", "E2", "T11", "T22", "T12"):
            raise ValueError(f"unknown basis kind {self.kind}")
        if self.kind in ("E1", "E2") and self.n != 0:
            raise ValueError("E1/E2 carry no tower index")
        if self.n < 0:
            raise ValueError("tower index must be non-negative")

    @property
    def half_weight(self) -> int:
        return 1 if self.kind in ("E1", "E2") else self.n + 1

    def __str__(self):
        if self.kind in ("E1", "E2"):
            return self.kind.lower()
        base = {"T11": ("e1", "e11"), "T22": ("e2", "e22"), "T12": ("e1", "e12")}[self.kind]
        return base[1] if self.n == 0 else f"(ad {base[0]})^{self.n}({base[1]})"


_GEN_VECTOR = {
    "e1": PLBasisVector("E1"),
    "e2": PLBasisVector("E2"),
    "e11": PLBasisVector("T11"),
    "e22": PLBasisVector("T22"),
    "e12": PLBasisVector("T12"),
}


class PLLieElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PLBasisVector, object] | None = None):
        self.terms = {}
        for b, c in (terms or {}).items():
            if c != 0:
                self.terms[b] = self.terms.get(b, 0) + Fraction(c)
                if self.terms[b] == 0:
                    del self.terms[b]

    def __add__(self, other):
        t = dict(self.terms)
        for b, c in other.terms.items():
            t[b] = t.get(b, 0) + c
        return PLLieElement(t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return PLLieElement({b: c * k for b, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self.terms
        return isinstance(other, PLLieElement) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def half_weight(self) -> int:
        return max((b.half_weight for b in self.terms), default=0)

    def __repr__(self):
        return " + ".join(f"({c})*{b}" for b, c in sorted(self.terms.items())) or "0"


def _bracket_basis(a: PLBasisVector, b: PLBasisVector) -> PLLieElement:
    """Bracket of two basis vectors; everything not listed vanishes."""
    if a.kind in ("E1", "E2") and b.kind.startswith("T"):
        if (a.kind, b.kind) in (("E1", "T11"), ("E2", "T22"), ("E1", "T12"), ("E2", "T12")):
            return PLLieElement({PLBasisVector(b.kind, b.n + 1): 1})
        return PLLieElement()
    if b.kind in ("E1", "E2") and a.kind.startswith("T"):
        return _bracket_basis(b, a).scale(-1)
    return PLLieElement()


def bracket(x: PLLieElement, y: PLLieElement) -> PLLieElement:
    out = PLLieElement()
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            out = out + _bracket_basis(a, b).scale(ca * cb)
    return out


def expression_weight(expr) -> int:
    if isinstance(expr, str):
        return 1
    if isinstance(expr, PLLieElement):
        return expr.half_weight()
    if isinstance(expr, tuple):
        return expression_weight(expr[0]) + expression_weight(expr[1])
    return max((expression_weight(e) for _, e in expr), default=0)


def lie_normal_form(expr, weight_bound: int = 6) -> PLLieElement:
    """Reduce a bracket expression to basis coordinates.

    ``expr`` is a generator name, a pair ``(x, y)`` meaning ``[x, y]``, a list of
    ``(coefficient, expr)`` pairs, or a ``PLLieElement``.
    """
    if expression_weight(expr) > weight_bound:
        raise WeightBoundExceeded(f"expression exceeds half-weight {weight_bound}")
    return _evaluate(expr)


def _evaluate(expr) -> PLLieElement:
    if isinstance(expr, str):
        return PLLieElement({_GEN_VECTOR[expr]: 1})
    if isinstance(expr, PLLieElement):
        return expr
    if isinstance(expr, tuple):
        return bracket(_evaluate(expr[0]), _evaluate(expr[1]))
    out = PLLieElement()
    for c, e in expr:
        out = out + _evaluate(e).scale(c)
    return out


def ad_power(x: str, n: int, y) -> tuple | str:
    """Expression for (ad x)^n y."""
    for _ in range(n):
        y = (x, y)
    return y


# associative embedding

def to_tensor(expr) -> dict:
    """Image of a bracket expression in the tensor algebra on the generators."""
    if isinstance(expr, str):
        return {(expr,): Fraction(1)}
    if isinstance(expr, tuple):
        a, b = to_tensor(expr[0]), to_tensor(expr[1])
        out: dict = {}
        for u, cu in a.items():
            for v, cv in b.items():
                out[u + v] = out.get(u + v, 0) + cu * cv
                out[v + u] = out.get(v + u, 0) - cu * cv
        return {w: c for w, c in out.items() if c != 0}
    out = {}
    for c, e in expr:
        for w, d in to_tensor(e).items():
            out[w] = out.get(w, 0) + c * d
    return {w: c for w, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def _right_normed_tensor(letters: tuple) -> tuple:
    """Expansion of [x1,[x2,[...,xn]]] as a tuple of (word, integer)."""
    if len(letters) == 1:
        return ((letters, 1),)
    head = letters[0]
    out: Counter = Counter()
    for w, c in _right_normed_tensor(letters[1:]):
        out[(head,) + w] += c
        out[w + (head,)] -= c
    return tuple((w, c) for w, c in out.items() if c)


def relation_generators() -> list:
    """Bracket expressions generating the relation part of the defining ideal."""
    return [
        ("e1", "e2"),
        ("e11", "e2"),
        ("e1", "e22"),
        [(1, ("e1", "e12")), (-1, ("e2", "e12"))],
    ]


def depth_two_generators(max_weight: int) -> list:
    """Right-normed Lie words with exactly two letters from {e11, e22, e12}."""
    out = []
    for n in range(2, max_weight + 1):
        for letters in iproduct(GENERATORS, repeat=n):
            if sum(a in DEPTH_LETTERS for a in letters) == 2:
                expr = letters[-1]
                for a in reversed(letters[:-1]):
                    expr = (a, expr)
                out.append(expr)
    return out


# free Lie oracle

_PRIME = (1 << 61) - 1


def _component(word) -> tuple:
    return (len(word),) + tuple(sum(1 for a in word if a == d) for d in DEPTH_LETTERS)


def _rank(rows: Iterable[dict], columns: list, modulus: int | None, stop_at: int) -> int:
    """Row rank restricted to the given columns; exact over Q when modulus is None."""
    col_index = {c: i for i, c in enumerate(columns)}
    pivots: dict = {}
    rank = 0
    for row in rows:
        if modulus is None:
            v = {col_index[w]: Fraction(c) for w, c in row.items() if w in col_index}
        else:
            v = {col_index[w]: int(c) % modulus for w, c in row.items() if w in col_index and int(c) % modulus}
        while v:
            lead = min(v)
            if lead not in pivots:
                break
            prow = pivots[lead]
            f = v[lead]
            for j, c in prow.items():
                nv = v.get(j, 0) - f * c
                if modulus is not None:
                    nv %= modulus
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
        if not v:
            continue
        lead = min(v)
        inv = (1 / v[lead]) if modulus is None else pow(v[lead], -1, modulus)
        if modulus is None:
            pivots[lead] = {j: c * inv for j, c in v.items()}
        else:
            pivots[lead] = {j: c * inv % modulus for j, c in v.items()}
        rank += 1
        if rank >= stop_at:
            break
    return rank


@lru_cache(maxsize=None)
def _sequences_by_component(n: int) -> dict:
    out: dict = {}
    for letters in iproduct(GENERATORS, repeat=n):
        out.setdefault(_component(letters), []).append(letters)
    return out


def _ideal_rows(component: tuple):
    """Spanning set of the defining ideal inside one multigraded component."""
    n = component[0]
    if sum(component[1:]) >= 2:
        for letters in _sequences_by_component(n)[component]:
            yield dict(_right_normed_tensor(letters))
    for rel in relation_generators():
        base = to_tensor(rel)
        k = len(next(iter(base)))
        if k > n:
            continue
        for gens in iproduct(GENERATORS, repeat=n - k):
            vec = base
            for g in reversed(gens):
                vec = _ad_letter(g, vec)
            if vec and _component(next(iter(vec))) == component:
                yield vec


def _ad_letter(g: str, vec: dict) -> dict:
    out: dict = {}
    for w, c in vec.items():
        out[(g,) + w] = out.get((g,) + w, 0) + c
        out[w + (g,)] = out.get(w + (g,), 0) - c
    return {w: c for w, c in out.items() if c != 0}


def pl_dim(n: int) -> int:
    """Dimension of the half-weight-n piece of the quotient, by a free-Lie computation.

    Lie elements are determined by their coefficients on Lyndon words, so each
    multigraded component is represented on Lyndon-word coordinates.  Ranks are
    first computed modulo a large prime; full rank there certifies full rank over
    Q, otherwise the rank is recomputed exactly over Q.
    """
    if not 1 <= n <= 8:
        raise ValueError("half-weight out of range")
    by_component: dict = {}
    for w in GAMMA.words(n):
        if is_lyndon(GAMMA, w):
            by_component.setdefault(_component(w), []).append(w)
    total = 0
    for comp, lyn in sorted(by_component.items()):
        full = len(lyn)
        r = _rank(_ideal_rows(comp), lyn, _PRIME, full)
        if r < full:
            r = _rank(_ideal_rows(comp), lyn, None, full)
        total += full - r
    return total


# coordinates

_TOWERS = {"e1": None, "e2": None, "11": ("e11", "e1"), "22": ("e22", "e2"), "12": ("e12", None)}


@dataclass(frozen=True, order=True)
class PLCoordinate:
    """Index of a coordinate function: ``e1``, ``e2`` or a tower ``11``, ``22``, ``12`` of given length."""

    tower: str
    length: int = 1

    def __post_init__(self):
        if self.tower not in _TOWERS:
            raise ValueError(f"unknown tower {self.tower}")
        if self.tower in ("e1", "e2") and self.length != 1:
            raise ValueError("e1/e2 coordinates have length 1")
        if self.length < 1:
            raise ValueError("length must be positive")

    @property
    def half_weight(self) -> int:
        return self.length

    @property
    def head(self) -> str:
        return self.tower if self.tower in ("e1", "e2") else "e" + self.tower

    @property
    def tail(self):
        """Letter (or combination) repeated after the head."""
        return {"11": "e1", "22": "e2", "12": {"e1": 1, "e2": 1}}.get(self.tower)

    def pattern(self) -> list:
        return [self.head] + [self.tail] * (self.length - 1)

    def element(self) -> ShuffleElement:
        return ShuffleElement.from_pattern(GAMMA, self.pattern())

    @property
    def name(self) -> str:
        if self.tower in ("e1", "e2"):
            return self.tower
        tail = {"11": "e1", "22": "e2", "12": "(e1+e2)"}[self.tower]
        k = self.length - 1
        return self.head + ("" if k == 0 else tail if k == 1 else f"{tail}^{k}")

    @property
    def var(self) -> str:
        return "f_" + self.name

    def shorter(self) -> "PLCoordinate":
        return PLCoordinate(self.tower, self.length - 1)

    def __str__(self):
        return self.name


def coordinates(max_half_weight: int = 4) -> list:
    """The coordinates e1, e2 and the three towers up to the given length."""
    out = [PLCoordinate("e1"), PLCoordinate("e2")]
    for tower in ("11", "22", "12"):
        out.extend(PLCoordinate(tower, i) for i in range(1, max_half_weight + 1))
    return out


def coordinate_by_name(name: str) -> PLCoordinate:
    for c in coordinates(8):
        if c.name == name:
            return c
    raise KeyError(name)


def verify_pl_coordinate(f, weight_bound: int = 6) -> bool:
    """Check that f annihilates the two-sided ideal generated by the defining ideal.

    ``f`` is a ``PLCoordinate`` or a ``ShuffleElement`` over the generators.
    Pairings only see words of the same half-weight, so every pair of outer
    words W, W' is taken with total half-weight matching a homogeneous part of f.
    """
    if isinstance(f, PLCoordinate):
        if weight_bound < f.half_weight:
            raise ValueError("weight bound below the coordinate's half-weight")
        f = f.element()
    gens = [to_tensor(g) for g in relation_generators()]
    gens += [dict(_right_normed_tensor(tuple(_flatten(g)))) for g in depth_two_generators(min(weight_bound, max(f.half_weights(), default=0)))]
    gens = [g for g in gens if g]
    for n in sorted(f.half_weights()):
        if n > weight_bound:
            continue
        part = f.homogeneous_part(n)
        for g in gens:
            k = len(next(iter(g)))
            if k > n:
                continue
            for left in range(n - k + 1):
                for W in iproduct(GENERATORS, repeat=left):
                    for W2 in iproduct(GENERATORS, repeat=n - k - left):
                        total = 0
                        for m, c in g.items():
                            total += c * part.terms.get(W + m + W2, 0)
                        if total != 0:
                            return False
    return True


def _flatten(expr) -> list:
    """Letters of a right-normed expression (x1, (x2, (..., xn)))."""
    out = []
    while isinstance(expr, tuple):
        out.append(expr[0])
        expr = expr[1]
    out.append(expr)
    return out


def tower_pairing(n: int) -> Fraction:
    """Pairing of the coordinate e11 e1^n with the tensor image of (ad e1)^n e11."""
    f = PLCoordinate("11", n + 1).element()
    return pair(f, to_tensor(ad_power("e1", n, "e11")))
