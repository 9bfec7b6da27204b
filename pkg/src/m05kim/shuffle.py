"""Words over graded alphabets and the shuffle Hopf algebra on them.

A word is a plain tuple of letter names.  ``ShuffleElement`` is a sparse
linear combination of words; coefficients are exact (``Fraction``) or any
commutative ring element such as :class:`m05kim.poly.Poly`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import factorial
from typing import Iterable, Mapping, Sequence

from .poly import Poly

Word = tuple  # tuple[str, ...]


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GradedAlphabet:
    """Ordered letters with positive half-weights; list order is the letter order."""

    letters: tuple  # tuple[tuple[str, int], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple((str(n), int(w)) for n, w in self.letters)
        names = [n for n, _ in letters]
        if len(set(names)) != len(names):
            raise ValueError("letter names must be distinct")
        if any(w < 1 for _, w in letters):
            raise ValueError("half-weights must be positive")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.letters)

    def half_weight_of(self, letter: str) -> int:
        return self.letters[self._index[letter]][1]

    def half_weight(self, word: Sequence[str]) -> int:
        return sum(self.half_weight_of(a) for a in word)

    def key(self, word: Sequence[str]) -> tuple:
        """Sort key realising the lexicographic order induced by the letter order."""
        return tuple(self._index[a] for a in word)

    def check(self, word: Sequence[str]) -> Word:
        w = tuple(word)
        for a in w:
            if a not in self._index:
                raise AlphabetMismatch(f"letter {a!r} not in alphabet {self.names}")
        return w

    def words(self, half_weight: int) -> list:
        """All words of exactly the given half-weight."""
        out = []

        def grow(prefix, remaining):
            if remaining == 0:
                out.append(tuple(prefix))
                return
            for n, w in self.letters:
                if w <= remaining:
                    prefix.append(n)
                    grow(prefix, remaining - w)
                    prefix.pop()

        grow([], half_weight)
        return out


# word-level operations

@lru_cache(maxsize=200_000)
def shuffle_words(u: Word, v: Word) -> tuple:
    """Shuffle product of two words as a tuple of (word, multiplicity)."""
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Counter = Counter()
    for w, c in shuffle_words(u[1:], v):
        out[(u[0],) + w] += c
    for w, c in shuffle_words(u, v[1:]):
        out[(v[0],) + w] += c
    return tuple(out.items())


class ShuffleElement:
    """Finite linear combination of words; ``*`` is the shuffle product."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: GradedAlphabet, terms: Mapping | None = None):
        self.alphabet = alphabet
        self.terms: dict = {}
        if terms:
            for w, c in terms.items():
                if c != 0:
                    w = alphabet.check(w)
                    s = self.terms.get(w, 0) + c
                    if s == 0:
                        self.terms.pop(w, None)
                    else:
                        self.terms[w] = s

    @classmethod
    def word(cls, alphabet: GradedAlphabet, word: Iterable[str] | str, coeff=Fraction(1)):
        if isinstance(word, str):
            word = word.split()
        return cls(alphabet, {tuple(word): coeff})

    @classmethod
    def unit(cls, alphabet: GradedAlphabet):
        return cls(alphabet, {(): Fraction(1)})

    @classmethod
    def from_pattern(cls, alphabet: GradedAlphabet, pattern: Sequence, coeff=Fraction(1)):
        """Expand a word whose letters may be linear combinations.

        Each pattern entry is a letter name or a mapping ``{letter: coefficient}``.
        """
        slots = []
        for item in pattern:
            if isinstance(item, str):
                slots.append(((item, Fraction(1)),))
            else:
                slots.append(tuple((a, Fraction(c)) for a, c in item.items()))
        terms: dict = {}
        for choice in iproduct(*slots):
            w = tuple(a for a, _ in choice)
            c = coeff
            for _, k in choice:
                c = c * k
            terms[w] = terms.get(w, 0) + c
        return cls(alphabet, terms)

    # linear structure
    def _check(self, other: "ShuffleElement"):
        if not isinstance(other, ShuffleElement):
            raise TypeError("expected a ShuffleElement")
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("elements live over different alphabets")

    def __add__(self, other):
        self._check(other)
        out = ShuffleElement(self.alphabet)
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            s = out.terms.get(w, 0) + c
            if s == 0:
                out.terms.pop(w, None)
            else:
                out.terms[w] = s
        return out

    def __neg__(self):
        out = ShuffleElement(self.alphabet)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "ShuffleElement":
        return ShuffleElement(self.alphabet, {w: c * k for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ShuffleElement):
            return shuffle(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = ShuffleElement.unit(self.alphabet)
        for _ in range(n):
            out = shuffle(out, self)
        return out

    def concat(self, other: "ShuffleElement") -> "ShuffleElement":
        self._check(other)
        terms: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                terms[w] = terms.get(w, 0) + a * b
        return ShuffleElement(self.alphabet, terms)

    def __eq__(self, other):
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word) -> object:
        if isinstance(word, str):
            word = word.split()
        return self.terms.get(tuple(word), 0)

    def homogeneous_part(self, half_weight: int) -> "ShuffleElement":
        hw = self.alphabet.half_weight
        return ShuffleElement(self.alphabet, {w: c for w, c in self.terms.items() if hw(w) == half_weight})

    def half_weights(self) -> set:
        return {self.alphabet.half_weight(w) for w in self.terms}

    def map_coefficients(self, f) -> "ShuffleElement":
        return ShuffleElement(self.alphabet, {w: f(c) for w, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"({c})*f[{' '.join(w)}]" for w, c in sorted(self.terms.items(), key=lambda t: self.alphabet.key(t[0]))]
        return " + ".join(parts)


def shuffle(u: ShuffleElement, v: ShuffleElement) -> ShuffleElement:
    u._check(v)
    terms: dict = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            cc = ca * cb
            for w, m in shuffle_words(a, b):
                terms[w] = terms.get(w, 0) + cc * m
    return ShuffleElement(u.alphabet, terms)


class TensorElement:
    """Linear combination of k-tuples of words (elements of a k-fold tensor power)."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: GradedAlphabet, terms: Mapping | None = None):
        self.alphabet = alphabet
        self.terms: dict = {}
        for key, c in (terms or {}).items():
            if c != 0:
                s = self.terms.get(key, 0) + c
                if s == 0:
                    self.terms.pop(key, None)
                else:
                    self.terms[key] = s

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return TensorElement(self.alphabet, t)

    def __sub__(self, other):
        return self + TensorElement(other.alphabet, {k: -c for k, c in other.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def shuffle(self, other: "TensorElement") -> "TensorElement":
        """Componentwise shuffle product."""
        terms: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                factors = [shuffle_words(x, y) for x, y in zip(ka, kb)]
                for combo in iproduct(*factors):
                    key = tuple(w for w, _ in combo)
                    m = 1
                    for _, k in combo:
                        m *= k
                    terms[key] = terms.get(key, 0) + ca * cb * m
        return TensorElement(self.alphabet, terms)

    def apply_deconcat(self, position: int) -> "TensorElement":
        """Apply the coproduct to one tensor factor, increasing the arity by one."""
        terms: dict = {}
        for key, c in self.terms.items():
            w = key[position]
            for i in range(len(w) + 1):
                nk = key[:position] + (w[:i], w[i:]) + key[position + 1:]
                terms[nk] = terms.get(nk, 0) + c
        return TensorElement(self.alphabet, terms)

    @classmethod
    def tensor(cls, *elements: ShuffleElement) -> "TensorElement":
        terms: dict = {(): Fraction(1)}
        for e in elements:
            new: dict = {}
            for k, c in terms.items():
                for w, d in e.terms.items():
                    nk = k + (w,)
                    new[nk] = new.get(nk, 0) + c * d
            terms = new
        return cls(elements[0].alphabet, terms)

    def __repr__(self):
        return " + ".join(f"({c})*" + "⊗".join("f[" + " ".join(w) + "]" for w in k) for k, c in self.terms.items()) or "0"


def deconcat(u: ShuffleElement) -> TensorElement:
    terms: dict = {}
    for w, c in u.terms.items():
        for i in range(len(w) + 1):
            k = (w[:i], w[i:])
            terms[k] = terms.get(k, 0) + c
    return TensorElement(u.alphabet, terms)


def pair(f: ShuffleElement, x) -> object:
    """Dual-basis pairing of a shuffle element with a word or a combination of words."""
    if isinstance(x, ShuffleElement):
        f._check(x)
        other = x.terms
    elif isinstance(x, Mapping):
        other = x
    else:
        other = {f.alphabet.check(x.split() if isinstance(x, str) else x): 1}
    total = 0
    for w, c in other.items():
        d = f.terms.get(tuple(w))
        if d is not None:
            total = total + c * d
    return total


# Lyndon words

def is_lyndon(alphabet: GradedAlphabet, word: Sequence[str]) -> bool:
    k = alphabet.key(word)
    if not k:
        return False
    return all(k < k[i:] + k[:i] for i in range(1, len(k)))


def lyndon_factorization(alphabet: GradedAlphabet, word: Sequence[str]) -> list:
    """Chen-Fox-Lyndon factorization into non-increasing Lyndon words (Duval)."""
    w = tuple(word)
    k = alphabet.key(w)
    n, i = len(k), 0
    out = []
    while i < n:
        j, m = i + 1, i
        while j < n and k[m] <= k[j]:
            m = i if k[m] < k[j] else m + 1
            j += 1
        while i <= m:
            out.append(w[i:i + j - m])
            i += j - m
    return out


def lyndon_words(alphabet: GradedAlphabet, max_half_weight: int) -> list:
    """Lyndon words of half-weight at most the bound, by (half-weight, lexicographic)."""
    out = []
    for n in range(1, max_half_weight + 1):
        ws = [w for w in alphabet.words(n) if is_lyndon(alphabet, w)]
        out.extend(sorted(ws, key=alphabet.key))
    return out


def dual_var(word: Sequence[str]) -> str:
    """Polynomial variable name standing for the dual of a Lyndon word."""
    return "f[" + ",".join(word) + "]"


_LYNDON_CACHE: dict = {}


def expand_in_lyndon(alphabet: GradedAlphabet, word: Sequence[str]) -> Poly:
    """Polynomial in Lyndon duals equal to f_word in the shuffle algebra."""
    w = alphabet.check(word)
    cache = _LYNDON_CACHE.setdefault(alphabet, {})
    if w in cache:
        return cache[w]
    if not w:
        result = Poly.const(1)
    elif is_lyndon(alphabet, w):
        result = Poly.var(dual_var(w))
    else:
        factors = lyndon_factorization(alphabet, w)
        mult = Counter(factors)
        denom = 1
        for k in mult.values():
            denom *= factorial(k)
        prod = ShuffleElement.unit(alphabet)
        monomial = Poly.const(1)
        for lw in factors:
            prod = shuffle(prod, ShuffleElement.word(alphabet, lw))
            monomial = monomial * Poly.var(dual_var(lw))
        lead = prod.terms[w]
        assert lead == denom, "leading shuffle coefficient must be the factor multiplicity"
        result = monomial
        for u, c in prod.terms.items():
            if u != w:
                result = result - expand_in_lyndon(alphabet, u) * c
        result = result * Fraction(1, denom)
    cache[w] = result
    return result


def element_in_lyndon(u: ShuffleElement) -> Poly:
    """Lyndon-dual polynomial of a linear combination with rational coefficients."""
    out = Poly()
    for w, c in u.terms.items():
        out = out + expand_in_lyndon(u.alphabet, w) * c
    return out


def lyndon_to_shuffle(alphabet: GradedAlphabet, p: Poly) -> ShuffleElement:
    """Evaluate a polynomial in Lyndon duals inside the shuffle algebra."""
    out = ShuffleElement(alphabet)
    for mono, c in p.terms.items():
        term = ShuffleElement.unit(alphabet).scale(c)
        for v, e in mono:
            letters = tuple(v[2:-1].split(","))
            term = shuffle(term, ShuffleElement.word(alphabet, letters) ** e)
        out = out + term
    return out
