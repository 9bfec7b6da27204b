"""Motivic periods of Z[1/6] in low weight: symbols, shuffle expansions, coproducts, dictionary.

A period polynomial is a :class:`~m05kim.poly.Poly` whose variables are the
canonical names of :class:`PeriodSymbol` objects (``log(2)``, ``Li(3,-2)``,
``zeta3``).  Shuffle coordinates live on words in the Galois alphabet
tau < upsilon < sigma, where tau and upsilon are dual to log 2 and log 3.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Mapping, Sequence

from .cocycle import DEFAULT_CONFIG
from .padic import PadicContext, PadicNumber, padic_log, rational_reconstruct
from .poly import Poly
from .polylog import padic_li, padic_zeta
from .shuffle import ShuffleElement, lyndon_words

G = DEFAULT_CONFIG.alphabet
PRIME_LETTER = {2: "tau", 3: "upsilon"}
SIGMA = "sigma"
CHECK_PRIMES = (5, 7, 11, 13)


class NotSUnit(ValueError):
    pass


class DictionaryMismatch(AssertionError):
    pass


# symbols ---------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodSymbol:
    kind: str                  # "log", "Li" or "zeta3"
    n: int = 0
    a: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        if self.kind == "log":
            if self.a <= 0:
                raise ValueError("log symbols carry a positive argument")
        elif self.kind == "Li":
            if self.n < 1 or self.a in (0, 1):
                raise ValueError(f"bad polylog symbol Li({self.n},{self.a})")
        elif self.kind != "zeta3":
            raise ValueError(f"unknown symbol kind {self.kind!r}")

    @property
    def half_weight(self) -> int:
        return {"log": 1, "Li": self.n, "zeta3": 3}[self.kind]

    @property
    def name(self) -> str:
        if self.kind == "log":
            return f"log({self.a})"
        if self.kind == "Li":
            return f"Li({self.n},{self.a})"
        return "zeta3"

    @classmethod
    def parse(cls, name: str) -> "PeriodSymbol":
        if name == "zeta3":
            return cls("zeta3")
        m = re.fullmatch(r"log\(([^)]*)\)", name)
        if m:
            return cls("log", 0, Fraction(m.group(1)))
        m = re.fullmatch(r"Li\((\d+),([^)]*)\)", name)
        if m:
            return cls("Li", int(m.group(1)), Fraction(m.group(2)))
        raise ValueError(f"not a period symbol: {name!r}")


def six_unit_valuations(a) -> tuple[int, int]:
    """(v_2(a), v_3(a)) for a rational supported on {2, 3}; raises otherwise."""
    a = Fraction(a)
    if a == 0:
        raise NotSUnit("0 is not a unit")
    out = []
    num, den = abs(a.numerator), a.denominator
    for q in (2, 3):
        v = 0
        while num % q == 0:
            num //= q
            v += 1
        while den % q == 0:
            den //= q
            v -= 1
        out.append(v)
    if num != 1 or den != 1:
        raise NotSUnit(f"{a} is not a {{2,3}}-unit")
    return out[0], out[1]


def log(q) -> Poly:
    """log of a rational: split into log 2, log 3 for 6-units (log of -1 vanishes)."""
    q = Fraction(q)
    try:
        v2, v3 = six_unit_valuations(q)
    except NotSUnit:
        return Poly.var(PeriodSymbol("log", 0, abs(q)).name)
    return Poly.var("log(2)") * v2 + Poly.var("log(3)") * v3


def Li(n: int, a) -> Poly:
    return Poly.var(PeriodSymbol("Li", n, Fraction(a)).name)


ZETA3 = Poly.var("zeta3")
l2, l3 = log(2), log(3)


def symbols_of(poly: Poly) -> list[PeriodSymbol]:
    return [PeriodSymbol.parse(v) for v in sorted(poly.variables())]


def period_half_weights(poly: Poly) -> set[int]:
    out = set()
    for m in poly.terms:
        out.add(sum(PeriodSymbol.parse(v).half_weight * e for v, e in m))
    return out


# shuffle expansions -------------------------------------------------------------

def li_expand_shuffle(n: int, a, sigma: Mapping) -> ShuffleElement:
    """Expansion of Li_n(a) in shuffle coordinates of the Galois group.

    ``sigma[(r, a)]`` supplies the pairing of Li_r(a) with the odd generator of
    half-weight r (only r = 3 occurs for n <= 4).
    """
    a = Fraction(a)
    if n < 1 or n > 4:
        raise ValueError("only 1 <= n <= 4 is supported")
    va = six_unit_valuations(a)
    try:
        vb = six_unit_valuations(1 - a)
    except NotSUnit as exc:
        raise NotSUnit(f"1 - {a} is not a {{2,3}}-unit") from exc
    v_a = dict(zip((2, 3), va))
    v_b = dict(zip((2, 3), vb))
    terms: dict = {}
    for r in range(3, n + 1, 2):
        key = (r, a)
        if key not in sigma:
            raise KeyError(f"missing sigma pairing for Li_{r}({a})")
        c = Fraction(sigma[key])
        if c == 0:
            continue
        for qs in iproduct((2, 3), repeat=n - r):
            k = c
            for q in qs:
                k *= v_a[q]
            if k:
                w = (SIGMA,) + tuple(PRIME_LETTER[q] for q in qs)
                terms[w] = terms.get(w, 0) + k
    for qs in iproduct((2, 3), repeat=n):
        k = Fraction(-v_b[qs[0]])
        for q in qs[1:]:
            k *= v_a[q]
        if k:
            w = tuple(PRIME_LETTER[q] for q in qs)
            terms[w] = terms.get(w, 0) + k
    return ShuffleElement(G, terms)


def symbol_to_shuffle(sym: PeriodSymbol, sigma: Mapping) -> ShuffleElement:
    if sym.kind == "zeta3":
        return ShuffleElement.word(G, (SIGMA,))
    if sym.kind == "log":
        v2, v3 = six_unit_valuations(sym.a)
        return ShuffleElement(G, {("tau",): Fraction(v2), ("upsilon",): Fraction(v3)})
    return li_expand_shuffle(sym.n, sym.a, sigma)


def period_to_shuffle(poly: Poly, sigma: Mapping) -> ShuffleElement:
    out = ShuffleElement(G)
    cache: dict = {}
    for m, c in poly.terms.items():
        t = ShuffleElement.unit(G).scale(c)
        for v, e in m:
            if v not in cache:
                cache[v] = symbol_to_shuffle(PeriodSymbol.parse(v), sigma)
            t = t * cache[v] ** e
        out = out + t
    return out


# exact linear algebra over Q ---------------------------------------------------

def _solve(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Some x with sum_i x_i columns[i] = target, or None when inconsistent."""
    n = len(columns)
    rows = len(target)
    aug = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][n] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def _vector(elem: ShuffleElement, basis: Sequence[tuple]) -> list[Fraction]:
    extra = set(elem.terms) - set(basis)
    if extra:
        raise ValueError(f"element has words outside the basis: {sorted(extra)[:3]}")
    return [Fraction(elem.terms.get(w, 0)) for w in basis]


def invert_expansions(known: Sequence[tuple[Poly, ShuffleElement]], words: Sequence[tuple]) -> dict:
    """Express each requested word coordinate f_w through the known (period, expansion) pairs."""
    basis = sorted({w for _, s in known for w in s.terms} | set(words), key=G.key)
    cols = [_vector(s, basis) for _, s in known]
    out = {}
    for w in words:
        x = _solve(cols, [Fraction(1) if b == w else Fraction(0) for b in basis])
        if x is None:
            raise ValueError(f"f_{'.'.join(w)} is not in the span of the known expansions")
        p = Poly()
        for c, (poly, _) in zip(x, known):
            if c:
                p = p + poly * c
        out[w] = p
    return out


# reduced coproduct ------------------------------------------------------------

Tensor = dict  # (Poly, Poly) keyed by monomial pair -> coefficient


def _monomials(poly: Poly):
    for m, c in poly.terms.items():
        yield m, c


def _mono_poly(m) -> Poly:
    return Poly({m: Fraction(1)})


def _full_coproduct_symbol(sym: PeriodSymbol) -> list[tuple[Poly, Poly]]:
    x = Poly.var(sym.name)
    one = Poly.const(1)
    out = [(x, one), (one, x)]
    if sym.kind == "Li":
        la = log(sym.a)
        fact = 1
        for i in range(1, sym.n):
            fact *= i
            left = -log(1 - sym.a) if sym.n - i == 1 else Li(sym.n - i, sym.a)
            out.append((left, la ** i / fact))
    return out


def _tensor_add(t: dict, left: Poly, right: Poly, c):
    for ml, cl in left.terms.items():
        for mr, cr in right.terms.items():
            k = (ml, mr)
            s = t.get(k, 0) + c * cl * cr
            if s == 0:
                t.pop(k, None)
            else:
                t[k] = s


def full_coproduct(poly: Poly) -> dict:
    """Coproduct as a map (left monomial, right monomial) -> coefficient."""
    out: dict = {}
    for m, c in poly.terms.items():
        acc = {((), ()): Fraction(1)}
        for v, e in m:
            pieces = _full_coproduct_symbol(PeriodSymbol.parse(v))
            for _ in range(e):
                new: dict = {}
                for (al, ar), ac in acc.items():
                    for left, right in pieces:
                        _tensor_add(new, _mono_poly(al) * left, _mono_poly(ar) * right, ac)
                acc = new
        for k, v in acc.items():
            s = out.get(k, 0) + c * v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
    return out


def _weight(m) -> int:
    return sum(PeriodSymbol.parse(v).half_weight * e for v, e in m)


# canonical bases of A_1, A_2 used for reducing tensor factors
A1_BASIS = [l2, l3]
A2_BASIS = [l2 ** 2, l2 * l3, l3 ** 2, Li(2, -2)]
A2_NAMES = ["l(2)^2", "l(2)l(3)", "l(3)^2", "L2(-2)"]


def _coords_weight1(poly: Poly) -> list[Fraction]:
    # poly is a combination of log(2), log(3)
    out = [Fraction(0), Fraction(0)]
    for m, c in poly.terms.items():
        if m == (("log(2)", 1),):
            out[0] += c
        elif m == (("log(3)", 1),):
            out[1] += c
        else:
            raise ValueError(f"weight-one factor outside log 2, log 3: {poly}")
    return out


def reduce_weight2(poly: Poly) -> Poly:
    """Rewrite a weight-two period polynomial in the basis l2^2, l2 l3, l3^2, Li_2(-2).

    Uses that the reduced coproduct A_2 -> A_1 (x) A_1 is injective.
    """
    target = _delta11_vector(poly)
    cols = [_delta11_vector(b) for b in A2_BASIS]
    x = _solve(cols, target)
    if x is None:
        raise ValueError("weight-two element outside the span of the basis")
    out = Poly()
    for c, b in zip(x, A2_BASIS):
        if c:
            out = out + b * c
    return out


def _delta11_vector(poly: Poly) -> list[Fraction]:
    vec = [Fraction(0)] * 4
    for (ml, mr), c in full_coproduct(poly).items():
        if _weight(ml) == 1 and _weight(mr) == 1:
            cl = _coords_weight1(_mono_poly(ml))
            cr = _coords_weight1(_mono_poly(mr))
            for i in range(2):
                for j in range(2):
                    vec[2 * i + j] += c * cl[i] * cr[j]
    return vec


def _reduce_factor(m, weight: int) -> list[Fraction]:
    p = _mono_poly(m)
    if weight == 1:
        return _coords_weight1(p)
    if weight == 2:
        red = reduce_weight2(p)
        out = []
        for b in A2_BASIS:
            (bm, _), = b.terms.items()
            out.append(Fraction(red.terms.get(bm, 0)))
        return out
    raise ValueError("only factors of weight 1 and 2 are reduced")


def delta_prime(x: Poly, bidegree: tuple[int, int]) -> list[Fraction]:
    """Component of the reduced coproduct in A_i (x) A_j, as a vector in the product basis.

    The basis of A_i (x) A_j is ordered left-major, with A_1 = (l2, l3) and
    A_2 = (l2^2, l2 l3, l3^2, Li_2(-2)).
    """
    i, j = bidegree
    hw = period_half_weights(x)
    if hw - {i + j}:
        raise ValueError(f"half-weight {sorted(hw)} does not match bidegree {bidegree}")
    if i < 1 or j < 1 or max(i, j) > 2:
        raise ValueError("bidegrees with factors of weight 1 or 2 only")
    dims = {1: 2, 2: 4}
    vec = [Fraction(0)] * (dims[i] * dims[j])
    for (ml, mr), c in full_coproduct(x).items():
        if _weight(ml) == i and _weight(mr) == j:
            cl = _reduce_factor(ml, i)
            cr = _reduce_factor(mr, j)
            for a, ca in enumerate(cl):
                if ca:
                    for b, cb in enumerate(cr):
                        vec[a * dims[j] + b] += c * ca * cb
    return vec


WEIGHT3_BASIS = [l2 ** 3, l2 ** 2 * l3, l2 * l3 ** 2, l3 ** 3,
                 l2 * Li(2, -2), l3 * Li(2, -2), Li(3, -2), Li(3, 3)]


def solve_mod_zeta3(target: Poly, basis: Sequence[Poly] = WEIGHT3_BASIS) -> tuple[list[Fraction], bool]:
    """Coefficients c with target = sum c_i basis_i modulo the kernel Q zeta(3) of the (2,1) coproduct."""
    for b in list(basis) + [target]:
        if period_half_weights(b) - {3}:
            raise ValueError("solve_mod_zeta3 works in half-weight 3")
    cols = [delta_prime(b, (2, 1)) for b in basis]
    x = _solve(cols, delta_prime(target, (2, 1)))
    if x is None:
        raise ValueError("inconsistent system: the basis does not span the target's coproduct")
    return x, True


# Recorded coproduct tables (rows: left-major tensor basis).  As recorded,
# column "l(2)L2(-2)" reads 0 in row L2(-2) (x) l(2); the coproduct gives 1.
COPRODUCT_TABLE_11 = {
    "l(2)^2": (2, 0, 0, 0),
    "l(2)l(3)": (0, 1, 1, 0),
    "l(3)^2": (0, 0, 0, 2),
    "L2(-2)": (0, 0, -1, 0),
    "L2(2/3)": (0, 0, 1, -1),
    "L2(3)": (0, -1, 0, 0),
}
COPRODUCT_TABLE_21 = {
    "l(2)^3": (3, 0, 0, 0, 0, 0, 0, 0),
    "l(2)^2l(3)": (0, 1, 2, 0, 0, 0, 0, 0),
    "l(2)l(3)^2": (0, 0, 0, 2, 1, 0, 0, 0),
    "l(3)^3": (0, 0, 0, 0, 0, 3, 0, 0),
    "l(2)L2(-2)": (0, 0, -1, 0, 0, 0, 0, 0),
    "l(3)L2(-2)": (0, 0, 0, 0, -1, 0, 0, 1),
    "L3(-2)": (0, 0, 0, 0, 0, 0, 1, 0),
    "L3(3)": (0, 0, 0, -1, 0, 0, 0, -1),
    "L3(2/3)": (0, 0, 0, 0, Fraction(-1, 2), Fraction(1, 2), -1, 1),
}
COPRODUCT_TABLE_ERRATA = {(2, 1): {("l(2)L2(-2)", 6): 1}}

_TABLE_COLUMNS = {
    (1, 1): {"l(2)^2": l2 ** 2, "l(2)l(3)": l2 * l3, "l(3)^2": l3 ** 2, "L2(-2)": Li(2, -2),
             "L2(2/3)": Li(2, Fraction(2, 3)), "L2(3)": Li(2, 3)},
    (2, 1): {"l(2)^3": l2 ** 3, "l(2)^2l(3)": l2 ** 2 * l3, "l(2)l(3)^2": l2 * l3 ** 2, "l(3)^3": l3 ** 3,
             "l(2)L2(-2)": l2 * Li(2, -2), "l(3)L2(-2)": l3 * Li(2, -2), "L3(-2)": Li(3, -2),
             "L3(3)": Li(3, 3), "L3(2/3)": Li(3, Fraction(2, 3))},
}


def coproduct_table(bidegree: tuple[int, int]) -> dict:
    """Columns of delta_prime for the standard elements of half-weight 2 or 3."""
    return {name: tuple(delta_prime(x, bidegree)) for name, x in _TABLE_COLUMNS[bidegree].items()}


def recorded_coproduct_table(bidegree: tuple[int, int], corrected: bool = False) -> dict:
    table = {(1, 1): COPRODUCT_TABLE_11, (2, 1): COPRODUCT_TABLE_21}[bidegree]
    out = {k: tuple(Fraction(c) for c in v) for k, v in table.items()}
    if corrected:
        for (name, row), value in COPRODUCT_TABLE_ERRATA.get(bidegree, {}).items():
            col = list(out[name])
            col[row] = Fraction(value)
            out[name] = tuple(col)
    return out


def combine(coeffs: Sequence[Fraction], basis: Sequence[Poly]) -> Poly:
    out = Poly()
    for c, b in zip(coeffs, basis):
        if c:
            out = out + b * c
    return out


# p-adic realisation ----------------------------------------------------------------

class PeriodEvaluator:
    """Caches p-adic values of period symbols in one context."""

    def __init__(self, ctx: PadicContext):
        self.ctx = ctx
        self._cache: dict = {}

    def symbol(self, name: str) -> PadicNumber:
        if name not in self._cache:
            sym = PeriodSymbol.parse(name)
            if sym.kind == "log":
                val = padic_log(self.ctx(sym.a))
            elif sym.kind == "zeta3":
                val = padic_zeta(3, self.ctx)
            else:
                val = padic_li(sym.n, self.ctx(sym.a))
            self._cache[name] = val
        return self._cache[name]

    def __call__(self, poly: Poly) -> PadicNumber:
        values = {v: self.symbol(v) for v in poly.variables()}
        return poly.evaluate(values, one=self.ctx.one())


@lru_cache(maxsize=None)
def _evaluator(ctx: PadicContext) -> PeriodEvaluator:
    return PeriodEvaluator(ctx)


def zeta3_coefficient(expr: Poly, ctx: PadicContext, cross_check: bool = True) -> Fraction:
    """Rational c with expr = c zeta(3), read off from p-adic periods and cross-checked at a second prime."""
    if expr.is_zero():
        return Fraction(0)
    primes = [ctx.p]
    if cross_check:
        primes.append(next(q for q in CHECK_PRIMES if q != ctx.p))
    results = []
    for q in primes:
        c = ctx if q == ctx.p else PadicContext(q, ctx.N)
        ev = _evaluator(c)
        z = ev.symbol("zeta3")
        if z.is_zero():
            raise ZeroDivisionError(f"zeta_p(3) vanishes to precision at p = {q}")
        value = ev(expr)
        # a value that vanishes to working precision has coefficient 0 (the second prime still checks it)
        results.append(Fraction(0) if value.is_zero() else rational_reconstruct(value / z))
    if len(set(results)) != 1:
        raise ValueError(f"zeta(3) coefficient disagrees across primes: {results}")
    return results[0]


def sigma_pairing(a, ctx: PadicContext) -> Fraction:
    """<Li_3(a), sigma>: the zeta(3)-coefficient of Li_3(a) in the basis WEIGHT3_BASIS + zeta(3)."""
    a = Fraction(a)
    if a in (Fraction(-2), Fraction(3)):
        return Fraction(0)
    coeffs, _ = solve_mod_zeta3(Li(3, a))
    return zeta3_coefficient(Li(3, a) - combine(coeffs, WEIGHT3_BASIS), ctx)


# the dictionary -----------------------------------------------------------------

def W(*letters) -> tuple:
    short = {"t": "tau", "u": "upsilon", "s": "sigma", "2": "tau", "3": "upsilon"}
    return tuple(short.get(str(x), str(x)) for x in letters)


# imported constants: f_{sigma tau}, f_{sigma upsilon}
F_SIGMA_TAU_REFERENCE = Fraction(-7, 8) * (l2 ** 4 / 24 + Li(4, Fraction(1, 2)))
F_SIGMA_UPSILON = Fraction(3, 13) * (6 * Li(4, 3) - Fraction(1, 4) * Li(4, 9))


def _h(x) -> Fraction:
    return Fraction(x)


REFERENCE_TABLE = {
    W("t"): l2,
    W("u"): l3,
    W("t", "u"): l2 * l3 + Li(2, -2),
    W("s"): ZETA3,
    W("t", "t", "u"): -Li(3, -2) + l2 * Li(2, -2) + _h("1/2") * l2 ** 2 * l3,
    W("t", "u", "u"): -Li(3, 3),
    W("t", "s"): _h("7/8") * Li(4, _h("1/2")) + _h("7/192") * l2 ** 4 + l2 * ZETA3,
    W("u", "s"): l3 * ZETA3 - _h("18/13") * Li(4, 3) + _h("3/52") * Li(4, 9),
    W("t", "t", "t", "u"): Li(4, -2) - l2 * Li(3, -2) + _h("1/2") * l2 ** 2 * Li(2, -2)
    + _h("1/6") * l2 ** 3 * l3,
    W("t", "t", "u", "u"): _h("7/144") * l2 ** 4 - _h("1/4") * l2 ** 2 * l3 ** 2 + _h("1/48") * l3 ** 4
    + 2 * l3 * Li(3, -2) + l2 * Li(3, 3) + Li(4, _h("2/3"))
    + _h("7/6") * Li(4, _h("1/2")) + _h("3/2") * Li(4, 3) - _h("1/16") * Li(4, 9)
    - 3 * Li(4, -2) - _h("1/2") * Li(4, _h("4/3")),
    W("t", "u", "u", "u"): -_h("35/1152") * l2 ** 4 - _h("1/12") * l2 * l3 ** 3
    - _h("3/2") * l3 * Li(3, -2) - _h("1/2") * Li(4, _h("2/3")) - _h("35/48") * Li(4, _h("1/2"))
    - _h("12/13") * Li(4, 3) + _h("1/26") * Li(4, 9) + _h("7/2") * Li(4, -2) + _h("1/2") * Li(4, _h("4/3")),
}

# The reference table with the sigma-tau constant recomputed from the expansion of
# Li_4(1/2) and the weight-four eliminations redone exactly; used by the pipeline.
CONSISTENT_TABLE = dict(REFERENCE_TABLE)
CONSISTENT_TABLE.update({
    W("t", "s"): _h("8/7") * Li(4, _h("1/2")) + _h("1/21") * l2 ** 4 + l2 * ZETA3,
    W("t", "t", "u", "u"): -3 * Li(4, -2) + _h("32/21") * Li(4, _h("1/2")) + Li(4, _h("2/3"))
    + _h("21/13") * Li(4, 3) - _h("1/2") * Li(4, _h("4/3")) - _h("7/104") * Li(4, 9)
    + _h("4/63") * l2 ** 4 + _h("1/48") * l3 ** 4 - l2 * Li(3, 3) - _h("1/4") * l2 ** 2 * l3 ** 2,
    W("t", "u", "u", "u"): 2 * Li(4, -2) - _h("8/3") * Li(4, _h("1/2")) - 2 * Li(4, _h("2/3"))
    - 3 * Li(4, 3) + _h("1/2") * Li(4, _h("4/3")) + _h("1/8") * Li(4, 9)
    - _h("1/9") * l2 ** 4 - _h("1/16") * l3 ** 4 + _h("1/6") * l2 * l3 ** 3,
})

TABLES = {"reference": REFERENCE_TABLE, "recomputed": CONSISTENT_TABLE}


def recompute_sigma_constants(ctx: PadicContext) -> tuple[Poly, Poly]:
    """f_{sigma tau} and f_{sigma upsilon} from the expansions of Li_4(1/2), Li_4(3) and Li_4(9).

    Li_4(1/2) = -c f_{sigma tau} - f_{tau tau tau tau} with c = <Li_3(1/2), sigma>;
    Li_4(3) = -f_{tau upsilon upsilon upsilon};
    Li_4(9) = 2 c' f_{sigma upsilon} - 24 f_{tau upsilon upsilon upsilon} with c' = <Li_3(9), sigma>.
    The identities are checked against li_expand_shuffle before use.
    """
    half, nine = Fraction(1, 2), Fraction(9)
    c = sigma_pairing(half, ctx)
    c9 = sigma_pairing(nine, ctx)
    sig = {(3, half): c, (3, nine): c9, (3, Fraction(3)): Fraction(0)}
    st, su, t4, tu3 = W("s", "t"), W("s", "u"), W("t", "t", "t", "t"), W("t", "u", "u", "u")
    assert li_expand_shuffle(4, half, sig) == ShuffleElement(G, {st: -c, t4: Fraction(-1)})
    assert li_expand_shuffle(4, 3, sig) == ShuffleElement(G, {tu3: Fraction(-1)})
    assert li_expand_shuffle(4, nine, sig) == ShuffleElement(G, {su: 2 * c9, tu3: Fraction(-24)})
    f_st = -(Li(4, half) + l2 ** 4 / 24) / c
    f_su = (Li(4, nine) - 24 * Li(4, 3)) / (2 * c9)
    return f_st, f_su


@dataclass
class PeriodDictionary:
    entries: dict          # Lyndon word -> Poly
    sigma: dict            # (r, a) -> Fraction used in the derivation

    def __post_init__(self):
        lw = lyndon_words(G, 4)
        if set(self.entries) != set(lw) or len(self.entries) != 11:
            raise ValueError("a period dictionary has exactly the 11 Lyndon words as keys")
        for w, p in self.entries.items():
            if p.is_zero() or period_half_weights(p) != {G.half_weight(w)}:
                raise ValueError(f"entry for {w} has the wrong half-weight")

    def __getitem__(self, w) -> Poly:
        return self.entries[tuple(w)]

    def to_json(self) -> str:
        return dictionary_json(self.entries)

    def sha256(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()


def _frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _json_symbol(name: str) -> str:
    sym = PeriodSymbol.parse(name)
    if sym.kind == "Li":
        return f"Li({sym.n},{_frac_str(sym.a) if sym.a.denominator != 1 else sym.a.numerator})"
    return sym.name


def dictionary_json(entries: Mapping) -> str:
    doc = {}
    for w, p in entries.items():
        terms = []
        for m, c in p.terms.items():
            mono = sorted(_json_symbol(v) for v, e in m for _ in range(e))
            terms.append({"coefficient": _frac_str(c), "monomial": mono})
        terms.sort(key=lambda t: (t["monomial"], t["coefficient"]))
        doc[",".join(w)] = terms
    return json.dumps(dict(sorted(doc.items())), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def default_sigma(ctx: PadicContext) -> dict:
    """Pairings <Li_3(a), sigma> needed in weights <= 4."""
    return {(3, Fraction(a)): sigma_pairing(a, ctx) for a in (-2, 3, Fraction(2, 3), Fraction(4, 3))}


@dataclass
class Derivation:
    """Intermediate results of the dictionary derivation (kept for inspection and tests)."""
    sigma: dict
    weight2: dict
    weight3: dict
    weight4_ttt: dict
    E: Poly
    F: Poly
    f3322: Poly
    f2333: Poly
    entries: dict


def weight_known(n: int, sigma: Mapping) -> list[tuple[Poly, ShuffleElement]]:
    """Products of polylogarithmic coordinates of total half-weight n, with their expansions."""
    gens = {1: [l2, l3], 2: [Li(2, -2)], 3: [ZETA3, Li(3, -2), Li(3, 3)]}
    pieces = []

    def grow(start, remaining, acc):
        if remaining == 0:
            pieces.append(acc)
            return
        for k in range(start, len(flat)):
            w, g = flat[k]
            if w <= remaining:
                grow(k, remaining - w, acc * g)

    flat = [(w, g) for w in sorted(gens) for g in gens[w]]
    grow(0, n, Poly.const(1))
    return [(p, period_to_shuffle(p, sigma)) for p in pieces]


def sigma_constants(ctx: PadicContext, constants: str) -> tuple[Poly, Poly]:
    if constants == "reference":
        return F_SIGMA_TAU_REFERENCE, F_SIGMA_UPSILON
    if constants == "recomputed":
        return recompute_sigma_constants(ctx)
    raise ValueError(f"unknown constants choice {constants!r}")


def derive_dictionary(ctx: PadicContext, constants: str = "recomputed") -> Derivation:
    sigma = default_sigma(ctx)
    f_st, f_su = sigma_constants(ctx, constants)
    # weights 1-3: invert the expansions of all products of polylogarithmic coordinates
    w2 = invert_expansions(weight_known(2, sigma), G.words(2))
    w3 = invert_expansions(weight_known(3, sigma), [w for w in G.words(3)])
    # f_{tau tau tau upsilon}: the four expansions l2^3 l3, l2^2 Li2(-2), l2 Li3(-2), Li4(-2)
    subsystem = [l2 ** 3 * l3, l2 ** 2 * Li(2, -2), l2 * Li(3, -2), Li(4, -2)]
    w4 = invert_expansions([(p, period_to_shuffle(p, sigma)) for p in subsystem],
                           [W(2, 2, 2, 3), W(3, 2, 2, 2)])
    f3222 = w4[W(3, 2, 2, 2)]
    f333 = w3[W(3, 3, 3)]
    f3333 = l3 ** 4 / 24
    c23 = sigma[(3, Fraction(2, 3))]
    c43 = sigma[(3, Fraction(4, 3))]
    E = (Li(4, Fraction(2, 3)) - c23 * (f_st - f_su) - f3222
         - l3 * Li(3, -2) - l2 * f333 + f3333)
    F = (Li(4, Fraction(4, 3)) - c43 * (2 * f_st - f_su) - 8 * f3222
         - 4 * l3 * Li(3, -2) - 2 * l2 * f333 + f3333)
    # E = f3322 - f2333, F = 4 f3322 - 2 f2333
    f3322, f2333 = solve_2x2(((1, -1), (4, -2)), (E, F))
    f2233 = -f3322 - (Fraction(1, 4) * l2 ** 2 * l3 ** 2 + l3 * Li(3, -2) + l2 * Li(3, 3))
    entries = {
        W("t"): l2,
        W("u"): l3,
        W("t", "u"): w2[W("t", "u")],
        W("s"): w3[W("s")],
        W("t", "t", "u"): w3[W("t", "t", "u")],
        W("t", "u", "u"): w3[W("t", "u", "u")],
        W("t", "s"): l2 * ZETA3 - f_st,
        W("u", "s"): l3 * ZETA3 - f_su,
        W("t", "t", "t", "u"): w4[W(2, 2, 2, 3)],
        W("t", "t", "u", "u"): f2233,
        W("t", "u", "u", "u"): f2333,
    }
    return Derivation(sigma, w2, w3, w4, E, F, f3322, f2333, entries)


def solve_2x2(matrix, rhs) -> tuple[Poly, Poly]:
    """Cramer's rule over period polynomials."""
    (a, b), (c, d) = matrix
    det = Fraction(a * d - b * c)
    if det == 0:
        raise ZeroDivisionError("singular 2x2 system")
    e, f = rhs
    return (e * d - f * b) / det, (f * a - e * c) / det


def full_inversion(ctx: PadicContext, sigma: Mapping | None = None, constants: str = "recomputed") -> dict:
    """All weight-4 word coordinates from a single 20x20 inversion (an independent cross-check)."""
    if sigma is None:
        sigma = default_sigma(ctx)
    f_st, f_su = sigma_constants(ctx, constants)
    known = weight_known(4, sigma)
    known += [(Li(4, a), li_expand_shuffle(4, a, sigma)) for a in (-2, Fraction(2, 3), Fraction(4, 3))]
    known += [(f_st, ShuffleElement.word(G, W("s", "t"))),
              (f_su, ShuffleElement.word(G, W("s", "u")))]
    return invert_expansions(known, G.words(4))


def build_period_dictionary(ctx: PadicContext, constants: str = "recomputed", check: bool = True) -> PeriodDictionary:
    """Derive all 11 entries and compare them with the hardcoded table for the chosen constants."""
    d = derive_dictionary(ctx, constants)
    if check:
        table = TABLES[constants]
        bad = [w for w in table if d.entries[w] != table[w]]
        if bad:
            raise DictionaryMismatch(
                "derived entries differ from the hardcoded table: " + ", ".join(".".join(w) for w in bad))
    return PeriodDictionary(d.entries, d.sigma)


def table_dictionary(constants: str = "recomputed") -> PeriodDictionary:
    return PeriodDictionary(dict(TABLES[constants]), {})


def validate_dictionary(entries: Mapping, ctx: PadicContext, points: Sequence = (), weights=(2, 3, 4)) -> dict:
    """Independent check: p-adic Li_n(a) against its shuffle expansion evaluated through the dictionary.

    Returns ``{(n, a): valuation of the discrepancy}``; a sound dictionary gives
    discrepancies at the working precision for every 6-unit a with 1 - a a 6-unit.
    """
    from .shuffle import dual_var, expand_in_lyndon

    ev = _evaluator(ctx)
    values = {dual_var(w): ev(p) for w, p in entries.items()}
    out = {}
    for a in points:
        a = Fraction(a)
        sig = {(3, a): sigma_pairing(a, ctx)}
        for n in weights:
            total = ctx.zero()
            for w, c in li_expand_shuffle(n, a, sig).terms.items():
                total = total + expand_in_lyndon(G, w).evaluate(values, ctx.one()) * c
            out[(n, a)] = (total - padic_li(n, ctx(a))).valuation()
    return out
