"""Construction and evaluation of the kernel element F.

For each tower (head, tail) in ``(e11, e1), (e22, e2), (e12, e1+e2)`` a
bivariate polynomial Q(X, Y) and a quadratic A X^2 + B X + C are built from
the geometric coordinates of that tower and the Galois shuffle coordinates.
Eliminating X between them gives P(Y); stripping its generic power of Y gives
p_i.  F is the double resultant

    F = Res_Y(Res_X(p1(X), p2(Y - X)), p3(Y)).

Everything is written once against a small value-provider interface
(``Env``), so the same code builds symbolic coefficients, exact rational
values and p-adic values.  F itself is never expanded: ``evaluate_F`` computes
its value at a scalar point through fixed-size Sylvester determinants.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Mapping

import gmpy2

from . import resultant as rs
from .cocycle import DEFAULT_CONFIG, phi_var, theta
from .lie import PLCoordinate, coordinates
from .poly import Poly
from .shuffle import ShuffleElement, dual_var, expand_in_lyndon, lyndon_words

G = DEFAULT_CONFIG.alphabet
T, U, S = "tau", "upsilon", "sigma"
LYNDON = lyndon_words(G, 4)
INV_FSIGMA = "inv_f[sigma]"

TOWERS = {1: "11", 2: "22", 3: "12"}


class DegenerateSpecialization(ArithmeticError):
    """A denominator vanished at the chosen point."""


# value providers

class Env:
    """Supplies ring elements for shuffle coordinates and geometric coordinates."""

    zero = None
    one = None

    def fw(self, word):
        raise NotImplementedError

    def fl(self, lam: PLCoordinate):
        raise NotImplementedError

    def inv_fsigma(self):
        raise NotImplementedError

    def f(self, element: ShuffleElement):
        total = self.zero
        for w, c in element.terms.items():
            total = total + self.fw(w) * c
        return total

    def f_tail(self, tower: str):
        """The coordinate of the tower's abelian tail letter."""
        if tower == "11":
            return self.fl(PLCoordinate("e1"))
        if tower == "22":
            return self.fl(PLCoordinate("e2"))
        return self.fl(PLCoordinate("e1")) + self.fl(PLCoordinate("e2"))


class SymbolicEnv(Env):
    """Coefficients as polynomials in Lyndon duals, geometric coordinates and 1/f_sigma."""

    def __init__(self):
        self.zero = Poly()
        self.one = Poly.const(1)

    def fw(self, word):
        return expand_in_lyndon(G, tuple(word))

    def fl(self, lam):
        return Poly.var(lam.var)

    def inv_fsigma(self):
        return Poly.var(INV_FSIGMA)


class ScalarEnv(Env):
    """Coefficients at scalar values of the 11 Lyndon duals and the 14 geometric coordinates."""

    def __init__(self, lyndon_values: Mapping, coordinate_values: Mapping, one):
        self.one = one
        self.zero = one * 0
        self._lyn = {dual_var(w) if isinstance(w, tuple) else w: v for w, v in lyndon_values.items()}
        self._coord = {(c.name if isinstance(c, PLCoordinate) else c): v for c, v in coordinate_values.items()}
        self._cache: dict = {}

    def fw(self, word):
        w = tuple(word)
        if w not in self._cache:
            self._cache[w] = expand_in_lyndon(G, w).evaluate(self._lyn, self.one)
        return self._cache[w]

    def fl(self, lam):
        return self._coord[lam.name]

    def inv_fsigma(self):
        s = self.fw((S,))
        if s == 0:
            raise DegenerateSpecialization("f_sigma vanishes")
        return self.one / s


# bivariate helpers: dict (i, j) -> coefficient of X^i Y^j

def _bi_add(*polys):
    out: dict = {}
    for p in polys:
        for k, v in p.items():
            out[k] = out[k] + v if k in out else v
    return out


def _bi_mul(p, q):
    out: dict = {}
    for (i1, j1), a in p.items():
        for (i2, j2), b in q.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out[k] + a * b if k in out else a * b
    return out


def _bi_scale(p, k):
    return {m: v * k for m, v in p.items()}


def _word(*letters):
    return ShuffleElement.word(G, letters)


def _headed(head: str, tail: ShuffleElement) -> ShuffleElement:
    """f_{head (tail)}: concatenate the head letter with every word of tail."""
    return _word(head).concat(tail)


def _sh(*words) -> ShuffleElement:
    out = ShuffleElement.unit(G)
    for w in words:
        out = out * _word(*w)
    return out


def _cubic(env: Env, head: str):
    """sum over words w in {tau, upsilon}^3 of f_{head w} Y^#tau X^#upsilon, grouped by shuffles."""
    return {
        (0, 3): env.f(_headed(head, _word(T, T, T))),
        (3, 0): env.f(_headed(head, _word(U, U, U))),
        (1, 2): env.f(_headed(head, _sh((T, T), (U,)))),
        (2, 1): env.f(_headed(head, _sh((U, U), (T,)))),
    }


def _quadratic(env: Env, head: str):
    return {
        (0, 2): env.f(_headed(head, _word(T, T))),
        (2, 0): env.f(_headed(head, _word(U, U))),
        (1, 1): env.f(_headed(head, _sh((T,), (U,)))),
    }


def tower_values(env: Env, tower: str) -> list:
    """[L1, L2, L3, L4]: the geometric coordinates along the tower."""
    return [env.fl(PLCoordinate(tower, i)) for i in range(1, 5)]


def build_q1(env: Env, tower: str = "11", variant: str = "corrected") -> dict:
    """Q(X, Y) for one tower as a dict of coefficients a[i, j] of X^i Y^j.

    X and Y stand for the seed values of upsilon and tau on the tower's tail.
    ``variant="uncorrected"`` is an earlier form of the formulas that does not vanish
    at cocycle points; it is kept only so tests can demonstrate the difference.
    """
    fT, fU = env.fw((T,)), env.fw((U,))
    fTT, fTU, fUT, fUU = env.fw((T, T)), env.fw((T, U)), env.fw((U, T)), env.fw((U, U))
    L1, L2, L3, L4 = tower_values(env, tower)
    X, Y = (1, 0), (0, 1)

    # U = f_u L2 - (f_ut Y + f_uu X) L1 ;  V = -f_t L2 + (f_tu X + f_tt Y) L1
    Ubr = {(0, 0): fU * L2, Y: -fUT * L1, X: -fUU * L1}
    Vbr = {(0, 0): -fT * L2, X: fTU * L1, Y: fTT * L1}
    if variant == "corrected":
        D = {X: fU * fTU - fT * fUU, Y: fU * fTT - fT * fUT}
    elif variant == "uncorrected":
        D = {X: fTU * fU - fT * fUU, Y: fTT * fU - fT * fUU}
    else:
        raise ValueError(f"unknown variant {variant}")
    g = {Y: env.fw((S, T)), X: env.fw((S, U))}
    C4t, C4u = _cubic(env, T), _cubic(env, U)
    C3t, C3u = _quadratic(env, T), _quadratic(env, U)
    inv = env.inv_fsigma()

    top = _bi_add(_bi_scale(D, -L4), _bi_mul(Ubr, C4t), _bi_mul(Vbr, C4u))
    if variant == "corrected":
        inner = _bi_add(_bi_scale(D, L3), _bi_scale(_bi_mul(Ubr, C3t), -1), _bi_scale(_bi_mul(Vbr, C3u), -1))
    else:
        inner = _bi_add({(0, 0): L3}, _bi_scale(_bi_mul(Ubr, C3t), -1), _bi_mul(Vbr, C3u))
    low = _bi_scale(_bi_mul(g, inner), inv)
    return _bi_add(top, low)


def build_abc(env: Env, tower: str = "11", variant: str = "corrected") -> tuple:
    """(A, B, C) as coefficient lists in Y with A X^2 + B X + C vanishing at cocycle points."""
    fT, fU = env.fw((T,)), env.fw((U,))
    fTT, fTU, fUT, fUU = env.fw((T, T)), env.fw((T, U)), env.fw((U, T)), env.fw((U, U))
    L1, L2 = tower_values(env, tower)[:2]
    half = env.one / 2
    ftail = env.f_tail(tower)
    kappa = fTU - half * fT * fU
    kappa2 = fUT - half * fU * fT
    L2p = L2 - half * L1 * ftail
    A = [-kappa * fUU * L1]
    B = [kappa * fU * L2 - (fTU * fU - fT * fUU) * L2p,
         -kappa * fUT * L1 + kappa2 * fTU * L1]
    last = fTT * fU - fT * (fUT if variant == "corrected" else fUU)
    C = [env.zero,
         -kappa2 * fT * L2 - last * L2p,
         kappa2 * fTT * L1]
    return A, B, C


def build_qab(env: Env, tower: str = "11", variant: str = "corrected") -> tuple:
    """(Qa, Qb, A, B, C, disc) with (2A)^4 Q((-B + d)/(2A), Y) = Qa + d Qb for d^2 = disc."""
    zero, one = env.zero, env.one
    a = build_q1(env, tower, variant)
    A, B, C = build_abc(env, tower, variant)
    disc = rs.psub(rs.pmul(B, B, zero), rs.pscale(rs.pmul(A, C, zero), 4), zero)
    negB = rs.pneg(B)
    twoA = rs.pscale(A, 2)
    disc_pows, negB_pows, twoA_pows = [[one]], [[one]], [[one]]
    for _ in range(4):
        disc_pows.append(rs.pmul(disc_pows[-1], disc, zero))
        negB_pows.append(rs.pmul(negB_pows[-1], negB, zero))
        twoA_pows.append(rs.pmul(twoA_pows[-1], twoA, zero))
    Qa: list = [zero]
    Qb: list = [zero]
    for i in range(5):
        row = [a.get((i, j), zero) for j in range(5)]
        if all(rs.is_exact_zero(c) for c in row):
            continue
        sa: list = [zero]
        for k in range(i // 2 + 1):
            sa = rs.padd(sa, rs.pscale(rs.pmul(disc_pows[k], negB_pows[i - 2 * k], zero), comb(i, 2 * k)), zero)
        sb: list = [zero]
        for k in range((i + 1) // 2):
            sb = rs.padd(sb, rs.pscale(rs.pmul(disc_pows[k], negB_pows[i - 2 * k - 1], zero), comb(i, 2 * k + 1)), zero)
        common = rs.pmul(row, twoA_pows[4 - i], zero)
        Qa = rs.padd(Qa, rs.pmul(common, sa, zero), zero)
        Qb = rs.padd(Qb, rs.pmul(common, sb, zero), zero)
    return Qa, Qb, A, B, C, disc


def build_delta(env: Env, tower: str = "11"):
    """Square root of the discriminant B^2 - 4AC, on the branch through the cocycle point.

    The quadratic splits as A (X - X1)(X - X2) with X1 = (f_tail - f_tau Y) / f_upsilon
    and X2 = -f_tau Y / f_upsilon, so the root X1 is reached with
    delta = A (X1 - X2) = A f_tail / f_upsilon = -(1/2) kappa f_upsilon L1 f_tail.
    """
    fT, fU = env.fw((T,)), env.fw((U,))
    kappa = env.fw((T, U)) - fT * fU * (env.one / 2)
    L1 = tower_values(env, tower)[0]
    return -kappa * fU * L1 * env.f_tail(tower) * (env.one / 2)


def build_P(env: Env, tower: str = "11", variant: str = "corrected", mode: str = "branch") -> list:
    """Univariate elimination polynomial in Y before stripping powers of Y.

    ``mode="norm"`` is Qa^2 - (B^2 - 4AC) Qb^2 (dense, length 9); it vanishes
    identically for the corrected formulas because one conjugate factor does.
    ``mode="branch"`` is the surviving factor Qa + delta Qb (length 5).
    """
    zero = env.zero
    Qa, Qb, A, B, C, disc = build_qab(env, tower, variant)
    if mode == "norm":
        P = rs.psub(rs.pmul(Qa, Qa, zero), rs.pmul(disc, rs.pmul(Qb, Qb, zero), zero), zero)
        return rs.pad(P, 9, zero)
    if mode == "branch":
        delta = build_delta(env, tower)
        return rs.pad(rs.padd(Qa, rs.pscale(Qb, delta), zero), 5, zero)
    raise ValueError(f"unknown mode {mode}")


def build_p(i: int, program: "ResultantProgram | None" = None) -> list:
    """Symbolic p_i: coefficients are polynomials in Lyndon duals, coordinates and 1/f_sigma."""
    program = program or default_program()
    env = SymbolicEnv()
    P = build_P(env, TOWERS[i], program.variant, program.mode)
    k, d = program.k[i - 1], program.d[i - 1]
    if any(not c.is_zero() for c in P[:k]):
        raise ArithmeticError(f"P{i} is not divisible by Y^{k}")
    return rs.pad(P[k:], d + 1, env.zero)


# random specializations

BOUND = 1 << 16


def random_rational(rng: random.Random, bound: int = BOUND):
    return gmpy2.mpq(rng.randint(-bound, bound), rng.randint(1, bound))


def random_lyndon_values(rng: random.Random) -> dict:
    return {w: random_rational(rng) for w in LYNDON}


def random_seed_values(rng: random.Random) -> dict:
    return {key: random_rational(rng) for key in DEFAULT_CONFIG.seed_keys()}


def theta_coordinates(lyndon_values: Mapping, seed_values: Mapping, one=None) -> dict:
    """Values of all 14 geometric coordinates induced by a cocycle: f_lambda <- theta(f_lambda)."""
    one = gmpy2.mpq(1) if one is None else one
    values = {dual_var(w): v for w, v in lyndon_values.items()}
    for (rho, lam), v in seed_values.items():
        values[phi_var(rho, lam)] = v
    return {lam.name: theta(lam).evaluate(values, one) for lam in coordinates(4)}


def random_free_coordinates(rng: random.Random) -> dict:
    return {lam.name: random_rational(rng) for lam in coordinates(4)}


def tail_root(seed_values: Mapping, tower_index: int):
    """The seed value of tau on the tail of a tower: the expected root of p_i."""
    t1 = seed_values[(T, PLCoordinate("e1"))]
    t2 = seed_values[(T, PLCoordinate("e2"))]
    return {1: t1, 2: t2, 3: t1 + t2}[tower_index]


# the resultant program

def y_valuation(P: list) -> int:
    for i, c in enumerate(P):
        if c != 0:
            return i
    return len(P)


def degree(P: list) -> int:
    return max((i for i, c in enumerate(P) if c != 0), default=-1)


@dataclass
class Certification:
    d: tuple
    k: tuple
    seeds: list
    observations: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"d": list(self.d), "k": list(self.k), "seeds": list(self.seeds)}


def certify(trials: int = 5, seed: int = 0, variant: str = "corrected", mode: str = "branch") -> Certification:
    """Generic Y-valuation k_i and degree d_i of each p_i from exact random points.

    Both free points (independent geometric coordinates) and cocycle points
    are used; k_i is the minimum valuation and d_i the maximum degree seen,
    and both must agree across all free trials.
    """
    rng = random.Random(seed)
    obs = []
    seeds = []
    for t in range(trials):
        s = rng.randrange(1 << 30)
        seeds.append(s)
        r = random.Random(s)
        lyn = random_lyndon_values(r)
        for kind in ("free", "cocycle"):
            if kind == "free":
                coords = random_free_coordinates(r)
            else:
                coords = theta_coordinates(lyn, random_seed_values(r))
            env = ScalarEnv(lyn, coords, gmpy2.mpq(1))
            for i, tower in TOWERS.items():
                P = build_P(env, tower, variant, mode)
                obs.append((kind, i, y_valuation(P), degree(P)))
    ks, ds = [], []
    for i in TOWERS:
        free = [(k, d) for kind, j, k, d in obs if j == i and kind == "free"]
        if any(d < 0 for _, d in free):
            raise RuntimeError(f"P{i} vanishes identically at free points")
        if len(set(free)) != 1:
            raise RuntimeError(f"unstable generic shape for p{i}: {sorted(set(free))}")
        k = min(k for _, j, k, _ in obs if j == i)
        d = max(d for _, j, _, d in obs if j == i)
        ks.append(k)
        ds.append(d - k)
    return Certification(tuple(ds), tuple(ks), seeds, obs)


@dataclass
class ResultantProgram:
    """F as a recipe: three stripped polynomials and a double resultant."""

    d: tuple
    k: tuple
    variant: str = "corrected"
    mode: str = "branch"
    interpolation: bool = True
    final: str = "sylvester"  # or "euclid"

    def p_polys(self, env: Env, strip_check: Callable | None = None) -> list:
        out = []
        for idx, tower in TOWERS.items():
            P = build_P(env, tower, self.variant, self.mode)
            k, d = self.k[idx - 1], self.d[idx - 1]
            low = P[:k]
            if strip_check is None:
                if any(c != 0 for c in low):
                    raise ArithmeticError(f"P{idx} is not divisible by Y^{k} at this point")
            else:
                strip_check(idx, low)
            out.append(rs.pad(P[k:], d + 1, env.zero))
        return out

    def evaluate(self, env: Env, pivot_key: Callable | None = None, strip_check: Callable | None = None,
                 exhausted: Callable | None = None):
        p1, p2, p3 = self.p_polys(env, strip_check)
        return double_resultant(p1, p2, p3, env.zero, env.one, pivot_key, self.interpolation, self.final,
                                exhausted)


def inner_resultant_at(p1, p2, y, zero, one, pivot_key=None, exhausted=None):
    return rs.resultant(p1, rs.shifted_reflection(p2, y, zero), zero, one, pivot_key, exhausted)


def double_resultant(p1, p2, p3, zero, one, pivot_key=None, interpolation=True, final="sylvester", exhausted=None):
    d1, d2 = len(p1) - 1, len(p2) - 1
    n = d1 * d2
    if interpolation:
        xs = [one * i for i in range(n + 1)]
        ys = [inner_resultant_at(p1, p2, x, zero, one, pivot_key, exhausted) for x in xs]
        R = rs.interpolate(xs, ys, zero, one)
    else:
        R = symbolic_inner_resultant(p1, p2, zero, one)
    if final == "euclid":
        return rs.euclid_resultant(R, p3, zero, one)
    return rs.resultant(R, p3, zero, one, pivot_key, exhausted)


def symbolic_inner_resultant(p1, p2, zero, one) -> list:
    """Res_X(p1(X), p2(Y - X)) with Y kept symbolic (entries are polynomials in Y)."""
    # coefficients stay in the scalar type of ``one``; gmpy2 and Fraction do not mix reliably
    y = Poly({(("Y", 1),): one})
    p1p = [Poly.const(c) for c in p1]
    p2p = rs.shifted_reflection([Poly.const(c) for c in p2], y, Poly())
    det = rs.expansion_determinant(rs.sylvester(p1p, p2p, Poly()), Poly(), Poly.const(one))
    out = [zero] * ((len(p1) - 1) * (len(p2) - 1) + 1)
    for i in range(len(out)):
        out[i] = det.coefficient_in("Y", i).constant_term()
    return out


_PROGRAM: ResultantProgram | None = None


def default_program() -> ResultantProgram:
    global _PROGRAM
    if _PROGRAM is None:
        c = certify()
        _PROGRAM = ResultantProgram(c.d, c.k)
    return _PROGRAM


def evaluate_F(lyndon_values: Mapping, coordinate_values: Mapping, one=None, program: ResultantProgram | None = None,
               pivot_key=None, strip_check=None, exhausted=None):
    """Value of F at scalar values of the Lyndon duals and the geometric coordinates."""
    program = program or default_program()
    if one is None:
        one = gmpy2.mpq(1)
    env = ScalarEnv(lyndon_values, coordinate_values, one)
    return program.evaluate(env, pivot_key, strip_check, exhausted)


@dataclass
class KernelCheckReport:
    trials: int
    seeds: list
    all_zero: bool
    degenerate_retries: int
    nonzero_trials: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"trials": self.trials, "seeds": self.seeds, "all_zero": self.all_zero,
                "degenerate_retries": self.degenerate_retries, "nonzero_trials": self.nonzero_trials}


def kernel_check(trials: int = 100, seed: int = 0, program: ResultantProgram | None = None) -> KernelCheckReport:
    """Evaluate F at random exact cocycle points; every value must be exactly zero."""
    if trials < 1:
        raise ValueError("trials must be positive")
    program = program or default_program()
    rng = random.Random(seed)
    seeds, nonzero, retries = [], [], 0
    while len(seeds) < trials:
        s = rng.randrange(1 << 30)
        r = random.Random(s)
        lyn = random_lyndon_values(r)
        try:
            coords = theta_coordinates(lyn, random_seed_values(r))
            value = evaluate_F(lyn, coords, program=program)
        except (DegenerateSpecialization, ZeroDivisionError):
            retries += 1
            continue
        seeds.append(s)
        if value != 0:
            nonzero.append(len(seeds) - 1)
    return KernelCheckReport(trials, seeds, not nonzero, retries, nonzero)


def homogeneity_weight(program: ResultantProgram | None = None, seed: int = 1, scale: int = 2) -> int:
    """Weight w with F(scale^hw * inputs) = scale^w F(inputs), read off at a free point.

    Every input (Lyndon dual or geometric coordinate) is scaled by ``scale`` to
    its half-weight; the exact ratio of the two values must be a power of ``scale``.
    """
    program = program or default_program()
    rng = random.Random(seed)
    lyn = {w: random_rational(rng, 50) for w in LYNDON}
    coords = {lam.name: random_rational(rng, 50) for lam in coordinates(4)}
    hw = {lam.name: lam.half_weight for lam in coordinates(4)}
    base = evaluate_F(lyn, coords, program=program)
    if base == 0:
        raise DegenerateSpecialization("F vanishes at the sample point")
    scaled = evaluate_F({w: v * scale ** G.half_weight(w) for w, v in lyn.items()},
                        {k: v * scale ** hw[k] for k, v in coords.items()}, program=program)
    ratio = Fraction(int(scaled.numerator), int(scaled.denominator)) / Fraction(int(base.numerator), int(base.denominator))
    w, r = 0, ratio
    while r.denominator == 1 and r.numerator % scale == 0:
        r /= scale
        w += 1
    if r != 1:
        raise ArithmeticError(f"F is not weighted homogeneous: ratio {ratio}")
    return w
