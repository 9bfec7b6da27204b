"""Integral points of M_{0,5} over Z[1/6] and the p-adic evaluation of the Kim function.

F is weighted homogeneous (every input of half-weight n scales like t^n).  A
p-adic evaluation therefore divides each input of half-weight n by p^n before
calling ``evaluate_F``; the reported valuation is the valuation of F at these
unit-scale inputs, i.e. v(F) minus the homogeneity weight.  Without this the
raw valuation is dominated by the sizes of the logarithms and polylogarithms
and says nothing about vanishing.
"""
from __future__ import annotations

import hashlib
import json
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

from .geometric import G, ResultantProgram, default_program, evaluate_F, homogeneity_weight
from .lie import coordinates
from .padic import INF, PadicContext, PadicNumber, exhausted_bound, padic_log, valuation_pivot
from .periods import PeriodEvaluator, build_period_dictionary, six_unit_valuations
from .polylog import padic_li

X_POINTS = (
    Fraction(2), Fraction(1, 2), Fraction(-1),
    Fraction(3), Fraction(1, 3), Fraction(2, 3), Fraction(3, 2), Fraction(-1, 2), Fraction(-2),
    Fraction(4), Fraction(1, 4), Fraction(4, 3), Fraction(3, 4), Fraction(-1, 3), Fraction(-3),
    Fraction(-1, 8), Fraction(1, 9), Fraction(9, 8), Fraction(8, 9), Fraction(9), Fraction(-8),
)


class BadReduction(ValueError):
    """A coordinate of the point is 0 or 1 modulo p."""


def is_six_unit(q) -> bool:
    q = Fraction(q)
    if q == 0:
        return False
    try:
        six_unit_valuations(q)
    except ValueError:
        return False
    return True


def six_units(bound: int = 7) -> list[Fraction]:
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            u = Fraction(2) ** a * Fraction(3) ** b
            out += [u, -u]
    return out


def enumerate_x_points() -> list[Fraction]:
    return sorted(X_POINTS)


def x_points_oracle(bound: int = 7) -> list[Fraction]:
    """6-units u with 1 - u a 6-unit, by brute force over bounded exponents."""
    return sorted(u for u in six_units(bound) if is_six_unit(1 - u))


@dataclass(frozen=True, order=True)
class IntegralPoint:
    z1: Fraction
    z2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "z1", Fraction(self.z1))
        object.__setattr__(self, "z2", Fraction(self.z2))

    @property
    def product(self) -> Fraction:
        return self.z1 * self.z2

    def swapped(self) -> "IntegralPoint":
        return IntegralPoint(self.z2, self.z1)

    def __str__(self):
        return f"({self.z1}, {self.z2})"


def is_integral(point: IntegralPoint) -> bool:
    return all(is_six_unit(c) and is_six_unit(1 - c) for c in (point.z1, point.z2, point.product))


def enumerate_y_points() -> list[IntegralPoint]:
    xs = set(X_POINTS)
    return sorted(IntegralPoint(a, b) for a in xs for b in xs if a * b in xs)


def y_points_oracle(bound: int = 7) -> list[IntegralPoint]:
    """Pairs of bounded 6-units with z1, z2, z1 z2 all avoiding 1 up to 6-units."""
    units = six_units(bound)
    good = [u for u in units if is_six_unit(1 - u)]
    return sorted(IntegralPoint(a, b) for a in good for b in good if is_six_unit(1 - a * b))


def reduction_defect(point: IntegralPoint, p: int) -> str | None:
    """Why the point has bad reduction at p, or None."""
    for label, c in (("z1", point.z1), ("z2", point.z2), ("z1*z2", point.product)):
        if c.numerator % p == 0 or c.denominator % p == 0:
            return f"{label} = {c} is not a {p}-adic unit"
        if (c.numerator - c.denominator) % p == 0:
            return f"{label} = {c} is congruent to 1 mod {p}"
    return None


def coordinate_name(tower: str, i: int) -> str:
    tail = {"11": "e1", "22": "e2", "12": "(e1+e2)"}[tower]
    if i == 1:
        return "e" + tower
    if i == 2:
        return f"e{tower}{tail}"
    return f"e{tower}{tail}^{i - 1}"


def albanese_values(point: IntegralPoint, ctx: PadicContext) -> dict:
    """p-adic values of the 14 geometric coordinates at a good-reduction point."""
    why = reduction_defect(point, ctx.p)
    if why:
        raise BadReduction(why)
    z1, z2, z12 = ctx(point.z1), ctx(point.z2), ctx(point.product)
    out = {"e1": padic_log(z1), "e2": padic_log(z2)}
    for tower, z in (("11", z1), ("22", z2), ("12", z12)):
        for i in range(1, 5):
            out[coordinate_name(tower, i)] = padic_li(i, z)
    return out


@dataclass(frozen=True)
class RunConfig:
    p: int = 13
    precision: int = 40
    slack: int = 15
    seed: int = 0
    output: str | None = None
    controls: int = 24
    jobs: int = 1

    def __post_init__(self):
        if self.p in (2, 3) or 6 % self.p == 0:
            raise ValueError("p must not divide 6")
        if not 0 <= self.slack < self.precision:
            raise ValueError("slack must lie in [0, precision)")
        PadicContext(self.p, self.precision)

    @property
    def threshold(self) -> int:
        return self.precision - self.slack

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        known = {k: data[k] for k in ("p", "precision", "slack", "seed", "output", "controls", "jobs") if k in data}
        return cls(**known)

    def echo(self) -> dict:
        return {"p": self.p, "precision": self.precision, "slack": self.slack, "seed": self.seed}


@dataclass
class KimEvaluation:
    point: IntegralPoint
    value: PadicNumber
    valuation_floor: float
    is_integral: bool
    absprec: float
    precision: int

    @property
    def digits_lost(self):
        return max(0, self.precision - self.absprec) if self.absprec != INF else 0

    def passes(self, threshold: int) -> bool:
        return self.valuation_floor >= threshold

    def as_dict(self, threshold: int) -> dict:
        return {"z1": str(self.point.z1), "z2": str(self.point.z2),
                "valuation": _num(self.valuation_floor), "absprec": _num(self.absprec),
                "digits_lost": _num(self.digits_lost), "exact_zero": self.value.is_exact_zero(),
                "value": self.value.digit_string(), "pass": self.passes(threshold)}


def _num(x):
    return "inf" if x == INF else int(x)


class KimEvaluator:
    """Shares the p-adic dictionary values and the resultant program across points."""

    def __init__(self, config: RunConfig = RunConfig(), program: ResultantProgram | None = None):
        self.config = config
        self.ctx = PadicContext(config.p, config.precision)
        self.program = program or default_program()

    @cached_property
    def dictionary(self):
        return build_period_dictionary(self.ctx)

    @cached_property
    def weight(self) -> int:
        return homogeneity_weight(self.program)

    @cached_property
    def lyndon_values(self) -> dict:
        ev = PeriodEvaluator(self.ctx)
        p = Fraction(self.ctx.p)
        out = {}
        for w, poly in self.dictionary.entries.items():
            v = ev(poly)
            if w == ("sigma",) and v.is_zero():
                raise ZeroDivisionError("zeta_p(3) vanishes to the working precision")
            out[w] = v / p ** G.half_weight(w)
        return out

    def evaluate(self, point: IntegralPoint) -> KimEvaluation:
        point = point if isinstance(point, IntegralPoint) else IntegralPoint(*point)
        p = Fraction(self.ctx.p)
        hw = {lam.name: lam.half_weight for lam in coordinates(4)}
        coords = {k: v / p ** hw[k] for k, v in albanese_values(point, self.ctx).items()}
        value = evaluate_F(self.lyndon_values, coords, one=self.ctx.one(), program=self.program,
                           pivot_key=valuation_pivot, strip_check=self._strip_check, exhausted=exhausted_bound)
        return KimEvaluation(point, value, value.valuation(), is_integral(point), value.absprec(),
                             self.config.precision)

    def _strip_check(self, idx, low):
        for c in low:
            if c.valuation() < self.config.threshold:
                raise ArithmeticError(f"stripped coefficient of p{idx} has valuation {c.valuation()}")


def control_points(config: RunConfig, count: int | None = None, height: int = 40) -> list[IntegralPoint]:
    """Seeded random non-integral points with good reduction at p."""
    rng = random.Random(config.seed)
    count = config.controls if count is None else count
    out: list[IntegralPoint] = []
    seen = set()
    while len(out) < count:
        pair = []
        for _ in range(2):
            while True:
                a, b = rng.randint(1, height), rng.randint(1, height)
                if gcd(a, b) == 1:
                    break
            pair.append(Fraction(rng.choice((-1, 1)) * a, b))
        pt = IntegralPoint(*pair)
        if pt in seen or is_integral(pt) or reduction_defect(pt, config.p):
            continue
        seen.add(pt)
        out.append(pt)
    return out


_WORKER: KimEvaluator | None = None


def _init_worker(config: RunConfig):
    global _WORKER
    _WORKER = KimEvaluator(config)


def _evaluate_in_worker(point: IntegralPoint) -> KimEvaluation:
    return _WORKER.evaluate(point)


def evaluate_points(points, config: RunConfig, evaluator: KimEvaluator | None = None) -> tuple[list, list]:
    """Evaluate good-reduction points; returns (evaluations, bad-reduction records)."""
    good, bad = [], []
    for pt in points:
        why = reduction_defect(pt, config.p)
        if why:
            bad.append({"z1": str(pt.z1), "z2": str(pt.z2), "reason": why})
        else:
            good.append(pt)
    if config.jobs > 1 and len(good) > 1:
        with ProcessPoolExecutor(config.jobs, initializer=_init_worker, initargs=(config,)) as pool:
            results = list(pool.map(_evaluate_in_worker, good))
    else:
        evaluator = evaluator or KimEvaluator(config)
        results = [evaluator.evaluate(pt) for pt in good]
    return results, bad


@dataclass
class Report:
    config: RunConfig
    certification: dict
    dictionary_sha: str
    weight: int
    points: list
    bad_reduction: list
    controls: list
    warnings: list = field(default_factory=list)

    @property
    def threshold(self) -> int:
        return self.config.threshold

    @property
    def points_pass(self) -> bool:
        return all(e.passes(self.threshold) for e in self.points)

    @property
    def control_median(self):
        if not self.controls:
            return None
        return statistics.median(e.valuation_floor for e in self.controls)

    @property
    def controls_pass(self) -> bool:
        return self.control_median is None or self.control_median <= 3

    @property
    def overall_pass(self) -> bool:
        return self.points_pass and self.controls_pass

    def as_dict(self) -> dict:
        t = self.threshold
        med = self.control_median
        return {
            "config": self.config.echo(),
            "certification": self.certification,
            "dictionary_sha": self.dictionary_sha,
            "homogeneity_weight": self.weight,
            "threshold": t,
            "points": [e.as_dict(t) for e in self.points],
            "bad_reduction": self.bad_reduction,
            "controls": {"points": [e.as_dict(t) for e in self.controls],
                         "median_valuation": None if med is None else _num(med),
                         "pass": self.controls_pass},
            "max_digits_lost": max((_num(e.digits_lost) for e in self.points + self.controls), default=0),
            "warnings": self.warnings,
            "overall_pass": self.overall_pass,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def report(results, config: RunConfig, controls=(), bad_reduction=(), evaluator: KimEvaluator | None = None) -> Report:
    evaluator = evaluator or KimEvaluator(config)
    warnings = []
    if not results:
        warnings.append("no points evaluated; overall_pass holds vacuously")
    prog = evaluator.program
    return Report(config, {"d": list(prog.d), "k": list(prog.k)}, evaluator.dictionary.sha256(),
                  evaluator.weight, list(results), list(bad_reduction), list(controls), warnings)


def run(config: RunConfig = RunConfig(), points=None, with_controls: bool = True) -> Report:
    """Evaluate F at the integral points (default: all of Y(Z[1/6])) and at seeded controls."""
    evaluator = KimEvaluator(config)
    pts = enumerate_y_points() if points is None else list(points)
    results, bad = evaluate_points(pts, config, evaluator)
    ctrl = evaluate_points(control_points(config), config, evaluator)[0] if with_controls else []
    rep = report(results, config, ctrl, bad, evaluator)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(rep.to_json())
    return rep


def report_digest(rep: Report) -> str:
    return hashlib.sha256(rep.to_json().encode()).hexdigest()


def padic_kernel_spot_check(config: RunConfig = RunConfig(), trials: int = 3, program: ResultantProgram | None = None):
    """Valuations of F at random p-adic cocycle points (unit inputs); each should reach the threshold."""
    from .geometric import DEFAULT_CONFIG, LYNDON, theta_coordinates

    ctx = PadicContext(config.p, config.precision)
    rng = random.Random(config.seed)
    program = program or default_program()

    def unit():
        while True:
            x = rng.randrange(ctx.modulus)
            if x % ctx.p:
                return ctx(x)

    out = []
    for _ in range(trials):
        lyn = {w: unit() for w in LYNDON}
        seeds = {k: unit() for k in DEFAULT_CONFIG.seed_keys()}
        coords = theta_coordinates(lyn, seeds, one=ctx.one())
        value = evaluate_F(lyn, coords, one=ctx.one(), program=program,
                           pivot_key=valuation_pivot, exhausted=exhausted_bound)
        out.append(value.valuation())
    return out
