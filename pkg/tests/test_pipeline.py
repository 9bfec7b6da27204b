import json
from fractions import Fraction

import pytest

from m05kim.padic import PadicContext, padic_log
from m05kim.pipeline import (X_POINTS, BadReduction, IntegralPoint, KimEvaluator, RunConfig, albanese_values,
                             control_points, enumerate_x_points, enumerate_y_points, evaluate_points, is_integral,
                             is_six_unit, padic_kernel_spot_check, reduction_defect, report, report_digest, run,
                             x_points_oracle, y_points_oracle)
from m05kim.polylog import padic_li

CONFIG = RunConfig()


@pytest.fixture(scope="module")
def evaluator():
    return KimEvaluator(CONFIG)


def test_x_points():
    xs = enumerate_x_points()
    assert len(xs) == 21 and len(set(xs)) == 21
    assert xs == x_points_oracle()
    assert all(is_six_unit(x) and is_six_unit(1 - x) for x in X_POINTS)


def test_x_points_closed_under_the_anharmonic_group():
    xs = set(X_POINTS)
    for x in xs:
        assert 1 / x in xs and 1 - x in xs


def test_y_points():
    ys = enumerate_y_points()
    assert len(ys) == 120
    assert ys == y_points_oracle()
    assert sorted(pt.swapped() for pt in ys) == ys
    assert all(is_integral(pt) for pt in ys)


@pytest.mark.parametrize("pt,expected", [
    ((Fraction(1, 2), Fraction(1, 2)), True),
    ((-1, -1), False),
    ((9, Fraction(8, 9)), False),
    ((2, Fraction(-1, 2)), True),
    ((5, 7), False),
])
def test_membership(pt, expected):
    assert (IntegralPoint(*pt) in enumerate_y_points()) == expected
    assert is_integral(IntegralPoint(*pt)) == expected


def test_reduction_defects():
    assert reduction_defect(IntegralPoint(6, 11), 13) == "z1*z2 = 66 is congruent to 1 mod 13"
    assert reduction_defect(IntegralPoint(13, 2), 13).startswith("z1 = 13 is not")
    assert reduction_defect(IntegralPoint(3, Fraction(1, 2)), 13) is None
    assert all(reduction_defect(pt, 13) is None for pt in enumerate_y_points())
    # z and 1 - z are 6-units, so no integral point can meet 0 or 1 modulo a prime above 3
    assert all(reduction_defect(pt, q) is None for q in (5, 7, 11) for pt in enumerate_y_points())


def test_albanese_values():
    ctx = PadicContext(13, 20)
    pt = IntegralPoint(3, Fraction(1, 2))
    vals = albanese_values(pt, ctx)
    assert len(vals) == 14
    assert vals["e1"] == padic_log(ctx(3))
    assert vals["e12"] == padic_li(1, ctx(Fraction(3, 2)))
    assert vals["e11"] == -padic_log(ctx(-2))
    assert vals["e22e2^3"] == padic_li(4, ctx(Fraction(1, 2)))
    with pytest.raises(BadReduction):
        albanese_values(IntegralPoint(6, 11), ctx)


def test_config_validation():
    for bad in ({"p": 3}, {"p": 9}, {"slack": 40}, {"slack": -1}, {"precision": 4, "slack": 0}):
        with pytest.raises(ValueError):
            RunConfig(**bad)
    cfg = RunConfig.from_json('{"p": 7, "precision": 30, "slack": 10, "ignored": 1}')
    assert (cfg.p, cfg.threshold) == (7, 20)


def test_integral_point_vanishes(evaluator):
    e = evaluator.evaluate(IntegralPoint(3, Fraction(1, 2)))
    assert e.is_integral
    assert e.valuation_floor >= 25
    assert e.passes(CONFIG.threshold)
    assert e.digits_lost <= CONFIG.slack


def test_control_point_does_not_vanish(evaluator):
    e = evaluator.evaluate(IntegralPoint(5, 7))
    assert not e.is_integral
    assert e.valuation_floor <= 3


def test_evaluation_is_deterministic(evaluator):
    pt = IntegralPoint(Fraction(-1, 3), Fraction(3, 4))
    a, b = evaluator.evaluate(pt), KimEvaluator(CONFIG).evaluate(pt)
    assert a.value.digit_string() == b.value.digit_string()


def test_zero_slack_fails_and_reports_the_loss():
    cfg = RunConfig(slack=0)
    rep = run(cfg, [IntegralPoint(-2, -2)], with_controls=False)
    (e,) = rep.points
    assert not rep.points_pass
    assert e.valuation_floor < cfg.threshold
    assert e.digits_lost > 0
    assert rep.as_dict()["max_digits_lost"] == e.digits_lost


def test_bad_reduction_points_are_listed():
    results, bad = evaluate_points([IntegralPoint(6, 11)], CONFIG)
    assert results == [] and bad[0]["reason"].endswith("mod 13")


def test_empty_point_list_is_vacuous():
    rep = run(CONFIG, [], with_controls=False)
    assert rep.overall_pass
    assert rep.warnings == ["no points evaluated; overall_pass holds vacuously"]


def test_controls():
    ctl = control_points(CONFIG)
    assert len(ctl) == 24 and len(set(ctl)) == 24
    assert not any(is_integral(pt) for pt in ctl)
    assert ctl == control_points(CONFIG)
    assert control_points(RunConfig(seed=1)) != ctl


def test_report_shape_and_digest(evaluator, tmp_path):
    out = tmp_path / "rep.json"
    cfg = RunConfig(output=str(out), controls=2)
    rep = run(cfg, [IntegralPoint(2, Fraction(-1, 2)), IntegralPoint(6, 11)])
    doc = json.loads(out.read_text())
    assert set(doc) == {"config", "certification", "dictionary_sha", "homogeneity_weight", "threshold", "points",
                        "bad_reduction", "controls", "max_digits_lost", "warnings", "overall_pass"}
    assert doc["homogeneity_weight"] == 324
    assert doc["certification"] == {"d": [2, 2, 2], "k": [0, 0, 0]}
    assert len(doc["points"]) == 1 and len(doc["bad_reduction"]) == 1
    assert doc["overall_pass"] is True
    assert report_digest(rep) == report_digest(run(RunConfig(controls=2, output=None),
                                                   [IntegralPoint(2, Fraction(-1, 2)), IntegralPoint(6, 11)]))


def test_report_from_results(evaluator):
    rep = report([], CONFIG, evaluator=evaluator)
    assert rep.control_median is None and rep.controls_pass


def test_parallel_matches_serial():
    pts = [IntegralPoint(3, Fraction(1, 2)), IntegralPoint(Fraction(1, 2), 3)]
    serial = run(RunConfig(), pts, with_controls=False)
    parallel = run(RunConfig(jobs=2), pts, with_controls=False)
    assert [e.value.digit_string() for e in serial.points] == [e.value.digit_string() for e in parallel.points]


def test_padic_kernel_spot_check():
    vals = padic_kernel_spot_check(RunConfig(precision=30, slack=10), trials=2)
    assert all(v >= 20 for v in vals)


@pytest.mark.parametrize("pt", [IntegralPoint(3, Fraction(1, 2)), IntegralPoint(-8, Fraction(-1, 2))])
def test_albanese_mixed_tower_is_the_product_tower(pt):
    ctx = PadicContext(13, 20)
    here = albanese_values(pt, ctx)
    there = albanese_values(IntegralPoint(pt.product, pt.z2), ctx)
    names = ["e12", "e12(e1+e2)", "e12(e1+e2)^2", "e12(e1+e2)^3"]
    others = ["e11", "e11e1", "e11e1^2", "e11e1^3"]
    for a, b in zip(names, others):
        assert here[a] == there[b]
