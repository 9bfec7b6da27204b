import json

import pytest

from m05kim.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kernel_check(capsys):
    code, out, _ = run_cli(capsys, "geom", "kernel-check", "--trials", "3", "--json")
    assert code == 0
    assert json.loads(out)["all_zero"] is True


def test_certify(capsys):
    code, out, _ = run_cli(capsys, "geom", "certify", "--trials", "2", "--json")
    assert code == 0 and json.loads(out)["d"] == [2, 2, 2]


def test_dictionary(capsys, tmp_path):
    path = tmp_path / "dict.json"
    code, out, _ = run_cli(capsys, "arith", "dictionary", "--out", str(path))
    assert code == 0 and len(out.strip()) == 64
    assert len(json.loads(path.read_text())) == 11


def test_dictionary_reference_constants_fail(capsys):
    code, _, err = run_cli(capsys, "arith", "dictionary", "--constants", "reference")
    assert code == 1 and "tau.tau.upsilon.upsilon" in err


def test_padic_commands(capsys):
    assert run_cli(capsys, "padic", "li", "--n", "2", "--z", "1/2", "--p", "13")[0] == 0
    code, out, _ = run_cli(capsys, "padic", "zeta", "--p", "13", "--prec", "10")
    assert code == 0 and out.startswith("13^")
    code, out, _ = run_cli(capsys, "padic", "reconstruct", "--p", "13", "--value=-7/9")
    assert out.strip() == "-7/9"
    code, out, _ = run_cli(capsys, "padic", "reconstruct", "--p", "13", "--digits", "5", "--valuation", "2")
    assert out.strip() == "845"


def test_padic_domain_error(capsys):
    code, _, err = run_cli(capsys, "padic", "li", "--n", "2", "--z", "1/13", "--p", "13")
    assert code == 2 and err.startswith("error:")


def test_bad_rational_is_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["padic", "li", "--n", "2", "--z", "abc", "--p", "13"])


def test_points_enumerate(capsys):
    code, out, _ = run_cli(capsys, "points", "enumerate", "--oracle")
    doc = json.loads(out)
    assert (doc["x_count"], doc["y_count"]) == (21, 120)


def test_kim_evaluate_point(capsys):
    code, out, _ = run_cli(capsys, "kim", "evaluate", "--point", "3", "1/2")
    doc = json.loads(out)
    assert code == 0 and doc["points"][0]["pass"] is True


def test_kim_evaluate_with_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 13, "precision": 40, "slack": 0}))
    code, out, _ = run_cli(capsys, "kim", "evaluate", "--point", "-2", "-2", "--config", str(cfg))
    assert code == 1 and json.loads(out)["threshold"] == 40


def test_kim_config_error(capsys):
    code, _, err = run_cli(capsys, "kim", "evaluate", "--point", "3", "1/2", "--p", "3")
    assert code == 2 and "6" in err
