import json
import math
import re

import pytest

import ellipx.main
from ellipx.main import join_option_values, run_cli


def test_join_option_values():
    assert join_option_values(["eval", "--u", "0.5", "--m-re=-2", "--m-im", "-0.5", "--debug"]) == \
        ["eval", "--u=0.5", "--m-re=-2", "--m-im=-0.5", "--debug"]
    assert join_option_values(["spectral", "--eigen", "--n-max", "8"]) == ["spectral", "--eigen", "--n-max=8"]


def test_usage_errors():
    assert run_cli([]) == 2
    assert run_cli(["plot"]) == 2
    assert run_cli(["profile", "--u", "1.5"]) == 2
    assert run_cli(["region", "--u", "0.7", "--window", "0,1,0", "--step", "0.1"]) == 2


def test_eval_at_zero(capsys):
    assert run_cli(["eval", "--u", "0.5", "--m-re", "0", "--m-im", "0"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["sn"]["re"] == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert out["K"]["re"] == pytest.approx(math.pi / 2, abs=1e-15)
    assert out["sigma"] == pytest.approx(math.sqrt(0.5), abs=1e-15)


def test_eval_at_one_encodes_infinity(capsys):
    assert run_cli(["eval", "--u", "0.3", "--m-re", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["K"]["re"] is None
    assert out["sigma"] == 1.0


def test_eval_on_the_cut(tmp_path):
    out = tmp_path / "eval.json"
    assert run_cli(["eval", "--u", "0.6", "--m-re", "1.5", "--side", "below", "--out", str(out)]) == 0
    result = json.loads(out.read_text())
    assert math.hypot(result["sn"]["re"], result["sn"]["im"]) == pytest.approx(result["sigma"], rel=1e-10)


def test_bad_side_is_a_usage_error():
    assert run_cli(["eval", "--u", "0.6", "--m-re", "0.5", "--side", "above"]) == 2


def test_spectral_json(tmp_path):
    out = tmp_path / "spectral.json"
    assert run_cli(["spectral", "--n-max", "10", "--eigen", "--out", str(out)]) == 0
    result = json.loads(out.read_text())
    assert len(result["v"]) == 10
    assert len(result["residuals"]) == 9
    assert result["rhs_check"]["error"] < 1e-8
    assert len(result["eigenvalues"]) == 10


def test_verify_unknown_suite():
    assert run_cli(["verify", "--suite", "everything"]) == 2


def test_eval_near_zero_parameter(capsys):
    assert run_cli(["eval", "--u", "0.5", "--m-re", "1e-20"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["sn"]["re"] == pytest.approx(math.sqrt(0.5), abs=1e-15)
    assert out["Kprime"]["re"] == pytest.approx(math.log(4) + 10 * math.log(10), rel=1e-14)


def test_eval_limit_at_one_endpoints(capsys):
    assert run_cli(["eval", "--u", "0", "--m-re", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["sigma"] == 0.0
    assert run_cli(["eval", "--u", "2", "--m-re", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["sigma"], out["cn"]) == (0.0, -1.0)


def test_json_floats_have_17_digits(capsys):
    assert run_cli(["eval", "--u", "0.5", "--m-re", "0", "--m-im", "0"]) == 0
    text = capsys.readouterr().out
    assert '"re": 1.5707963267948966e+00' in text
    assert re.search(r'"sigma": 7\.07106781186547\d\de-01\b', text)


def test_malformed_numbers_are_usage_errors():
    assert run_cli(["eval", "--u", "half", "--m-re", "0"]) == 2
    assert run_cli(["spectral", "--n-max", "many"]) == 2


def test_internal_errors_are_not_usage_errors(monkeypatch):
    def broken(**options):
        raise ValueError("internal")

    monkeypatch.setitem(ellipx.main.ACTIONS, "eval", broken)
    with pytest.raises(ValueError):
        run_cli(["eval", "--u", "0.5"])
