import csv
import io
import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from minrep.cli import main
from minrep.config import OUTPUT_ENV


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("minrep").joinpath("output_schema.json").read_text())


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_branch_json(capsys, schema):
    code, out, _ = run(["branch", "4", "4", "--split", "4,3,0,1"], capsys)
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schema)
    assert [(r["left"], r["right"]) for r in data["rows"]] == [
        ("pi+{4,3}(-1/2)", "1"), ("pi+{4,3}(1/2)", "sgn")]


def test_branch_text_and_conjecture_mode(capsys):
    code, out, _ = run(["branch", "6", "4", "--split", "3,2,3,2", "--cutoff", "4",
                        "--mode", "conjecture", "--format", "text"], capsys)
    assert code == 0
    assert out.startswith("split ") and "[theorem]" in out


def test_classify(capsys, schema):
    code, out, _ = run(["classify", "4", "4", "--split", "2,2,2,2"], capsys)
    data = json.loads(out)
    jsonschema.validate(data, schema)
    assert code == 0 and data["classification"] == "InfiniteDiscrete"
    _, out, _ = run(["classify", "4", "4", "--split", "1,1,3,3"], capsys)
    assert json.loads(out)["status"] == "conjecture"


def test_usage_errors(capsys):
    code, _, err = run(["branch", "4", "4", "--split", "1,1,1,1"], capsys)
    assert code == 2 and "does not add up" in err
    code, _, err = run(["classify", "3", "2", "--split", "2,1,1,1"], capsys)
    assert code == 2 and "HypothesisViolated" in err
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_verify_runs_and_validates(capsys, schema):
    code, out, _ = run(["verify", "msq"], capsys)
    data = json.loads(out)
    jsonschema.validate(data, schema)
    assert code == 0 and data["passed"] and len(data["rows"]) == 46


def test_verify_failure_exit_code(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"tolerances": {"pullback": 1e-30}}))
    code, out, _ = run(["verify", "pullback", "--config", str(cfg)], capsys)
    assert code == 1 and not json.loads(out)["passed"]


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"colour": "blue"}))
    code, _, _ = run(["classify", "4", "4", "--split", "2,2,2,2", "--config", str(cfg)], capsys)
    assert code == 2


def test_verify_is_deterministic(capsys):
    _, first, _ = run(["verify", "triangular", "--seed", "3"], capsys)
    _, second, _ = run(["verify", "triangular", "--seed", "3"], capsys)
    assert first == second


def test_output_precedence(tmp_path, monkeypatch, capsys):
    env_file, flag_file = tmp_path / "env.json", tmp_path / "flag.json"
    monkeypatch.setenv(OUTPUT_ENV, str(env_file))
    code, out, _ = run(["classify", "4", "4", "--split", "2,2,2,2"], capsys)
    assert code == 0 and out == "" and json.loads(env_file.read_text())["command"] == "classify"
    run(["classify", "4", "4", "--split", "4,0,0,4", "--output", str(flag_file)], capsys)
    assert json.loads(flag_file.read_text())["split"] == "(4,0,0,4)"
    assert json.loads(env_file.read_text())["split"] == "(2,2,2,2)"


def test_tabulate_csv_round_trip(capsys, schema):
    argv = ["tabulate", "m", "--lambda", "1/2:2", "--lambda-p", "1/2:9/2", "--lambda-pp=-1/2:1"]
    _, out, _ = run(argv + ["--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    _, js, _ = run(argv, capsys)
    data = json.loads(js)
    jsonschema.validate(data, schema)
    assert [r["exact"] for r in rows] == [r["exact"] for r in data["rows"]]
    assert rows
    diagonal = [r for r in rows if Fraction(r["lambda_p"]) ==
                Fraction(r["lambda"]) + Fraction(r["lambda_pp"]) + 1]
    assert diagonal and all(r["exact"] == "1" for r in diagonal)


def test_tabulate_skips_undefined_and_marks_poles(capsys):
    _, out, _ = run(["tabulate", "v_pm", "--lambda", "1/2:3/2", "--lambda-p", "0:4",
                     "--lambda-pp=-1/2:1/2"], capsys)
    rows = json.loads(out)["rows"]
    assert rows
    for r in rows:
        e = Fraction(r["lambda_p"]) - Fraction(r["lambda_pp"]) - Fraction(r["lambda"]) - 1
        assert e.denominator == 1  # every Gamma argument is a half-integer
        assert (r["exact"] == "pole") == (r["decimal"] is None)
