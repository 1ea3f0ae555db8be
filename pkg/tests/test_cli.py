import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from rbhier.cli import EXIT_USAGE, main
from rbhier.syntax import parse_function, parse_operator

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out.strip(), err


def schema(name):
    return json.loads((SCHEMAS / f"{name}.v1.json").read_text())


def test_normalize_text_and_latex(capsys):
    assert run(["normalize", "A1 A1"], capsys)[:2] == (0, "x1 A1 - A1 x1")
    code, out, _ = run(["normalize", "A1 A1", "--latex"], capsys)
    assert out == r"x_{1} \int^{x_{1}} - \int^{x_{1}} x_{1}"


def test_normalize_json_round_trips(capsys):
    code, out, _ = run(["normalize", "A1 x1*exp(x1) [[0,2],[3,4]]* A2", "--json"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("normal-form"))
    code, text, _ = run(["normalize", "A1 x1*exp(x1) [[0,2],[3,4]]* A2"], capsys)
    assert parse_operator(text) == parse_operator(run(["normalize", out], capsys)[1])


def test_normalize_strategy_and_budget(capsys):
    code, out, err = run(["normalize", "A3 A2 A1 A3 A2 A1", "--budget", "2"], capsys)
    assert code == 1 and "budget" in err
    code, out, _ = run(["normalize", "A2 A1", "--strategy", "rightmost"], capsys)
    assert code == 0 and parse_operator(out) == parse_operator("A1 A2 - E(2)* A1 A2")


def test_apply(capsys):
    assert run(["apply", "A1 A1", "--to", "1"], capsys)[:2] == (0, "1/2*x1^2")
    code, out, _ = run(["apply", "[[1,1],[0,1]]*", "--to", "x^2"], capsys)
    assert parse_function(out) == parse_function("x1^2 + 2*x1*x2 + x2^2")
    code, out, _ = run(["apply", "A2", "--to", "x1*x2", "--json"], capsys)
    doc = json.loads(out)
    jsonschema.validate(doc, schema("function"))
    code, again, _ = run(["apply", "1", "--to", out], capsys)
    assert parse_function(again) == parse_function("1/2*x1*x2^2")


def test_stdin(capsys, monkeypatch):
    assert run(["normalize", "-"], capsys, "A2 A1", monkeypatch)[:2] == \
        (0, "A1 A2 - [[1,0],[0,0]]* A1 A2")
    assert run(["apply", "A1", "--to", "-"], capsys, "exp(x1)", monkeypatch)[:2] == \
        (0, "-1 + exp(x1)")
    assert run(["apply", "-", "--to", "-"], capsys, "A1", monkeypatch)[0] == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["normalize", "A1 ]"],
    ["normalize", "A0"],
    ["apply", "exp(x1*x2)", "--to", "1"],
    ["apply", "A1", "--to", "exp(x1^2)"],
    ["normalize", '{"terms": 3}'],
    ["normalize", "{not json"],
    ["verify", "--trials", "-1"],
    ["probe", "--strategy", "leftmost"],
])
def test_bad_input_exits_64(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == EXIT_USAGE
    assert err.startswith("rbhier: error")


def test_usage_errors_exit_64(capsys):
    for argv in (["normalize", "A1", "--bogus"], [], ["frobnicate"],
                 ["verify", "--rules", "--axioms"], ["normalize", "A1", "--latex", "--json"]):
        with pytest.raises(SystemExit) as err:
            main(argv)
        assert err.value.code == EXIT_USAGE
    capsys.readouterr()


def test_parse_error_reports_position(capsys):
    _, _, err = run(["normalize", "A1 x1 ]"], capsys)
    assert "line 1, column 7" in err


def test_verify_rules(capsys):
    code, out, _ = run(["verify", "--rules", "--trials", "2", "--max-vars", "3"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("report"))
    assert [r["name"] for r in doc["results"]] == [f"rule {i}" for i in range(1, 10)]
    assert doc["config"]["trials"] == 2


def test_verify_axioms(capsys):
    code, out, _ = run(["verify", "--axioms", "--trials", "2", "--max-vars", "2"], capsys)
    assert code == 0
    names = {r["name"] for r in json.loads(out)["results"]}
    assert {"vertical", "rota_baxter", "coassociativity", "duhamel_square"} <= names


def test_probe(capsys):
    code, out, _ = run(["probe", "--trials", "5", "--seed", "4", "--max-vars", "2"], capsys)
    doc = json.loads(out)
    jsonschema.validate(doc, schema("report"))
    assert code == (0 if doc["summary"]["fail"] == 0 else 2)
    assert len(doc["trials"]) == 5
    again = run(["probe", "--trials", "5", "--seed", "4", "--max-vars", "2"], capsys)[1]
    assert again == out


def test_console_script_installed():
    proc = subprocess.run([sys.executable, "-m", "rbhier.cli", "normalize", "A1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "A1"
    proc = subprocess.run([sys.executable, "-m", "rbhier.cli", "normalize", "A1", "--nope"],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_USAGE
