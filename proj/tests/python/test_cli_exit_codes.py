import json
import os
import subprocess

import pytest

CLI = os.environ.get("CANTOR_CLI", "cantor")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_ok_json():
    r = run("dim")
    assert r.returncode == 0
    assert json.loads(r.stdout)["records"][0]["kind"] == "gamma"


def test_digits_output():
    r = run("construct", "--tau", "3", "--format", "digits")
    assert r.returncode == 0
    assert r.stdout == "p=3 alphabet=0,2 start=1\n2002\n"


def test_csv_output():
    r = run("khintchine", "--psi", "ceil:a=1,b=0", "--nmax", "2", "--format", "csv")
    assert r.returncode == 0
    assert r.stdout.splitlines()[0].startswith("kind,")


@pytest.mark.parametrize(
    "args",
    [
        ["nosuch"],
        ["construct", "--stages", "two"],
        ["exponent", "--tau", "3", "--liouville", "24"],
        ["dim", "--format", "xml"],
    ],
)
def test_usage_errors(args):
    assert run(*args).returncode == 2


@pytest.mark.parametrize(
    "args",
    [
        ["construct", "--tau", "3", "--c", "1/3"],
        ["exponent", "--psi", "pow:tau=2"],
        ["dim", "--alphabet", "0,1,2"],
        ["khintchine", "--psi", "ceil:a=1/2,b=0"],
        ["cf", "--x", "[1,2/[0,1]"],
    ],
)
def test_precondition_errors(args):
    r = run(*args)
    assert r.returncode == 3
    assert r.stderr.strip()


def test_report_and_emit_files(tmp_path):
    report = tmp_path / "r.json"
    digits = tmp_path / "d.txt"
    r = run("construct", "--tau", "3", "--report", str(report), "--emit", str(digits))
    assert r.returncode == 0
    assert json.loads(report.read_text())["metadata"]["subcommand"] == "construct"
    assert digits.read_text() == "p=3 alphabet=0,2 start=1\n2002\n"
    # four digits certify a single partial quotient: too few for an estimate
    assert run("exponent", "--digits", str(digits)).returncode == 3
    r = run("construct", "--tau", "3", "--stages", "4", "--emit", str(digits))
    assert r.returncode == 0
    r = run("exponent", "--digits", str(digits))
    assert r.returncode == 0
    assert json.loads(r.stdout)["records"][-1]["kind"] == "tau"


def test_deterministic():
    a = run("construct", "--tau", "5/2", "--stages", "4")
    b = run("construct", "--tau", "5/2", "--stages", "4")
    assert a.stdout == b.stdout


SCHEMA = os.path.join(os.path.dirname(__file__), "..", "..", "docs", "report.schema.json")


@pytest.mark.parametrize(
    "args",
    [
        ["dim", "--f", "gamma:k=2", "--psi", "ceil:a=1,b=0", "--nmax", "4"],
        ["cf", "--x", "[2,0,2]/[0,0,0,1]"],
        ["fold", "--x", "[2]/[0,1]", "--t", "[0,1]"],
        ["measure", "--cylinders", "20", "022", "--with", "2", "--op", "intersect"],
        ["khintchine", "--psi", "ceil:a=1,b=1", "--nmax", "4", "--bc-max", "50"],
        ["construct", "--tau", "5/2", "--stages", "4"],
        ["exponent", "--liouville", "36"],
    ],
)
def test_reports_match_schema(args):
    jsonschema = pytest.importorskip("jsonschema")
    with open(SCHEMA) as fh:
        schema = json.load(fh)
    r = run(*args)
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    jsonschema.validate(doc, schema)
    # exact values travel as num/den strings, decimals only under "approx"
    for rec in doc["records"]:
        for key in ("measure", "value", "formula", "estimate"):
            if isinstance(rec.get(key), str) and key != "value":
                assert "/" in rec[key]
            assert not isinstance(rec.get(key), float)
