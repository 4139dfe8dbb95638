import json
import os

import pytest

jsonschema = pytest.importorskip("jsonschema")

from lieconformal import cli

SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "..", "schemas", "report.schema.json")

VIR_SPEC = """
[algebra]
generators = L
grades = 0
p_00 = d + 2*l

[module M]
basis = v
action_0 = d + 2*l
"""

BAD_TWIST = """
[algebra]
builtin = vir_semidirect_current
a = 0
lie = nonabelian2
"""


@pytest.fixture()
def schema():
    with open(SCHEMA_PATH) as fh:
        return json.load(fh)


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def test_check_algebra_pass(tmp_path, schema):
    spec = _write(tmp_path, "vir.lca", VIR_SPEC)
    out = str(tmp_path / "report.json")
    assert cli.run(["check-algebra", spec, "--json", out]) == 0
    payload = _load(out)
    jsonschema.validate(payload, schema)
    assert payload["status"] == "pass"


def test_check_algebra_failure_exit_code(tmp_path, schema):
    spec = _write(tmp_path, "bad.lca", BAD_TWIST)
    out = str(tmp_path / "report.json")
    assert cli.run(["check-algebra", spec, "--json", out]) == 1
    payload = _load(out)
    jsonschema.validate(payload, schema)
    assert payload["status"] == "fail"
    assert any(c["witnesses"] for c in payload["report"]["checks"] if c["status"] == "fail")


def test_spec_error_exit_code(tmp_path):
    spec = _write(tmp_path, "broken.lca", "[algebra]\ngenerators = L\np_00 = d + + l\n")
    assert cli.run(["check-algebra", spec]) == 2
    assert cli.run(["check-algebra", str(tmp_path / "missing.lca")]) == 2


def test_truncation_exit_code(monkeypatch):
    from lieconformal.algebra import TruncationExceeded

    def boom(args):
        raise TruncationExceeded("synthetic")

    parser = cli.build_parser()
    monkeypatch.setattr(cli, "build_parser", lambda: parser)
    args = parser.parse_args(["check-algebra", "unused"])
    monkeypatch.setattr(args, "func", boom, raising=False)
    monkeypatch.setattr(parser, "parse_args", lambda argv: args)
    assert cli.run(["check-algebra", "unused"]) == 3


def test_check_module_and_weights(tmp_path, schema):
    spec = _write(tmp_path, "vir.lca", VIR_SPEC)
    out = str(tmp_path / "mod.json")
    assert cli.run(["check-module", spec, "--module", "M", "--json", out]) == 0
    jsonschema.validate(_load(out), schema)
    out2 = str(tmp_path / "weights.json")
    assert cli.run(["weights", spec, "--module", "M", "--degree", "3", "--json", out2]) == 0
    payload = _load(out2)
    jsonschema.validate(payload, schema)
    weights = {w["weight"]: w["dim"] for w in payload["data"]["weights"]}
    assert weights == {"2": 1, "3": 1, "4": 1, "5": 1}


def test_annih_check(tmp_path, schema):
    spec = _write(tmp_path, "vir.lca", VIR_SPEC)
    out = str(tmp_path / "annih.json")
    assert cli.run(["annih-check", spec, "--depth", "4", "--json", out]) == 0
    jsonschema.validate(_load(out), schema)


def test_solve_and_scan_and_snf(tmp_path, schema):
    out = str(tmp_path / "solve.json")
    assert cli.run([
        "solve-funceq", "--a", "2", "--b", "0",
        "--delta-i", "5", "--c-i", "7", "--delta-j", "5", "--c-j", "7",
        "--degree-bound", "2", "--json", out,
    ]) == 0
    payload = _load(out)
    jsonschema.validate(payload, schema)
    assert payload["data"]["dimension"] == 1

    out2 = str(tmp_path / "scan.json")
    assert cli.run(["scan-a1", "--grid", "2,5/4", "--horizon", "6", "--json", out2]) == 0
    payload = _load(out2)
    jsonschema.validate(payload, schema)
    flags = {r["a1"]: r["admissible"] for r in payload["data"]["results"]}
    assert flags == {"2": True, "5/4": False}

    out3 = str(tmp_path / "snf.json")
    assert cli.run(["snf", "--matrix", "d,1;0,d", "--json", out3]) == 0
    payload = _load(out3)
    jsonschema.validate(payload, schema)
    assert payload["data"]["torsion_invariants"] == ["d^2"]
    assert payload["data"]["free_rank"] == 0


def test_verify_prop36_roundtrip(tmp_path, schema):
    out = str(tmp_path / "rows.json")
    assert cli.run([
        "verify-prop36",
        "--a-samples", "3,1/2,-1,5/2,7/3",
        "--delta-samples", "1,-2,1/3,5/2,4",
        "--json", out,
    ]) == 0
    payload = _load(out)
    jsonschema.validate(payload, schema)
    assert payload["status"] == "pass"
    assert all(r["dimension"] == r["expected_dimension"] for r in payload["data"]["rows"])


def test_json_reports_are_byte_identical(tmp_path):
    spec = _write(tmp_path, "vir.lca", VIR_SPEC)
    first = str(tmp_path / "a.json")
    second = str(tmp_path / "b.json")
    assert cli.run(["check-algebra", spec, "--json", first]) == 0
    assert cli.run(["check-algebra", spec, "--json", second]) == 0
    with open(first, "rb") as fa, open(second, "rb") as fb:
        assert fa.read() == fb.read()
