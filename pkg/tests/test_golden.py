"""Byte-exact golden outputs: catches accidental drift in the rendering
order, coefficient format, or JSON layout."""

import os

from lieconformal import cli

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

VIR = """
[algebra]
generators = L
grades = 0
p_00 = d + 2*l

[module M]
basis = v
action_0 = d + 2*l
"""


def _golden_bytes(name):
    with open(os.path.join(GOLDEN, name), "rb") as fh:
        return fh.read()


def test_check_algebra_golden(tmp_path):
    spec = tmp_path / "vir.lca"
    spec.write_text(VIR)
    out = tmp_path / "out.json"
    assert cli.run(["check-algebra", str(spec), "--json", str(out)]) == 0
    assert out.read_bytes() == _golden_bytes("check_algebra_vir.json")


def test_snf_golden(tmp_path):
    out = tmp_path / "out.json"
    assert cli.run(["snf", "--matrix", "d,1;0,d", "--json", str(out)]) == 0
    assert out.read_bytes() == _golden_bytes("snf_jordan.json")


def test_weights_golden(tmp_path):
    spec = tmp_path / "vir.lca"
    spec.write_text(VIR)
    out = tmp_path / "out.json"
    assert cli.run([
        "weights", str(spec), "--module", "M", "--degree", "3", "--json", str(out)
    ]) == 0
    assert out.read_bytes() == _golden_bytes("weights_vir.json")
