"""Command-line contract: parsing, formats, exit codes, determinism."""

import json

import pytest

from kleinsail.cli import EXIT_PARSE, main, parse_surd
from kleinsail.quadratic import QuadraticSurd

B_JSON = "[[0,1,0],[2,0,1],[-1,1,0]]"


def run_cli(capsysbinary, *argv):
    code = main(list(argv))
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err


def test_parse_surd_forms():
    assert parse_surd("(0+sqrt(2))/1") == QuadraticSurd(0, 1, 2)
    assert parse_surd("( -1 + sqrt(13) ) / 2") == QuadraticSurd(-1, 2, 13)
    s = parse_surd("(1-sqrt(5))/2")
    assert s.value() == QuadraticSurd(-1, -2, 5).value()
    with pytest.raises(Exception):
        parse_surd("sqrt(2)")


def test_cf1d_json_output(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "cf1d", "(0+sqrt(2))/1")
    assert code == 0
    doc = json.loads(out)
    assert doc["period"] == ["2"]
    assert doc["palindrome"]["cyclic_palindrome"] is True
    assert doc["witnesses"]["trace_zero"]["status"] == "found"
    # all numbers are strings
    assert isinstance(doc["witnesses"]["trace_zero"]["height"], str)


def test_cf1d_inline_json(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "cf1d", "--json", '{"P":1,"Q":2,"D":5}')
    assert code == 0
    assert json.loads(out)["period"] == ["1"]


def test_cf1d_parse_error(capsysbinary):
    code, _, err = run_cli(capsysbinary, "cf1d", "bogus")
    assert code == EXIT_PARSE
    assert b"cannot parse" in err


def test_cf1d_deterministic(capsysbinary):
    _, out1, _ = run_cli(capsysbinary, "cf1d", "(0+sqrt(7))/1")
    _, out2, _ = run_cli(capsysbinary, "cf1d", "(0+sqrt(7))/1")
    assert out1 == out2


def test_sail2d_svg(capsysbinary):
    code, out, _ = run_cli(
        capsysbinary, "sail2d", "--matrix", "[[1,1],[1,0]]", "--cone", "++", "--count", "6"
    )
    assert code == 0
    assert out.startswith(b"<?xml")
    assert b"<polyline" in out


def test_sail2d_json(capsysbinary):
    code, out, _ = run_cli(
        capsysbinary,
        "sail2d",
        "--matrix",
        "[[1,1],[1,0]]",
        "--cone",
        "++",
        "--count",
        "4",
        "--format",
        "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 4


def test_sail2d_not_hyperbolic(capsysbinary):
    code, _, _ = run_cli(capsysbinary, "sail2d", "--matrix", "[[0,-1],[1,0]]")
    assert code == 3


def test_sail3d_off_and_json(capsysbinary):
    code, out, _ = run_cli(
        capsysbinary, "sail3d", B_JSON, "--radius", "4", "--format", "off"
    )
    assert code == 0
    assert out.startswith(b"OFF\n")
    code, out, _ = run_cli(capsysbinary, "sail3d", B_JSON, "--radius", "4")
    assert code == 0
    assert json.loads(out)["vertices"]


def test_sail3d_empty_patch(capsysbinary):
    code, _, _ = run_cli(capsysbinary, "sail3d", B_JSON, "--radius", "0")
    assert code == 4


def test_sail3d_not_hyperbolic(capsysbinary):
    code, _, _ = run_cli(
        capsysbinary, "sail3d", "[[1,0,0],[0,1,0],[0,0,1]]"
    )
    assert code == 3


def test_dirichlet(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "dirichlet", B_JSON)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["generators"]) == 2
    assert doc["torsion"] == [["-1", "0", "0"], ["0", "-1", "0"], ["0", "0", "-1"]]


def test_symmetry_accepts_and_rejects(capsysbinary):
    code, out, _ = run_cli(
        capsysbinary, "symmetry", B_JSON, "--g", "[[1,0,0],[0,0,1],[0,-1,-1]]"
    )
    assert code == 0
    assert json.loads(out)["kind"] == "palindromic"
    code, out, _ = run_cli(
        capsysbinary, "symmetry", B_JSON, "--g", "[[1,1,0],[0,1,0],[0,0,1]]"
    )
    assert code == 1
    assert json.loads(out)["symmetry"] is False


def test_theorem_exit_codes(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "theorem", B_JSON)
    assert code == 0
    doc = json.loads(out)
    assert doc["found"] is True and doc["condition"] == "trace_zero"
    # conclusive negative: non-Galois cubic
    code, out, _ = run_cli(
        capsysbinary, "theorem", "[[0,0,-1],[1,0,4],[0,1,0]]"
    )
    assert code == 1
    # forced inconclusive at depth 0
    code, out, _ = run_cli(capsysbinary, "theorem", B_JSON, "--depth", "0")
    assert code == 5


def test_verify_named_suite(capsysbinary):
    code, out, _ = run_cli(capsysbinary, "verify", "galois-reversal")
    assert code == 0
    assert b"criterion 1" in out and b"PASS" in out


def test_verify_unknown_suite(capsysbinary):
    code, _, err = run_cli(capsysbinary, "verify", "nonsense")
    assert code == EXIT_PARSE
    assert b"unknown suite" in err


def test_output_file(tmp_path, capsysbinary):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(
        capsysbinary, "cf1d", "(0+sqrt(3))/1", "--output", str(target)
    )
    assert code == 0
    assert out == b""
    assert json.loads(target.read_text())["period"] == ["1", "2"]
