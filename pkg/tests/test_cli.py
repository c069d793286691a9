import io
import json
import subprocess
import sys

import pytest

from jetcalc.cli import main
from jetcalc.diffpoly import get_jet_limit
from jetcalc.textio import parse_expression
from jetcalc.textio.jsonio import from_json, validate_document


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_process(*argv):
    return subprocess.run([sys.executable, "-m", "jetcalc", *argv],
                          capture_output=True, check=False)


def test_classify_even_homogeneity():
    code, out = run("classify", "4", "W")
    assert code == 0
    assert out.splitlines()[0] == "point symmetry: yes; divergence: NO (defect 2*y4); variational: NO"


def test_classify_odd_order():
    code, out = run("classify", "3", "W")
    assert code == 0
    assert out.strip() == "point symmetry: yes; divergence: yes; variational: n/a (odd order)"


def test_classify_with_custom_lagrangian():
    code, out = run("classify", "4", "V1", "--lagrangian", "1/2*y2^2")
    assert code == 0
    assert out.strip().endswith("variational: yes")


def test_first_integral():
    code, out = run("first-integral", "3", "W")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "y*y2 - 1/2*y1^2"
    assert lines[1].startswith("verified:")


def test_first_integral_not_a_symmetry():
    code, _ = run("first-integral", "4", "W")
    assert code == 2


def test_equation_and_lagrangian():
    _, out = run("equation", "4", "--general-q")
    assert parse_expression(out.strip()) == parse_expression(
        "y4 + 10*q1*y1 + 10*q*y2 + 3*y*(3*q^2 + q2)")
    _, out = run("lagrangian", "6")
    assert out.strip() == "-1/2*y3^2"
    _, out = run("lagrangian", "6", "--format", "latex")
    assert out.strip() == "-\\frac{1}{2} y_{3}^{2}"


def test_symmetries_lists_frame():
    code, out = run("symmetries", "5")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 9
    assert lines[-1].startswith("H_5")


@pytest.mark.parametrize("argv", [
    ["classify", "4", "V5"],
    ["classify", "4", "K"],
    ["classify", "3", "W", "--lagrangian", "y1^2"],
    ["equation", "3", "--general-q"],
    ["lagrangian", "5"],
    ["verify", "--max-order", "13"],
    ["classify", "4", "W", "--jet-limit", "3"],
    ["equation", "x"],
    ["nonsense"],
    [],
])
def test_usage_errors_exit_2(argv):
    code, _ = run(*argv)
    assert code == 2


def test_jet_limit_is_scoped_to_the_call():
    before = get_jet_limit()
    run("equation", "4", "--jet-limit", "10")
    assert get_jet_limit() == before


def test_verify_text_and_exit_code():
    code, out = run("verify", "--max-order", "5")
    assert code == 0
    assert out.splitlines()[-1].endswith("0 FAIL")


def test_verify_json_and_out_file(tmp_path):
    path = tmp_path / "report.json"
    code, out = run("verify", "--max-order", "4", "--format", "json", "--out", str(path))
    assert code == 0
    assert path.read_text().strip() == out.strip()
    report = from_json(out)
    assert report.passed


def test_verify_extrapolation_is_labelled():
    code, out = run("verify", "--max-order", "9", "--ceiling", "9")
    assert code == 0
    assert "EXTRAPOLATION" in out


def test_selftest():
    code, out = run("selftest", "--cases", "20", "--seed", "3")
    assert code == 0
    assert len(out.splitlines()) == 5


@pytest.mark.parametrize("argv", [
    ["equation", "6", "--general-q"],
    ["lagrangian", "4"],
    ["symmetries", "4"],
    ["classify", "4", "a2*V2 + gamma*H"],
    ["classify", "5", "G"],
    ["first-integral", "4", "alpha*F + beta*G + gamma*H"],
    ["verify", "--max-order", "4"],
    ["selftest", "--cases", "10"],
])
def test_json_output_validates(argv):
    code, out = run(*argv, "--format", "json")
    assert code == 0
    validate_document(json.loads(out))


def test_global_flags_before_command():
    code, out = run("--format", "json", "equation", "3")
    assert code == 0
    assert json.loads(out)["type"] == "Equation"


@pytest.mark.parametrize("argv", [
    ["verify", "--max-order", "6", "--format", "json"],
    ["selftest", "--cases", "25", "--seed", "11"],
    ["first-integral", "8", "alpha*F + beta*G + gamma*H", "--format", "latex"],
])
def test_byte_identical_reruns(argv):
    first = run_process(*argv)
    second = run_process(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout
