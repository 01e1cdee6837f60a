import json

import pytest
from click.testing import CliRunner

from mirroralg.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_groebner_file(runner, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("x^2 - y\nx*y - 1\n")
    res = runner.invoke(main, ["groebner", "--input", str(f), "--order", "lex:x>y"])
    assert res.exit_code == 0, res.output
    assert "overall: PASS" in res.output


def test_groebner_empty_input_is_usage_error(runner, tmp_path):
    f = tmp_path / "e.txt"
    f.write_text("")
    res = runner.invoke(main, ["groebner", "--input", str(f), "--order", "lex:x>y"])
    assert res.exit_code == 2
    assert "no polynomials" in res.output


def test_invalid_n_a_is_usage_error(runner):
    res = runner.invoke(main, ["jacobian", "--n", "3", "--a", "5"])
    assert res.exit_code == 2


def test_quantum_cubic_lines(runner):
    res = runner.invoke(main, ["quantum", "cubic"])
    assert res.exit_code == 0
    for text in ("eigenvalues −6 (mult 8), 21 (mult 1)", "lines = 27", "(P+6)³ = 27(P+6)²"):
        assert text in res.output


def test_clifford_hh_reports_graded_center(runner):
    res = runner.invoke(main, ["clifford", "hh", "--n", "1", "--s-max", "3"])
    assert res.exit_code == 0
    assert "HH⁰ = 1 (graded center)" in res.output


def test_json_is_deterministic(runner, tmp_path):
    outs = []
    for k in range(2):
        p = tmp_path / ("q%d.json" % k)
        res = runner.invoke(main, ["--json", str(p), "quantum", "hyperplane", "--n", "4", "--a", "3"])
        assert res.exit_code == 0, res.output
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert data["passed"] is True and "timing" not in data


def test_timing_flag_adds_timing(runner, tmp_path):
    p = tmp_path / "t.json"
    res = runner.invoke(main, ["--timing", "--json", str(p), "clifford", "iso"])
    assert res.exit_code == 0
    assert "timing" in json.loads(p.read_text())


def test_report_all(runner, tmp_path):
    p = tmp_path / "all.json"
    res = runner.invoke(main, ["--json", str(p), "report", "all", "--n", "4", "--a", "3"])
    assert res.exit_code == 0, res.output
    assert "27 small critical points" in res.output
    assert "β³ = 27Tβ²" in res.output
    assert json.loads(p.read_text())["passed"] is True
