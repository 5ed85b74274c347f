import io
import json
import subprocess
import sys

import pytest

from ppcodes import cli, fixtures, pipeline
from ppcodes.errors import BudgetExceeded, TheoremViolation


def run_cli(*args):
    out = io.StringIO()
    code = cli.main(list(args), out=out)
    return code, out.getvalue()


@pytest.fixture
def ex3_path():
    return str(fixtures.input_path("example3"))


def test_csv_output(ex3_path):
    code, text = run_cli("--input", ex3_path, "--format", "csv", "--dmax", "6")
    assert code == 0
    rows = pipeline.parse_csv(text)
    assert [r.H_X for r in rows] == [4, 10, 20, 32, 44, 50]
    assert [r.delta_lower for r in rows] == [20, 3, 1, 1, 1, 1]


def test_ceil_convention(ex3_path):
    _, text = run_cli("--input", ex3_path, "--format", "csv", "--dmax", "2",
                      "--delta-convention", "ceil")
    assert [r.delta_lower for r in pipeline.parse_csv(text)] == [20, 4]


def test_json_output(ex3_path):
    code, text = run_cli("--input", ex3_path, "--format", "json", "--dmax", "3")
    assert code == 0 and json.loads(text)["length"]["kernel_size"] == 10


def test_deterministic_subprocess(ex3_path):
    cmd = [sys.executable, "-m", "ppcodes", "--input", ex3_path, "--format", "json", "--dmax", "8"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_input_errors(tmp_path, ex3_path):
    assert run_cli()[0] == 2
    assert run_cli("--input", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("--input", str(bad))[0] == 2
    bad.write_text(json.dumps({"q": 6, "matrix": [[1, 0], [0, 1]]}))
    assert run_cli("--input", str(bad))[0] == 2
    assert run_cli("--input", ex3_path, "--dmax", "-1")[0] == 2
    assert run_cli("--input", ex3_path, "--kind", "graph")[0] == 2


def test_theorem_violation_exit(monkeypatch, ex3_path):
    def boom(*a, **k):
        raise TheoremViolation("forced")

    monkeypatch.setattr(pipeline, "run", boom)
    assert run_cli("--input", ex3_path)[0] == 3


def test_budget_exits(monkeypatch, ex3_path):
    def boom(*a, **k):
        raise BudgetExceeded("forced", 2, 1)

    monkeypatch.setattr(pipeline, "run", boom)
    assert run_cli("--input", ex3_path)[0] == 4


def test_partial_output_exit(monkeypatch, ex3_path):
    real = pipeline.run

    def partial(*a, **k):
        res = real(*a, **k)
        res.partial = True
        return res

    monkeypatch.setattr(pipeline, "run", partial)
    code, text = run_cli("--input", ex3_path, "--format", "csv", "--dmax", "2")
    assert code == 4 and text.startswith("d,H_X")


def test_fixtures_flag(monkeypatch):
    code, text = run_cli("--fixtures")
    assert code == 0
    assert text.splitlines() == ["example1: ok", "example2: ok", "example3: ok"]


def test_fixtures_flag_reports_mismatch(monkeypatch):
    real = fixtures.load_example

    def corrupted(name):
        c = real(name)
        if name != "example3":
            return c
        rows = [list(r) for r in c.matrix.rows]
        rows[0][0] = 1
        return pipeline.CodeInput(c.q, c.kind, type(c.matrix)(tuple(map(tuple, rows))))

    monkeypatch.setattr(fixtures, "REFERENCE", {"example3": fixtures.REFERENCE["example3"]})
    monkeypatch.setattr(fixtures, "load_example", corrupted)
    code, text = run_cli("--fixtures")
    assert code == 3
    assert "mismatches" in text and "example3 d=" in text
