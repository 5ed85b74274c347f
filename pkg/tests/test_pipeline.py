import json

import pytest

from ppcodes import fixtures, hilbert, kernels, pipeline, toric
from ppcodes.errors import BudgetExceeded


def ex3_run(**kw):
    code = fixtures.load_example("example3")
    return pipeline.run(pipeline.RunConfig(11, "matrix", **kw), code)


def test_parse_input_kinds():
    code = pipeline.parse_input({"q": 7, "vertices": 3, "edges": [[1, 2], [2, 3]]}, "graph")
    assert code.matrix.rows == ((1, 0), (1, 1), (0, 1))
    code = pipeline.parse_input({"q": 7, "matrix": [[1, 0], [0, 1]]})
    assert code.kind == "matrix" and code.clutter is None
    code = pipeline.parse_input({"q": 9, "vertices": 3, "edges": [[1, 2], [2, 3]]})
    assert code.kind == "clutter"


@pytest.mark.parametrize("data", [
    [], {"matrix": [[1]]}, {"q": "7", "matrix": [[1, 0]]}, {"q": 7, "matrix": [[1, -1]]},
    {"q": 7, "matrix": [[1, 0], [1]]}, {"q": 7, "matrix": [[1.5, 0]]},
    {"q": 7, "vertices": 3, "edges": [[1, 1]]}, {"q": 7, "vertices": 3},
    {"q": 7, "vertices": 3, "edges": [[1, 5], [2, 3]]},
])
def test_parse_input_errors(data):
    with pytest.raises(ValueError):
        pipeline.parse_input(data, "graph" if "vertices" in data else None)


def test_default_range_and_stabilization():
    res = ex3_run()
    assert [r.d for r in res.rows] == list(range(1, 27))  # d < (m-1)(q-2) = 27
    res = ex3_run(d_max=8)
    assert [r.H_X for r in res.rows[5:]] == [50, 50, 50]
    assert [r.singleton for r in res.rows[5:]] == [1, 1, 1]


def test_stable_rows_example2():
    res, mism = fixtures.check_example("example2")
    assert not mism
    for row in res.rows[10:]:
        assert (row.H_X, row.delta_lower, row.singleton) == (512, 1, 1)


def test_csv_round_trip():
    res = ex3_run(d_max=8)
    text = pipeline.to_csv(res)
    assert text.splitlines()[0] == ",".join(pipeline.CSV_COLUMNS)
    assert pipeline.parse_csv(text) == res.rows
    with pytest.raises(ValueError):
        pipeline.parse_csv("a,b\n1,2\n")


def test_missing_values_are_empty(monkeypatch):
    real = hilbert.hilbert_X_tagged

    def limited(X, d, **kw):
        if d >= 3:
            raise BudgetExceeded("test", 1, 0)
        return real(X, d, **kw)

    monkeypatch.setattr(hilbert, "hilbert_X_tagged", limited)
    res = ex3_run(d_max=5)
    assert res.partial and res.profile.interval == (3, 27)
    lines = pipeline.to_csv(res).splitlines()
    assert lines[3] == "3,,20,,1,,,"
    assert pipeline.parse_csv("\n".join(lines))[2].H_X is None


def test_json_and_table():
    res = ex3_run(d_max=6)
    doc = json.loads(pipeline.to_json(res))
    assert doc["length"]["x_size"] == 50 and doc["r_X"] == 6
    assert doc["numerator"] == [1, 3, 6, 10, 12, 12, 6]
    assert doc["rows"][1]["delta_lower_exact"] == "7/2"
    table = pipeline.to_table(res)
    assert "|X| = 50" in table and "b_d" in table
    with pytest.raises(ValueError):
        pipeline.render(res, "xml")


def test_exact_column():
    res = ex3_run(d_max=1, exact_budget=10**8)
    row = res.rows[0]
    assert (row.delta_exact, row.delta_exact_method) == (40, "brute")
    assert fixtures.DERIVED_DISTANCES["example3"][1] == 40


def test_negative_control():
    code = fixtures.load_example("example3")
    rows = [list(r) for r in code.matrix.rows]
    rows[1][1] = 5
    bad = pipeline.CodeInput(11, "matrix", toric.ExponentMatrix(tuple(map(tuple, rows))))
    _, mism = fixtures.check_example("example3", bad)
    assert mism
    assert any(m.d is not None and m.column == "H_X" for m in mism)
    assert "example3" in str(mism[0]) and "expected" in str(mism[0])


@pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")
def test_backends_give_identical_output():
    outs = []
    for b in ("numpy", "numba"):
        code = fixtures.load_example("example3")
        res = pipeline.run(pipeline.RunConfig(11, "matrix", d_max=8), code, backend=b)
        outs.append(pipeline.to_json(res))
    assert outs[0] == outs[1]
