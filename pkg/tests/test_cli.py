import csv
import io
import json

import pytest

from chromsplit import chromatic, cli
from chromsplit.exactpoly import monomial


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_ln_single():
    assert call("ln", "--n", "2") == (0, "2T^4 + T^5\n", "")


@pytest.mark.parametrize("method", ["direct", "recursive", "genfun", "closed", "spectrum"])
def test_ln_each_method(method):
    code, out, _ = call("ln", "--n", "3", "--method", method)
    assert code == 0 and out == "4T^6 + 3T^7 + T^9 + T^10\n"


def test_ln_all_range():
    code, out, err = call("ln", "--n", "0..3", "--method", "all")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert len(lines) == 4 + 5 * 3
    assert "L_3(T) [spectrum] = 4T^6 + 3T^7 + T^9 + T^10" in lines


def test_ln_range_formats():
    code, out, _ = call("ln", "--n", "1..2", "--method", "closed", "--format", "csv")
    assert code == 0 and out == "n,exponent,coefficient\n1,2,1\n2,4,2\n2,5,1\n"


@pytest.mark.parametrize("argv", [
    ["ln", "--n", "-1"],
    ["ln", "--n", "x"],
    ["ln", "--n", "3..1"],
    ["ln", "--n", "0", "--method", "spectrum"],
    ["bogus"],
    ["table", "--max-n", "2", "--format", "xml"],
    ["spectrum", "--n", "0"],
    ["verify", "--max-n", "0"],
    ["epsilon"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert "usage" in capsys.readouterr().err or "error" in err


def test_table_csv_row_count():
    m = 7
    code, out, _ = call("table", "--max-n", str(m), "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "exponent", "coefficient"]
    assert len(rows) - 1 == sum(len(chromatic.l_recursive(n).terms) for n in range(m + 1))
    keys = [(int(r[0]), int(r[1])) for r in rows[1:]]
    assert keys == sorted(keys)


def test_table_json_schema():
    code, out, _ = call("table", "--max-n", "30", "--format", "json")
    data = json.loads(out)
    assert [d["n"] for d in data] == list(range(31))
    assert data[2] == {"n": 2, "poly": {"4": "2", "5": "1"}}
    for d in data:
        assert all(isinstance(k, str) and isinstance(v, str) for k, v in d["poly"].items())
    assert sum(int(v) for v in data[30]["poly"].values()) == 3 ** 29


def test_table_latex_and_text():
    _, out, _ = call("table", "--max-n", "3", "--format", "latex")
    assert "{\\sf L}_{3}(T) = 4T^6 + 3T^7 + T^9 + T^{10}" in out
    _, out, _ = call("table", "--max-n", "1")
    assert out == "L_0(T) = 1\nL_1(T) = T^2\n"


def test_epsilon():
    assert call("epsilon", "--k", "2") == (0, "1 + T + T^3 + T^4\n", "")
    _, out, _ = call("epsilon", "--k", "1", "--format", "json")
    assert json.loads(out) == [{"n": 1, "poly": {"0": "1", "1": "1"}}]


def test_spectrum():
    code, out, _ = call("spectrum", "--n", "2")
    assert code == 0
    assert out.splitlines()[:2] == [
        "S^4 (U(1))_+\tsuspension=4\tranks=1",
        "S^4 (U(0) x U(0))_+\tsuspension=4\tranks=0,0",
    ]
    _, out, _ = call("spectrum", "--n", "3", "--format", "json")
    assert len(json.loads(out)) == 4


def test_eval():
    assert call("eval", "coeff(inv(1 - u), 3)") == (0, "1\n", "")
    code, out, _ = call("eval", "inv(1 - 2*u)", "--trunc", "3")
    assert out == "1 + 2*u + 4*u^2 + 8*u^3 + O(u^4)\n"


@pytest.mark.parametrize("expr", ["1 + ", "inv(eps(1))", "coeff(u, 40)"])
def test_eval_errors_exit_3(expr):
    code, out, err = call("eval", expr)
    assert code == 3 and out == "" and err.startswith("error:")


def test_verify_pass():
    code, out, _ = call("verify", "--max-n", "12")
    assert code == 0
    assert out.splitlines()[-1] == "OK: 65 checks passed for 0 <= n <= 12"


def test_verify_and_ln_all_fail_on_corruption(monkeypatch):
    real = chromatic.epsilon
    monkeypatch.setattr(chromatic, "epsilon", lambda k: real(k) + monomial(1, k * k + 1) if k == 1 else real(k))
    code, out, _ = call("verify", "--max-n", "3")
    assert code == 1
    assert "FAILED" in out.splitlines()[-1]
    code, _, err = call("ln", "--n", "2", "--method", "all")
    assert code == 1 and "disagree at n=2" in err


def test_output_deterministic():
    a = call("table", "--max-n", "10", "--format", "json")
    b = call("table", "--max-n", "10", "--format", "json")
    assert a == b
    assert call("verify", "--max-n", "6", "--workers", "3") == call("verify", "--max-n", "6")
