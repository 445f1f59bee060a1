import json
import subprocess
import sys

import pytest

from icelab import identities
from icelab.cli import main, parse_value
from icelab.icemodel import GENERIC, OMEGA6, monomial


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_example(capsys):
    assert run(capsys, "count", "--class", "qqt", "--size", "6") == (0, "6\n", "")


def test_count_json_and_csv(capsys):
    code, out, _ = run(capsys, "count", "--class", "ht", "--size", "6", "--format", "json")
    assert code == 0 and json.loads(out) == {"class": "ht", "n": 6, "count": 140}
    code, out, _ = run(capsys, "count", "--size", "5", "--format", "csv")
    assert out.splitlines() == ["class,n,count", "u,5,429"]


def test_zfun_example(capsys):
    code, out, _ = run(capsys, "zfun", "--model", "dwbc", "--size", "1", "--param", "x1=1",
                       "--param", "x2=1", "--regime", "omega6")
    # sigma(w^2) = 2w - 1
    assert code == 0 and out == "(-1/1+2/1*w)\n"


def test_zfun_generic_json(capsys):
    code, out, _ = run(capsys, "zfun", "--model", "dwbc", "--size", "1", "--param", "x1=2",
                       "--param", "x2=3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["value"]["field"] == "rational"
    assert doc["value"]["vars"] == ["a"]
    assert doc["value"]["terms"] == [{"exponents": [-2], "coeff": "-1/1"}, {"exponents": [2], "coeff": "1/1"}]


def test_zfun_symbolic_and_tag(capsys):
    args = ["zfun", "--model", "qqt", "--size", "6", "--param", "x1=2", "--param", "x2=3",
            "--param", "y=5/7", "--symbolic", "x", "--regime", "omega6"]
    code, total, _ = run(capsys, *args)
    assert code == 0 and "x^" in total
    code, part, _ = run(capsys, *args, "--tag", "downright")
    assert code == 0 and part != total


def test_enumerate_formats(capsys):
    code, out, _ = run(capsys, "enumerate", "--size", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 7
    assert doc["matrices"][0] == {"n": 3, "rows": [[0, 0, 1], [0, 1, 0], [1, 0, 0]]}
    code, out, _ = run(capsys, "enumerate", "--size", "2", "--format", "csv")
    assert out.splitlines()[0] == "index,m0_0,m0_1,m1_0,m1_1"
    code, out, _ = run(capsys, "enumerate", "--size", "3", "--limit", "2")
    assert out.count("\n\n") == 1


def test_verify_default_json(capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--suite", "counting", "--max-n", "1", "--report", str(rep))
    doc = json.loads(out)
    assert code == 0 and all(r["status"] == "pass" for r in doc)
    assert json.loads(rep.read_text()) == doc


def test_verify_failure_exit_and_witness(capsys, monkeypatch):
    real = identities.check_counting

    def broken(eq, N):
        r = real(eq, N)
        if eq == 4:
            return identities.CheckResult(r.name, False, {"lhs": 6, "rhs": 7})
        return r

    monkeypatch.setattr(identities, "check_counting", broken)
    code, out, _ = run(capsys, "verify", "--suite", "counting", "--format", "text")
    assert code == 1
    assert "FAIL  counting[qqt(4N+2), N=1]" in out and 'witness for counting[qqt(4N+2), N=1]: {"lhs": 6, "rhs": 7}' in out


@pytest.mark.parametrize("argv", [
    ["count", "--class", "diag", "--size", "4"],
    ["count", "--size", "0"],
    ["zfun", "--model", "qt", "--size", "6", "--param", "x1=1"],
    ["zfun", "--model", "dwbc", "--size", "1", "--param", "x1=1"],
    ["zfun", "--model", "dwbc", "--size", "1", "--param", "x1=1", "--param", "x2=1", "--param", "z=1"],
    ["zfun", "--model", "dwbc", "--size", "1", "--param", "x1=0", "--param", "x2=1"],
    ["zfun", "--model", "dwbc", "--size", "1", "--param", "x1=t", "--param", "x2=1"],
    ["zfun", "--model", "qt", "--size", "4", "--param", "x1=2", "--param", "x=3", "--param", "y=5", "--tag", "up"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_budget_exit(capsys, monkeypatch):
    monkeypatch.setenv("ICELAB_BUDGET", "unrestricted=3")
    code, _, err = run(capsys, "enumerate", "--size", "4")
    assert code == 3 and "budget" in err


def test_io_exit(capsys, tmp_path):
    code, _, err = run(capsys, "count", "--size", "3", "--output", str(tmp_path / "no" / "dir.txt"))
    assert code == 4 and "I/O" in err


def test_output_file(capsys, tmp_path):
    path = tmp_path / "c.txt"
    code, out, _ = run(capsys, "count", "--size", "4", "--output", str(path))
    assert code == 0 and out == "" and path.read_text() == "42\n"


def test_parse_value():
    assert parse_value("1/2*a^-1*x", GENERIC, ("x",)) == monomial(GENERIC, "1/2", a=-1, x=1)
    assert parse_value("a^2", OMEGA6) == monomial(OMEGA6, 1, a=2)
    assert parse_value(" -3 ", GENERIC) == monomial(GENERIC, -3)


def test_byte_identical_runs():
    cmd = [sys.executable, "-m", "icelab", "verify", "--suite", "symmetry", "--max-n", "1", "--seed", "4"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"[")
