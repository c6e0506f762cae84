import argparse
import csv
import io
import subprocess
import sys

import pytest

from hlhitters import cli


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def demo(text, **kw):
    args = argparse.Namespace(q=kw.get("q", 10), k=kw.get("k", 1), report_every=kw.get("r", 3))
    out, err = io.StringIO(), io.StringIO()
    code = cli.cmd_demo(args, stdin=io.StringIO(text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_demo_report():
    code, out, err = demo("0\n0\n1\n")
    assert code == 0 and err == ""
    assert "top: 0 (2)" in out.splitlines()
    assert "bottom: 1 (1)" in out.splitlines()


def test_demo_empty_input():
    assert demo("") == (0, "", "")


def test_demo_bad_line_warns_and_continues():
    code, out, err = demo("x\n0\n0\n-4\n1\n")
    assert code == 0
    assert "warning: line 1" in err and "warning: line 4" in err
    assert "top: 0 (2)" in out


def test_demo_window_slides():
    # after 5 5 5 7 the q=2 window holds {5, 7}, one each
    code, out, _ = demo("5\n5\n5\n7\n", q=2, r=4, k=2)
    assert code == 0
    header, top, bottom = out.splitlines()
    assert header.startswith("after 4 items (window 2/2, 2 distinct)")
    assert set(top.removeprefix("top: ").split(", ")) == {"5 (1)", "7 (1)"}
    assert set(bottom.removeprefix("bottom: ").split(", ")) == {"5 (1)", "7 (1)"}


def test_verify_pass(capsys):
    code, out, _ = run(["verify", "--q", "1", "--dist", "constant", "--n", "100"], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "1/1 passed"


def test_verify_grid(capsys):
    code, out, _ = run(["verify", "--q", "1,7", "--dist", "uniform,zipf(1.0),constant", "--flows", "16,1024", "--n", "300"], capsys)
    assert code == 0
    # constant collapses to one flow: (2 + 2 + 1) workloads x 2 sizes
    assert out.splitlines()[-1] == "10/10 passed"


@pytest.mark.parametrize("mutant", ["skip-range-insert", "swap-insert"])
def test_verify_mutant_exits_one(capsys, mutant):
    code, out, _ = run(["verify", "--q", "7", "--dist", "uniform", "--n", "1000", "--mutant", mutant], capsys)
    assert code == 1
    assert "FAIL" in out and "failing prefix" in out


def test_bench_csv(capsys, tmp_path):
    path = tmp_path / "b.csv"
    code, out, err = run(["bench", "--q", "64", "--flows", "8", "--n", "1000", "--runs", "1", "--out", str(path)], capsys)
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0][0] == "algorithm" and len(rows) == 3
    assert "ns/item" in err
    code, out, _ = run(["bench", "--q", "16", "--flows", "8", "--n", "1e3", "--runs", "2", "--quiet", "--algorithms", "hl-hitters"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 2


def test_collision(capsys):
    code, out, _ = run(["collision", "--n", "1e6", "--m", "1000", "--k", "10", "--z", "6.34e17"], capsys)
    assert code == 0
    assert "rho <= 2.371e-35" in out
    assert "rho * Z <= 1.503e-17" in out


def test_generate(capsys, tmp_path):
    code, out, _ = run(["generate", "--dist", "round-robin", "--flows", "3", "--n", "6"], capsys)
    assert code == 0 and out == "0\n1\n2\n0\n1\n2\n"
    path = tmp_path / "s.txt"
    assert cli.main(["generate", "--dist", "zipf(1.1)", "--n", "50", "--out", str(path)]) == 0
    assert len(path.read_text().splitlines()) == 50


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--q", "0", "--n", "10"],
        ["verify", "--dist", "pareto"],
        ["bench", "--dist", "zipf(-1)"],
        ["bench", "--q", "0"],
        ["collision", "--n", "5", "--m", "10"],
        ["generate", "--dist", "uniform", "--flows", "0"],
        ["demo", "--q", "0"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(argv, capsys)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["bench", "--q", "a,b"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["bench", "--algorithms", "heap"])
    assert exc.value.code == 2


def test_module_entry_point_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "hlhitters", "demo", "--q", "10", "--k", "1", "--report-every", "3"],
        input="0\n0\n1\n",
        capture_output=True,
        text=True,
        check=True,
    )
    assert "top: 0 (2)" in proc.stdout
