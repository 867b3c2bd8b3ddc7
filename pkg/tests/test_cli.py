import json
import shutil
import subprocess

import pytest

from hstree.cli import cli
from hstree.points import load_points, moment_curve
from hstree.tree import parse_tree


def run(capsys, *argv):
    code = cli(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_moment_and_random(tmp_path, capsys):
    path = tmp_path / "m.txt"
    assert run(capsys, "gen", "--n", "5", "--d", "3", "--out", str(path))[0] == 0
    assert load_points(path) == moment_curve(5, 3)
    code, out, _ = run(capsys, "gen", "--kind", "random", "--n", "6", "--d", "2", "--seed", "4",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert (doc["n"], doc["d"]) == (6, 2)


def test_build_and_stats(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    cli(["gen", "--n", "12", "--d", "2", "--out", str(pts)])
    code, out, _ = run(capsys, "build", "--points", str(pts), "--seed", "3")
    assert code == 0
    assert parse_tree(out).n == 12
    code, out, _ = run(capsys, "build", "--moment", "12", "2", "--seed", "3", "--stats")
    doc = json.loads(out)
    assert sum(doc["root_split"]) == 10
    code, out, _ = run(capsys, "build", "--fringe", "20", "1", "--stats")
    assert json.loads(out)["n"] == 20


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--moment", "5", "3")
    assert code == 0
    assert out.splitlines() == ["k,count", "0,6", "1,8", "2,6"]


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "lambda", "--t", "1")
    assert json.loads(out)["value"] == pytest.approx(12 / 7)
    assert json.loads(out)["log_base"] == "natural"
    _, out, _ = run(capsys, "bounds", "height-constant", "--t", "0")
    assert json.loads(out)["value"] == pytest.approx(4.31107, abs=1e-4)
    _, out, _ = run(capsys, "bounds", "tail", "--kind", "wagner", "--d", "5", "--x", "0.5")
    assert json.loads(out) == {"value": 4.0, "log_base": None, "valid": False, "residual": 0.0}
    _, out, _ = run(capsys, "bounds", "gamma", "--d", "4")
    assert json.loads(out)["value"] is None
    _, out, _ = run(capsys, "bounds", "mu", "--law", "wagner", "--d", "50")
    assert json.loads(out)["valid"]


def test_usage_errors(capsys):
    assert run(capsys, "gen", "--n", "3")[0] == 2
    assert run(capsys, "census", "--moment", "5", "3", "--bogus")[0] == 2
    assert run(capsys, "bounds", "tail", "--kind", "balance", "--d", "2", "--x", "1")[0] == 2
    assert run(capsys, "experiment")[0] == 2
    assert run(capsys, "verify")[0] == 2
    code, _, err = run(capsys, "build", "--points", "/nonexistent/file")
    assert code == 2 and "error" in err


def test_experiment_threads_identical(tmp_path, capsys):
    outs = []
    for threads in ("1", "3"):
        path = tmp_path / f"e{threads}.csv"
        code = cli(["experiment", "--source", "moment", "--n", "60", "--d", "3", "--trials", "12",
                    "--seed", "5", "--threads", threads, "--out", str(path)])
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_report(tmp_path, capsys):
    path = tmp_path / "e.csv"
    cli(["experiment", "--source", "moment", "--n", "100", "--d", "1", "--trials", "8",
         "--mode", "combinatorial", "--out", str(path)])
    code, out, _ = run(capsys, "report", "--in", str(path))
    assert code == 0
    assert json.loads(out)["trials"] == 8


def test_verify_commands(capsys):
    code, out, _ = run(capsys, "verify", "--lemmas", "--d-max", "2", "--n-max", "5", "--sets", "3")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify", "--domination", "--d", "5", "--n", "256", "--trials", "1000")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--equivalence", "--d-max", "2", "--n-max", "5")
    assert code == 0


@pytest.mark.skipif(shutil.which("hstree") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["hstree", "bounds", "lambda", "--t", "0"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["value"] == 2.0
