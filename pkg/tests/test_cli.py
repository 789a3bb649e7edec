import json
import subprocess
import sys

import pytest

from descent_quiver.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--n", "6")
    assert code == 0
    assert out.splitlines() == ["vertices 30", "edges 28", "paths len-2 7", "dim kQ 65", "quotient 64"]


def test_dims_json(capsys):
    code, out, _ = run(capsys, "dims", "--n", "7", "--json")
    d = json.loads(out)
    assert code == 0 and d["quotient"] == 128 and d["dim_I"] == 6


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--n", "6")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "verify", "--n", "6", "--json")
    assert json.loads(out)["verdict"] == "PASS"


def test_verify_range_and_failure_exit(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1-3")
    assert code == 0 and out.count("PASS") == 3
    code, out, _ = run(capsys, "verify", "--n", "9")
    assert ("FAIL" in out) == (code == 1)


def test_delta(capsys):
    code, out, _ = run(capsys, "delta", "--expr", "(1 (1 5)@2)@1", "--as-borbit")
    assert code == 0 and out.strip() == "2*[1,1,5] - 2*[1,5,1]"
    _, out, _ = run(capsys, "delta", "--expr", "[ 4 (1 2)@1 ]B")
    assert out.strip() == "0"
    _, out, _ = run(capsys, "delta", "--expr", "4 (1 2)@1")
    assert out.strip() == "1*[4,1,2] - 1*[4,2,1]"


def test_pi_and_render(capsys):
    _, out, _ = run(capsys, "pi", "--expr", "((1 2) 3)")
    assert out.strip() == "1*[1,2,3] - 1*[2,1,3] - 1*[3,1,2] + 1*[3,2,1]"
    _, out, _ = run(capsys, "render", "--expr", "(1 (1 5)@2)@1")
    assert out.strip() == "1*(1 (1 5)@2)@1"


def test_paths(capsys):
    code, out, _ = run(capsys, "paths", "--n", "6", "--source", "1122", "--dest", "0")
    assert code == 0 and out.startswith("3 paths 1122 -> ∅")
    _, out, _ = run(capsys, "paths", "--n", "6", "--source", "1122", "--dest", "0", "--json")
    assert len(json.loads(out)) == 3


def test_quiver_formats(capsys):
    _, out, _ = run(capsys, "quiver", "--n", "6", "--format", "dot", "--omit-isolated")
    assert out.startswith("digraph Q6") and out.count("->") == 28
    _, out, _ = run(capsys, "quiver", "--n", "6", "--format", "json")
    assert len(json.loads(out)["edges"]) == 28
    _, out, _ = run(capsys, "quiver", "--n", "4")
    assert len(out.splitlines()) == 4


@pytest.mark.parametrize("expr, kind", [("((1 2", "ForestSyntaxError"), ("(1 2)@2 3", "LabelError")])
def test_errors(capsys, expr, kind):
    code, _, err = run(capsys, "delta", "--expr", expr)
    assert code == 2 and kind in err


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "descent_quiver.cli", "quiver", "--n", "7", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b


def test_threads_flag(capsys, monkeypatch):
    monkeypatch.setenv("DESCENT_QUIVER_THREADS", "2")
    code, out, _ = run(capsys, "verify", "--n", "5-6")
    assert code == 0 and out.count("PASS") == 2


def test_threads_after_subcommand(capsys):
    code, out, _ = run(capsys, "verify", "--n", "5-6", "--threads", "2")
    assert code == 0 and out.count("PASS") == 2
