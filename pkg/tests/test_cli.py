import json
import subprocess
import sys

import pytest

from vsdtc.cli import main
from vsdtc.graph import path_graph
from vsdtc.io import read_coloring, write_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_prints_value(capsys):
    assert run(capsys, "solve", "--r", "1", "path:4") == (0, "5\n", "")


def test_solve_json_and_witness(tmp_path, capsys):
    out_file = tmp_path / "w.json"
    code, out, _ = run(capsys, "solve", "path:5", "--format", "json", "--out", str(out_file))
    assert code == 0
    doc = json.loads(out)
    assert doc["chromatic_number"] == 4
    assert json.loads(out_file.read_text())["verification"]["valid"]
    assert read_coloring(path_graph(5), out_file).palette_size == 4


def test_table_rows(capsys):
    code, out, _ = run(capsys, "table", "--r", "1", "--max-n", "5", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family,n,m,delta_max,k_degeneracy,r,lower,exact,status,constructive,bound"
    assert [(l.split(",")[1], l.split(",")[7]) for l in lines[1:]] == [("3", "5"), ("4", "6"), ("5", "8")]


def test_verify_p3_witness(tmp_path, capsys):
    g = tmp_path / "p3.txt"
    write_graph(path_graph(3), g)
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"palette_size": 4, "vertices": [1, 3, 1], "edges": [
        {"u": 0, "v": 1, "color": 2}, {"u": 1, "v": 2, "color": 4}]}))
    code, out, _ = run(capsys, "verify", "--r", "1", str(g), str(c))
    assert (code, out) == (0, "valid\n")


def test_verify_failure_exit_code(tmp_path, capsys):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"palette_size": 4, "vertices": [1, 3, 1], "edges": [
        {"u": 0, "v": 1, "color": 2}, {"u": 1, "v": 2, "color": 2}]}))
    code, out, _ = run(capsys, "verify", "path:3", str(c))
    assert code == 2 and out.startswith("invalid")


def test_incomplete_coloring_is_invalid_input(tmp_path, capsys):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"palette_size": 4, "vertices": [1, None, 1], "edges": []}))
    code, _, err = run(capsys, "verify", "path:3", str(c))
    assert code == 1 and err.startswith("error: IncompleteColoring:")


def test_error_lines(capsys):
    code, _, err = run(capsys, "solve", "path:2")
    assert code == 1 and err.startswith("error: IsolatedEdge:") and err.count("\n") == 1
    code, _, err = run(capsys, "solve", "complete:6", "--max-nodes", "2000")
    assert code == 3 and err.startswith("error: Timeout:")
    code, _, err = run(capsys, "solve", "nosuchfile")
    assert code == 1 and err.startswith("error: InvalidInput:")
    code, _, err = run(capsys, "solve", "path:4", "--r", "0")
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 1


def test_gen_and_greedy(tmp_path, capsys):
    g = tmp_path / "t.txt"
    assert run(capsys, "gen", "random_k_degenerate:20,2", "--seed", "4", "--out", str(g))[0] == 0
    code, out, _ = run(capsys, "greedy", str(g), "--out", str(tmp_path / "c.json"))
    assert code == 0 and out.split()[2] == "valid"
    code, out, _ = run(capsys, "verify", str(g), str(tmp_path / "c.json"))
    assert code == 0


def test_bounds_and_scan(capsys):
    code, out, _ = run(capsys, "bounds", "cycle:6")
    assert "upper.general 8" in out.splitlines()
    code, out, _ = run(capsys, "bounds", "complete:6", "--format", "json")
    assert json.loads(out)["conjectured"]["order"] == 10
    code, out, _ = run(capsys, "scan", "--family", "random_tree", "--count", "5", "--max-n", "12")
    assert code == 0 and "order_violations 0" in out.splitlines()


def test_reruns_are_identical(capsys):
    argv = ["scan", "--family", "random_connected", "--count", "6", "--max-n", "7", "--p", "0.3", "--seed", "9", "--format", "json"]
    first = run(capsys, *argv)
    assert first == run(capsys, *argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vsdtc", "solve", "path:3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "4\n"
