# bounded_treemaps/tests/test_cli.py
import json

import pytest

from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, cli_main

TREE = {"name": "root", "children": [
    {"name": "a", "weight": 3},
    {"name": "b", "children": [{"name": "c", "weight": 1}, {"name": "d", "weight": 1}]},
]}
SMALL_SPEC = '{"maxDepth": 3, "maxChildren": 4, "leafCount": 10}'


@pytest.fixture
def tree_file(tmp_path):
    path = tmp_path / "tree.json"
    path.write_text(json.dumps(TREE), encoding="utf-8")
    return path


def test_layout_writes_outputs(tree_file, tmp_path, capsys):
    svg, png, report = tmp_path / "o.svg", tmp_path / "o.png", tmp_path / "r.json"
    code = cli_main(["layout", "--algo", "ortho", "--input", str(tree_file), "--svg", str(svg),
                     "--png", str(png), "--report", str(report)])
    assert code == EXIT_OK
    assert "pass" in capsys.readouterr().out
    assert svg.read_text(encoding="utf-8").startswith("<?xml")
    assert png.read_bytes().startswith(b"\x89PNG")
    document = json.loads(report.read_text(encoding="utf-8"))
    assert document["algorithm"] == "ortho"
    assert document["verification"]["pass"] is True


def test_verify_accepts_layout_report(tree_file, tmp_path):
    report = tmp_path / "r.json"
    assert cli_main(["layout", "--algo", "convex", "--input", str(tree_file),
                     "--report", str(report)]) == EXIT_OK
    assert cli_main(["verify", "--input", str(tree_file), "--layout", str(report)]) == EXIT_OK


def test_verify_fails_on_tampered_layout(tree_file, tmp_path, capsys):
    report = tmp_path / "r.json"
    cli_main(["layout", "--algo", "ortho", "--input", str(tree_file), "--report", str(report)])
    document = json.loads(report.read_text(encoding="utf-8"))
    for record in document["regions"]:
        if record["node"] == "root/a":
            record["vertices"] = [[x * 0.9, y] for x, y in record["vertices"]]
    report.write_text(json.dumps(document), encoding="utf-8")
    assert cli_main(["verify", "--input", str(tree_file), "--layout", str(report)]) == EXIT_FAILED
    assert "FAIL root/a" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["layout", "--algo", "spiral", "--input", "t.json"],
    ["bench", "--algo", "ortho", "--trials", "many"],
    ["pack", "--side", "3", "--squares", "a,b"],
])
def test_usage_errors(argv):
    assert cli_main(argv) == EXIT_USAGE


def test_unreadable_input_is_a_usage_error(tmp_path, capsys):
    code = cli_main(["layout", "--algo", "ortho", "--input", str(tmp_path / "absent.json")])
    assert code == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_single_level_rejects_deep_tree(tree_file):
    assert cli_main(["layout", "--algo", "single", "--input", str(tree_file)]) == EXIT_USAGE


def test_bench_prints_same_report_twice(capsys):
    argv = ["bench", "--algo", "ortho", "--trials", "2", "--seed", "5", "--spec", SMALL_SPEC]
    assert cli_main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert cli_main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert json.loads(first)["summary"]["trials"] == 2


def test_bench_report_and_dump(tmp_path, capsys):
    report, dump = tmp_path / "bench.json", tmp_path / "trees"
    code = cli_main(["bench", "--algo", "single", "--trials", "3", "--seed", "1",
                     "--report", str(report), "--dump", str(dump)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(report.read_text(encoding="utf-8"))["pass"] is True
    assert sorted(p.name for p in dump.iterdir()) == [
        "trial-0000.json", "trial-0001.json", "trial-0002.json"]


def test_bench_rejects_bad_spec():
    assert cli_main(["bench", "--algo", "ortho", "--spec", "{not json"]) == EXIT_USAGE
    assert cli_main(["bench", "--algo", "ortho", "--spec", '{"leafCount": 0}']) == EXIT_USAGE


def test_pack_infeasible(capsys):
    assert cli_main(["pack", "--side", "3", "--squares", "2,2"]) == EXIT_OK
    assert capsys.readouterr().out.strip().endswith("infeasible")


def test_pack_feasible_writes_svg(tmp_path, capsys):
    svg = tmp_path / "pack.svg"
    assert cli_main(["pack", "--side", "2", "--squares", "1,1", "--svg", str(svg)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "infeasible" not in out and "1@" in out
    assert svg.read_text(encoding="utf-8").count("<path") == 5


@pytest.mark.parametrize("squares, side", [("3", "2"), ("1", "7")])
def test_pack_rejects_overfull_and_large(squares, side):
    assert cli_main(["pack", "--side", side, "--squares", squares]) == EXIT_USAGE
