import json
import re

import pytest

from splitting_structures.cli import execute
from splitting_structures.generators import BetweennessRelation, betweenness_of
from splitting_structures.schema import dump_document


def _gen(tmp_path, name, *args):
    path = tmp_path / f"{name}.json"
    _, code = execute(["gen", *args, "--out", str(path)])
    assert code == 0
    return path


@pytest.fixture
def path7(tmp_path, capsys):
    path = _gen(tmp_path, "path7", "path", "--n", "7")
    capsys.readouterr()
    return path


def _run(capsys, *argv):
    report, code = execute(list(argv))
    out = capsys.readouterr().out
    return report, code, out


def test_gen_writes_fixture_and_reports_it(tmp_path, capsys):
    path = tmp_path / "cycle24.json"
    report, code, out = _run(capsys, "gen", "cycle", "--n", "24", "--radii", "1,2", "--out", str(path))
    assert code == 0
    fixture = json.loads(path.read_text())
    assert fixture["points"] == 24
    assert fixture["basis"] == {"kind": "balls", "radii": [1, 2]}
    assert json.loads(out)["payload"]["fixture"] == fixture
    assert report.space["K"] == 2


def test_gen_is_deterministic(tmp_path, capsys):
    first = _gen(tmp_path, "first", "random_tree", "--n", "25", "--seed", "3")
    second = _gen(tmp_path, "second", "random_tree", "--n", "25", "--seed", "3")
    assert first.read_bytes() == second.read_bytes()


def test_analyze_path(path7, capsys):
    report, code, out = _run(capsys, "analyze", str(path7))
    assert code == 0
    body = json.loads(out)
    assert body["payload"]["split_histogram"] == {"1": 2, "2": 5}
    assert body["payload"]["non_flat"] == [0, 1, 5, 6]
    assert body["space"] == {"n": 7, "edges": 6, "basis_size": 7, "K": 2}
    assert body["status"] == 0


def test_report_goes_to_out(path7, tmp_path, capsys):
    out_path = tmp_path / "reports" / "analyze.json"
    _, code, out = _run(capsys, "analyze", str(path7), "--out", str(out_path))
    assert code == 0
    assert out == ""
    assert json.loads(out_path.read_text())["command"] == "analyze"


def test_decompose_star(tmp_path, capsys):
    star = _gen(tmp_path, "star3x6", "star", "--arms", "3", "--len", "6")
    capsys.readouterr()
    _, code, out = _run(capsys, "decompose", str(star))
    assert code == 0
    components = json.loads(out)["payload"]["components"]
    assert [c["sequence"] for c in components] == [[1, 2, 3, 4], [7, 8, 9, 10], [13, 14, 15, 16]]


def test_order_command(path7, capsys):
    _, code, out = _run(capsys, "order", str(path7))
    assert code == 0
    assert json.loads(out)["payload"]["chart"]["sequence"] == list(range(7))

    _, code, out = _run(capsys, "order", str(path7), "--domain", "2,3,4", "--anchor", "3")
    assert code == 0
    assert json.loads(out)["payload"]["chart"] == {"anchor": 3, "sequence": [2, 3, 4]}


def test_order_with_non_splitting_anchor_is_a_negative_result(path7, capsys):
    _, code, out = _run(capsys, "order", str(path7), "--anchor", "0")
    assert code == 1
    assert json.loads(out)["violations"][0]["error"] == "AnchorDoesNotSplit"


def test_order_rejects_disconnected_domain(path7, capsys):
    _, code, out = _run(capsys, "order", str(path7), "--domain", "0,2")
    assert code == 2
    assert out == ""


def test_verify_star_lemmas(tmp_path, capsys):
    star = _gen(tmp_path, "star3x4", "star")
    capsys.readouterr()
    _, code, out = _run(capsys, "verify", str(star), "--suite", "lemmas", "--samples", "20")
    assert code == 0
    assert json.loads(out)["payload"]["suite"] == "lemmas"


def test_cyclic_on_cycle_and_path(tmp_path, path7, capsys):
    cycle = _gen(tmp_path, "cycle24", "cycle", "--n", "24", "--radii", "1,2")
    capsys.readouterr()
    _, code, out = _run(capsys, "cyclic", str(cycle))
    assert code == 0
    assert json.loads(out)["payload"]["cycle"] == list(range(24))

    _, code, out = _run(capsys, "cyclic", str(path7))
    assert code == 1
    body = json.loads(out)
    assert body["payload"]["cycle"] is None
    assert body["violations"][0]["result"] == "not_cyclic"


def test_betweenness(tmp_path, capsys):
    ordered = tmp_path / "shuffled.betweenness.json"
    ordered.write_text(dump_document(betweenness_of([0, 2, 1, 3]).to_document()))
    _, code, out = _run(capsys, "betweenness", str(ordered))
    assert code == 0
    assert json.loads(out)["payload"]["order"] == [0, 2, 1, 3]

    cyclic = tmp_path / "cyclic.betweenness.json"
    rel = BetweennessRelation.of(3, [(0, 2, 1), (1, 0, 2), (2, 1, 0)])
    cyclic.write_text(dump_document(rel.to_document()))
    _, code, out = _run(capsys, "betweenness", str(cyclic))
    assert code == 1
    assert json.loads(out)["violations"][0]["error"] == "NotBetweennessRealizable"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["unknown"],
        ["gen", "lattice"],
        ["gen", "path", "--n", "2"],
        ["gen", "path", "--radii", "1,x"],
        ["verify", "missing.json"],
        ["analyze", "missing.json"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    _, code = execute(argv)
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert captured.err.startswith("error:")


def test_dot_export(path7, tmp_path, capsys):
    dot_path = tmp_path / "path7.dot"
    _, code, _ = _run(capsys, "analyze", str(path7), "--dot", str(dot_path))
    assert code == 0
    lines = dot_path.read_text().splitlines()
    assert len([line for line in lines if " -- " in line]) == 6
    assert len([line for line in lines if re.fullmatch(r"\t\d+( \[.*\])?", line)]) == 7
    # non-flat points are filled
    assert "filled" in dot_path.read_text()


def test_dot_export_of_atlas(tmp_path, capsys):
    cycle = _gen(tmp_path, "cycle24", "cycle", "--n", "24", "--radii", "1,2")
    dot_path = tmp_path / "cycle24.dot"
    capsys.readouterr()
    _, code, _ = _run(capsys, "atlas", str(cycle), "--dot", str(dot_path))
    assert code == 0
    assert "cluster_0" in dot_path.read_text()


@pytest.fixture
def fixtures(tmp_path, capsys):
    files = {
        "star": _gen(tmp_path, "star3x6", "star", "--arms", "3", "--len", "6"),
        "cycle": _gen(tmp_path, "cycle24", "cycle", "--n", "24", "--radii", "1,2"),
        "tree": _gen(tmp_path, "tree20", "random_tree", "--n", "20", "--seed", "5"),
    }
    relation = tmp_path / "shuffled.betweenness.json"
    relation.write_text(dump_document(betweenness_of([3, 0, 4, 2, 1]).to_document()))
    files["relation"] = relation
    capsys.readouterr()
    return files


@pytest.mark.parametrize(
    "command, name, extra",
    [
        ("analyze", "star", []),
        ("decompose", "star", []),
        ("order", "tree", []),
        ("atlas", "cycle", []),
        ("cyclic", "cycle", []),
        ("verify", "tree", ["--suite", "bounds", "--seed", "7", "--samples", "30"]),
        ("verify", "star", ["--suite", "lemmas", "--seed", "7", "--samples", "30"]),
        ("betweenness", "relation", []),
    ],
)
def test_reports_are_byte_identical_across_runs(fixtures, capsys, command, name, extra):
    argv = [command, str(fixtures[name]), *extra]
    _, first_code = execute(argv)
    first = capsys.readouterr().out.encode()
    _, second_code = execute(argv)
    second = capsys.readouterr().out.encode()
    assert first_code == second_code
    assert first
    assert first == second
