from __future__ import annotations

import json
import subprocess
import sys

import pytest

from rigikit import graphs as G
from rigikit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def gfile(tmp_path):
    def write(g, name="g.json"):
        p = tmp_path / name
        p.write_text(g.to_json())
        return str(p)
    return write


def test_rank_of_banana(capsys, gfile):
    code, out, _ = run(capsys, "rank", "--dim", "3", gfile(G.banana(3)))
    assert code == 0 and out.strip() == "17"


def test_analyze_k67(capsys, gfile):
    code, out, _ = run(capsys, "analyze", "--dim", "4", gfile(G.complete_bipartite(6, 7)))
    data = json.loads(out)
    assert code == 0
    assert (data["k"], data["parts"], data["balanced"]) == (2, 7, False)


def test_analyze_tree_is_precondition_failure(capsys, gfile):
    tree = G.Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    code, _, err = run(capsys, "analyze", "--dim", "2", gfile(tree))
    assert code == 2 and "not cyclic" in err


def test_io_errors(capsys, tmp_path, gfile):
    assert run(capsys, "rank", "--dim", "2", str(tmp_path / "missing.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "rank", "--dim", "2", str(bad))[0] == 1
    assert run(capsys, "rank", gfile(G.complete(3)))[0] == 1  # --dim missing


@pytest.mark.parametrize("cmd", ["partition", "balanced", "components", "closure", "bridges"])
def test_other_analysis_commands(capsys, gfile, cmd):
    code, out, _ = run(capsys, cmd, "--dim", "2", gfile(G.complete(5)))
    assert code == 0
    json.loads(out)


def test_table_output(capsys, gfile):
    code, out, _ = run(capsys, "analyze", "--dim", "2", "--out", "table", gfile(G.complete(4)))
    assert code == 0 and out.splitlines()[0].split() == ["k", "1"]


def test_construct_kinds(capsys, gfile):
    code, out, _ = run(capsys, "construct", "banana", "--d", "3")
    g = G.parse_graph(out)
    assert code == 0 and (g.n, g.m) == (8, 18)
    _, out, _ = run(capsys, "construct", "cone", "--in", gfile(G.complete(4)))
    assert G.parse_graph(out) == G.complete(5)
    _, out, _ = run(capsys, "construct", "bipartite", "--m", "2", "--n", "3")
    assert G.parse_graph(out).m == 6
    k4 = gfile(G.complete(4), "k4.json")
    _, out, _ = run(capsys, "construct", "twosum", "--in", k4, "--in2", k4, "--e1", "0,1", "--e2", "0,1")
    assert G.parse_graph(out).m == 10
    _, out, _ = run(capsys, "construct", "parallel", "--in", k4, "--in2", k4, "--e1", "0,1", "--e2", "2,3")
    assert G.parse_graph(out).m == 11
    k6 = gfile(G.complete(6), "k6.json")
    _, out, _ = run(capsys, "construct", "x-replace", "--in", k6, "--e1", "0,1", "--e2", "2,3", "--extra", "4")
    assert G.parse_graph(out).degree(6) == 5
    _, out, _ = run(capsys, "construct", "v-replace", "--in", k6, "--e1", "0,1", "--e2", "1,2", "--extra", "3,4")
    assert G.parse_graph(out).degree(6) == 5
    _, out, _ = run(capsys, "construct", "extensions", "--d", "2", "--n", "7")
    assert G.parse_graph(out).m == 11
    code, _, _ = run(capsys, "construct", "banana", "--d", "2")
    assert code == 1
    code, _, _ = run(capsys, "construct", "complete")
    assert code == 1


def test_banana_chain_pipes_into_analyze(capsys, tmp_path):
    _, out, _ = run(capsys, "construct", "banana-chain", "--d", "3", "--copies", "4")
    p = tmp_path / "chain.json"
    p.write_text(out)
    code, out, _ = run(capsys, "analyze", "--dim", "3", str(p))
    assert code == 0 and json.loads(out)["k"] == 3


def test_round_trip_is_deterministic(capsys, gfile):
    path = gfile(G.banana_closed(3))
    a = run(capsys, "balanced", "--dim", "3", path)[1]
    b = run(capsys, "balanced", "--dim", "3", path)[1]
    assert a == b


def test_paperlab_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "paperlab", "K67-UNBALANCED")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 and json.loads(lines[0])["passed"] is True
    assert run(capsys, "paperlab", "NOPE")[0] == 2
    assert run(capsys, "paperlab")[0] == 1
    junit = tmp_path / "r.xml"
    assert run(capsys, "paperlab", "BANANA-RANK", "--junit", str(junit))[0] == 0
    assert junit.exists()
    code, out, _ = run(capsys, "paperlab", "--list")
    assert code == 0 and "MATCHING-M2" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rigikit.cli", "construct", "complete", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and G.parse_graph(proc.stdout).m == 3
