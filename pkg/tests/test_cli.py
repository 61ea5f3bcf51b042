#!/usr/bin/env python3
"""Tests for the command line: exit codes, file round trips and the JSON parser."""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

_repo_root = Path(__file__).resolve().parent.parent
if str(_repo_root) not in sys.path:
    sys.path.insert(0, str(_repo_root))

import linsplit
from lib.coloring import is_good
from lib.corpus import summarize, InstanceResult
from lib.errors import ListTooSmall, ParseError
from lib.families import cycle
from lib.formatter import coloring_to_dict, graph_to_dict, to_dot
from lib.parser import coloring_from_dict, graph_from_dict, lists_from_dict, read_coloring, read_graph


def _write(path: Path, doc) -> Path:
    path.write_text(json.dumps(doc))
    return path


def _expect_parse_error(doc, fn=graph_from_dict):
    try:
        fn(doc)
        assert False, f"Expected ParseError for {doc!r}"
    except ParseError:
        pass


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def test_graph_dict_round_trip():
    g = cycle(7)
    doc = graph_from_dict(graph_to_dict(g, {"u": 3}))
    assert doc.graph == g
    assert doc.marks == {"u": 3}


def test_graph_from_edges():
    doc = graph_from_dict({"edges": [[0, 1], [1, 2], [2, 0]], "vertices": [0, 1, 2, 9]})
    assert doc.graph.num_edges == 3 and 9 in doc.graph
    assert doc.graph.degree(9) == 0


def test_graph_parse_errors():
    _expect_parse_error([1, 2])
    _expect_parse_error({"format": 2, "edges": []})
    _expect_parse_error({"vertices": [0, 1]})
    _expect_parse_error({"edges": [[0, 1, 2]]})
    _expect_parse_error({"rotation": {"0": [0]}})
    _expect_parse_error({"edges": [["a", 1]]})
    _expect_parse_error({"edges": [[0, 1]], "marks": {"u": 7}})


def test_lists_and_colorings_from_dict():
    lists = lists_from_dict({"format": 1, "lists": {"0": [1, 0], "1": [3, 2]}})
    assert lists[0] == (0, 1) and lists[1] == (2, 3)
    try:
        lists_from_dict({"lists": {"0": [1]}})
        assert False, "Expected ListTooSmall"
    except ListTooSmall:
        pass
    _expect_parse_error({"colors": [0, 1]}, coloring_from_dict)
    assert coloring_from_dict(coloring_to_dict({2: 1, 0: 0})) == {0: 0, 2: 1}


def test_missing_file():
    try:
        read_graph("/nonexistent/graph.json")
        assert False, "Expected ParseError"
    except ParseError as e:
        assert "nonexistent" in str(e)


def test_dot_marks_monochromatic_edges():
    g = cycle(6)
    colors = {v: 0 if v < 3 else 1 for v in g.vertices}
    dot = to_dot(g, colors, {"u": 0})
    assert dot.startswith("graph G {") and dot.rstrip().endswith("}")
    assert 'xlabel="u"' in dot
    assert dot.count("penwidth") == 4, "Edges 0-1, 1-2, 3-4 and 4-5 are monochromatic"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def test_gen_and_solve():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        graph_path = tmp / "c6.json"
        assert linsplit.main(["gen", "--family", "cycle", "--n", "6", "--out", str(graph_path)]) == 0
        assert read_graph(graph_path).graph == cycle(6)

        out = tmp / "c6.coloring.json"
        trace = tmp / "c6.trace.jsonl"
        code = linsplit.main(["solve", str(graph_path), "--output", str(out), "--trace", str(trace)])
        assert code == 0, f"Got exit code {code}"
        colors = read_coloring(out)
        assert is_good(cycle(6), colors).ok
        events = [json.loads(line) for line in trace.read_text().splitlines()]
        assert [ev["lemma"] for ev in events] == ["oracle"]

        assert linsplit.main(["verify", str(graph_path), str(out), "--output", str(tmp / "r.json")]) == 0


def test_gen_needs_parameters():
    assert linsplit.main(["gen", "--family", "cycle"]) == 2


def test_gen_subdivided_families():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        solid = tmp / "icosa.json"
        assert linsplit.main(["gen", "--family", "solid", "--solid", "icosahedron", "--out", str(solid)]) == 0
        assert read_graph(solid).graph.num_vertices == 42
        trace = tmp / "icosa.trace.jsonl"
        code = linsplit.main(["solve", str(solid), "--output", str(tmp / "c.json"), "--trace", str(trace)])
        assert code == 0, f"Got exit code {code}"
        lemmas = [json.loads(line)["lemma"] for line in trace.read_text().splitlines()]
        assert lemmas[0] == "X1", f"Got {lemmas}"

        delaunay = tmp / "delaunay.json"
        assert linsplit.main(["gen", "--family", "delaunay", "--n", "30", "--seed", "4", "--out", str(delaunay)]) == 0
        assert read_graph(delaunay).graph.girth() == 6
        assert linsplit.main(["gen", "--family", "delaunay", "--out", str(delaunay)]) == 2


def test_solve_many_inputs_with_out_dir():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        paths = []
        for n in (8, 30):
            p = tmp / f"c{n}.json"
            _write(p, graph_to_dict(cycle(n)))
            paths.append(str(p))
        out_dir = tmp / "out"
        assert linsplit.main(["solve", *paths, "--out-dir", str(out_dir)]) == 0
        assert sorted(p.name for p in out_dir.iterdir()) == ["c30.coloring.json", "c8.coloring.json"]
        assert linsplit.main(["solve", *paths, "--output", str(tmp / "x.json")]) == 64


def test_solve_malformed_json():
    with tempfile.TemporaryDirectory() as tmp:
        bad = Path(tmp) / "bad.json"
        bad.write_text("{not json")
        assert linsplit.main(["solve", str(bad)]) == 64


def test_solve_rejects_girth_four_gadget():
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "a5.json"
        assert linsplit.main(["gen", "--family", "A", "--t", "5", "--out", str(path)]) == 0
        assert linsplit.main(["solve", str(path), "--output", str(Path(tmp) / "c.json")]) == 2


def test_verify_flags_bad_coloring():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        graph_path = _write(tmp / "c6.json", graph_to_dict(cycle(6)))
        coloring = _write(tmp / "mono.json", coloring_to_dict({v: 0 for v in range(6)}))
        report = tmp / "report.json"
        assert linsplit.main(["verify", str(graph_path), str(coloring), "--output", str(report)]) == 1
        assert json.loads(report.read_text())["good"] is False

        partial = _write(tmp / "partial.json", coloring_to_dict({0: 0}))
        assert linsplit.main(["verify", str(graph_path), str(partial), "--output", str(report)]) == 2


def test_verify_checks_lists():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        graph_path = _write(tmp / "c6.json", graph_to_dict(cycle(6)))
        coloring = _write(tmp / "alt.json", coloring_to_dict({v: v % 2 for v in range(6)}))
        lists = _write(tmp / "lists.json", {"format": 1, "lists": {str(v): [2, 3] for v in range(6)}})
        code = linsplit.main(["verify", str(graph_path), str(coloring), "--lists", str(lists),
                              "--output", str(tmp / "r.json")])
        assert code == 1, "Colors outside the lists fail verification"


def test_oracle_exit_codes():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        path = tmp / "girth5.json"
        out = str(tmp / "result.json")
        assert linsplit.main(["gen", "--family", "girth5", "--out", str(path)]) == 0
        assert linsplit.main(["oracle", str(path), "--property", "pk-free", "--k", "3",
                              "--mode", "forall", "--output", out]) == 0
        assert linsplit.main(["oracle", str(path), "--property", "pk-free", "--k", "3",
                              "--output", out]) == 1

        c5 = _write(tmp / "c5.json", graph_to_dict(cycle(5)))
        assert linsplit.main(["oracle", str(c5), "--property", "pk-free", "--k", "4", "--output", out]) == 0
        assert json.loads(Path(out).read_text())["found"] is True
        assert linsplit.main(["oracle", str(c5), "--budget", "1", "--output", out]) == 4


def test_usage_errors():
    assert linsplit.main([]) == 64
    for argv in (["solve"], ["oracle", "x.json", "--property", "acyclic"], ["stats", "--seeds", "many"]):
        try:
            linsplit.main(argv)
            assert False, f"Expected SystemExit for {argv}"
        except SystemExit as e:
            assert e.code == 64, f"{argv}: got {e.code}"


def test_stats_small_corpus():
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "stats.json"
        code = linsplit.main(["stats", "--hex-sizes", "2", "--random-sizes", "60", "--seeds", "1",
                              "--output", str(out)])
        assert code == 0, f"Got exit code {code}"
        doc = json.loads(out.read_text())
        assert [row["family"] for row in doc["summary"]] == ["hex", "random", "all"]
        assert all(row["max_mono_path_order"] <= 15 and row["violations"] == 0 for row in doc["summary"])
        assert len(doc["instances"]) == 2


def test_summarize_counts_violations():
    results = [
        InstanceResult("random", "a", 10, 12, True, 0.5, 6, 7, 2, 1),
        InstanceResult("random", "b", 20, 24, False, 1.5, error="AssumptionViolated"),
    ]
    (row,) = summarize(results)
    assert row["instances"] == 2 and row["max_n"] == 20
    assert row["configurations"] == 1 and row["violations"] == 1
    assert row["mean_seconds"] == 1.0


if __name__ == "__main__":
    print("Testing command line...\n")

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    passed = 0
    failed = 0

    for test in tests:
        try:
            test()
            passed += 1
        except Exception as e:
            print(f"  FAIL: {test.__name__}: {e}")
            failed += 1

    print(f"\n{'='*40}")
    print(f"Results: {passed} passed, {failed} failed")

    sys.exit(1 if failed > 0 else 0)
