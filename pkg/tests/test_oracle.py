#!/usr/bin/env python3
"""Tests for the exact coloring search and the lower-bound certificates."""

from __future__ import annotations

import sys
from pathlib import Path

_repo_root = Path(__file__).resolve().parent.parent
if str(_repo_root) not in sys.path:
    sys.path.insert(0, str(_repo_root))

from lib.coloring import is_good, metrics
from lib.errors import BadParameter, BudgetExceeded
from lib.families import cycle, girth5_example, lower_bound_G, path_graph
from lib.formatter import search_line
from lib.oracle import Query, all_colorings, satisfies, search, search_domains, verify_gadget_lemma
from lib.types import ListAssignment


def _uniform(g):
    return ListAssignment.uniform(g.vertices)


def test_c5_has_no_proper_two_coloring():
    g = cycle(5)
    result = search(g, _uniform(g), Query("pk_free", 2, "forall"))
    assert not result.found, f"C5 is odd, got {result.witness}"
    assert result.certificate().startswith("UNSAT nodes=")
    line = search_line(result)
    assert line.count("nodes") == 1, f"Node count printed more than once: {line}"
    found = search(g, _uniform(g), Query("pk_free", 3))
    assert f"({found.nodes:,} nodes)" in search_line(found)


def test_c6_proper_coloring_found():
    g = cycle(6)
    result = search(g, _uniform(g), Query("pk_free", 2))
    assert result.found
    assert all(result.witness[u] != result.witness[v] for u, v in g.edges), "Witness must be proper"


def test_good_witness_is_good():
    g = path_graph(12)
    result = search(g, _uniform(g), Query("good", 3))
    assert result.found
    assert is_good(g, result.witness, 3).ok


def test_fragmented_and_defective():
    g = cycle(7)
    frag = search(g, _uniform(g), Query("k_fragmented", 2))
    assert frag.found and metrics(g, frag.witness).max_component_order <= 2
    defect = search(g, _uniform(g), Query("k_defective", 1))
    assert defect.found and metrics(g, defect.witness).max_mono_degree <= 1


def test_respects_lists():
    g = cycle(6)
    lists = ListAssignment({v: (2 * v, 2 * v + 1) for v in g.vertices})
    result = search(g, lists, Query("good", 14))
    assert result.found and lists.respects(result.witness, g.vertices)


def test_singleton_domains():
    g = cycle(6)
    domains = {v: (0,) for v in g.vertices}
    result = search_domains(g, domains, Query("good", 14))
    assert not result.found, "A monochromatic cycle is never good"
    domains[3] = (1,)
    result = search_domains(g, domains, Query("good", 14))
    assert result.found and result.witness[3] == 1


def test_pruned_and_leaf_search_agree():
    g = cycle(7)
    for query in (Query("pk_free", 3), Query("k_fragmented", 1), Query("good", 2)):
        pruned = search(g, _uniform(g), query)
        leaf = search(g, _uniform(g), query, prune=False)
        assert pruned.found == leaf.found, f"{query.describe()}: {pruned.found} vs {leaf.found}"


def test_satisfies_matches_brute_force():
    g = cycle(5)
    query = Query("pk_free", 3)
    brute = any(satisfies(query, g, c) for c in all_colorings(g.vertices))
    assert brute == search(g, _uniform(g), query).found


def test_budget_exceeded():
    g = cycle(6)
    try:
        search(g, _uniform(g), Query("good", 14), budget=1)
        assert False, "Expected BudgetExceeded"
    except BudgetExceeded as e:
        assert e.nodes > 1


def test_query_validation():
    for args in (("acyclic", 2), ("good", 0)):
        try:
            Query(*args)
            assert False, f"Expected BadParameter for {args}"
        except BadParameter:
            pass
    try:
        Query("good", 2, "sometimes")
        assert False, "Expected BadParameter for mode"
    except BadParameter:
        pass


# ---------------------------------------------------------------------------
# Lower-bound certificates
# ---------------------------------------------------------------------------

def test_gadget_lemma_small_t():
    assert verify_gadget_lemma(3), "Gadget disjunction fails for t=3"
    assert verify_gadget_lemma(4), "Gadget disjunction fails for t=4"


def test_gadget_lemma_t5():
    assert verify_gadget_lemma(5), "Gadget disjunction fails for t=5"


def test_gadget_lemma_range():
    try:
        verify_gadget_lemma(7)
        assert False, "Expected BadParameter"
    except BadParameter:
        pass


def test_girth5_example_bounds():
    g = girth5_example().graph
    lists = _uniform(g)
    assert not search(g, lists, Query("pk_free", 3, "forall")).found, "Every 2-coloring has a monochromatic P3"
    assert not search(g, lists, Query("k_defective", 1, "forall")).found, "No 1-defective 2-coloring"
    assert not search(g, lists, Query("k_fragmented", 2, "forall")).found, "No 2-fragmented 2-coloring"
    p4 = search(g, lists, Query("pk_free", 4))
    assert p4.found, "A 2-coloring without monochromatic P4 exists"
    assert metrics(g, p4.witness).max_mono_path_order <= 3


def test_g3_forces_monochromatic_p3():
    g = lower_bound_G(3)
    result = search(g, _uniform(g), Query("pk_free", 3, "forall"))
    assert not result.found, "G_3 admits no P3-free 2-coloring"


if __name__ == "__main__":
    print("Testing exact search...\n")

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
