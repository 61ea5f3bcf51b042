#!/usr/bin/env python3
"""Tests for the graph families: gadgets, the lower-bound chain and generators."""

from __future__ import annotations

import math
import sys
from pathlib import Path

_repo_root = Path(__file__).resolve().parent.parent
if str(_repo_root) not in sys.path:
    sys.path.insert(0, str(_repo_root))

from lib.errors import BadParameter
from lib.families import (
    FAMILIES,
    cycle,
    gadget_A,
    gadget_B,
    get_family,
    girth5_example,
    hex_patch,
    lower_bound_G,
    lower_bound_marked,
    random_planar_girth6,
    subdivide,
    subdivided_delaunay,
    subdivided_solid,
)
from lib.graph import check_euler


def test_gadget_a_shape():
    a = gadget_A(5)
    g = a.graph
    assert g.num_vertices == 7, f"A_5 has 7 vertices, got {g.num_vertices}"
    assert g.num_edges == 9, f"A_5 has 9 edges, got {g.num_edges}"
    u, w = a.marks["u"], a.marks["w"]
    assert g.degree(u) == 3 and g.degree(w) == 2, f"deg(u)={g.degree(u)}, deg(w)={g.degree(w)}"
    assert g.distance(u, w) == 3, f"u and w should be at distance 3, got {g.distance(u, w)}"
    assert g.girth() == 4


def test_gadget_b_counts():
    b = gadget_B(3)
    assert b.graph.num_vertices == 11, f"B_3 has 11 vertices, got {b.graph.num_vertices}"
    assert len(b.paths) == 3, "Main copy plus one copy per neighbour of u"
    assert b.anchors[0] == b.marks["u"]
    for path, anchor in zip(b.paths[1:], b.anchors[1:]):
        assert anchor in b.paths[0], f"Copy anchor {anchor} should lie on the main path"
        assert len(path) == 3


def test_gadget_rejects_small_t():
    for builder in (gadget_A, gadget_B, lower_bound_G):
        try:
            builder(1)
            assert False, f"{builder.__name__}(1) should fail"
        except BadParameter:
            pass


def test_lower_bound_base_is_c5():
    assert lower_bound_G(2) == cycle(5), "G_2 is the 5-cycle"


def test_lower_bound_g3():
    g = lower_bound_G(3)
    assert g.num_vertices == 95, f"G_3 has 95 vertices, got {g.num_vertices}"
    marks = lower_bound_marked(3).marks
    assert sorted(marks) == [f"x{i}" for i in range(5)]
    for i in range(5):
        assert g.has_edge(i, (i + 1) % 5), f"Base cycle edge {i}-{(i + 1) % 5} missing"
    check_euler(g)


def test_lower_bound_chain_keeps_ids():
    g3 = lower_bound_G(3)
    g4 = lower_bound_G(4)
    for u, v in g3.edges:
        assert g4.has_edge(u, v), f"G_3 edge {u}-{v} missing from G_4"


def test_gadget_girth_and_distance_sweep():
    for t in range(2, 9):
        for builder in (gadget_A, gadget_B):
            marked = builder(t)
            g = marked.graph
            u, w = marked.marks["u"], marked.marks["w"]
            assert g.distance(u, w) == 3, f"{builder.__name__}({t}): dist(u,w) = {g.distance(u, w)}"
            check_euler(g)
        if t >= 3:
            assert gadget_A(t).graph.girth() == 4, f"A_{t} girth"
            assert gadget_B(t).graph.girth() == 4, f"B_{t} girth"
    assert gadget_A(2).graph.girth() == math.inf, "A_2 is the path u v1 v2 w"
    assert gadget_B(2).graph.girth() == 5


def test_lower_bound_girth():
    for t in (3, 4):
        g = lower_bound_G(t)
        assert g.girth() == 4, f"G_{t} girth {g.girth()}"
        check_euler(g)


def test_lower_bound_copies_on_opposite_sides():
    g = lower_bound_G(3)
    base = set(range(5))
    for x, y in cycle(5).edges:
        left = g.face_of_dart(x, y).vertices
        right = g.face_of_dart(y, x).vertices
        assert not (left | right) & (base - {x, y}), f"Both faces at {x}-{y} should lie inside its copies"
        assert left & right == {x, y}, f"Faces at {x}-{y} share {sorted(left & right)}"


def test_girth5_example():
    ex = girth5_example()
    g = ex.graph
    assert g.num_vertices == 50, f"Got {g.num_vertices}"
    assert g.girth() == 5
    for name in ("u", "v", "u1", "w3"):
        assert name in ex.marks, f"Missing mark {name}"
    assert g.has_edge(ex.marks["u"], ex.marks["v"])


def test_hex_patch_girth_and_degrees():
    g = hex_patch(4, 4)
    assert g.girth() == 6
    assert g.min_degree == 2 and g.max_degree == 3
    assert g.is_connected()


def test_random_instance_properties():
    g = random_planar_girth6(200, seed=3)
    assert g.num_vertices >= 200, f"Got {g.num_vertices} vertices"
    assert g.girth() >= 6, f"Girth {g.girth()}"
    assert g.is_connected()
    check_euler(g)


def test_random_instance_deterministic():
    a = random_planar_girth6(120, seed=7)
    b = random_planar_girth6(120, seed=7)
    assert a == b, "Same seed should give the same graph"


def test_subdivided_solids():
    octa = subdivided_solid("octahedron")
    assert octa.num_vertices == 18 and octa.num_edges == 24
    icosa = subdivided_solid("icosahedron")
    assert icosa.num_vertices == 42 and icosa.num_edges == 60
    for g in (octa, icosa):
        assert g.girth() == 6
        assert all(f.length == 6 for f in g.faces()), "Subdivided triangles are hexagons"
        assert {g.degree(v) for v in g.vertices} <= {2, 4, 5}
        check_euler(g)
    try:
        subdivided_solid("cube")
        assert False, "Expected BadParameter"
    except BadParameter:
        pass


def test_subdivided_delaunay():
    g = subdivided_delaunay(40, seed=3)
    assert g.girth() == 6, f"Girth {g.girth()}"
    assert g.is_connected()
    check_euler(g)
    original = [v for v in g.vertices if v < 40]
    assert all(g.degree(v) == 2 for v in g.vertices if v >= 40), "Subdivision vertices have degree 2"
    assert len(original) == 40
    assert subdivided_delaunay(40, seed=3) == g, "Same seed should give the same graph"


def test_subdivide_doubles_girth():
    g = subdivide(cycle(5))
    assert g.num_vertices == 10 and g.girth() == 10


def test_euler_charge_bound():
    graphs = [hex_patch(3, 3), random_planar_girth6(200, seed=3), subdivided_solid("octahedron"),
              subdivided_solid("icosahedron"), subdivided_delaunay(30, seed=1)]
    for g in graphs:
        assert g.girth() >= 6 and g.is_connected()
        assert 2 * g.num_edges - 3 * g.num_vertices <= -6, f"2e - 3n = {2 * g.num_edges - 3 * g.num_vertices}"


def test_registry():
    assert set(FAMILIES) == {"cycle", "hex", "A", "B", "G", "girth5", "random", "solid", "delaunay"}
    assert get_family("cycle")(7).num_vertices == 7
    try:
        get_family("petersen")
        assert False, "Expected BadParameter"
    except BadParameter:
        pass


def test_cycle_rejects_short():
    try:
        cycle(2)
        assert False, "Expected BadParameter"
    except BadParameter:
        pass


if __name__ == "__main__":
    print("Testing graph families...\n")

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
