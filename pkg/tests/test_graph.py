#!/usr/bin/env python3
"""Tests for the embedded graph core: faces, girth, distances and edits."""

from __future__ import annotations

import math
import sys
from pathlib import Path

_repo_root = Path(__file__).resolve().parent.parent
if str(_repo_root) not in sys.path:
    sys.path.insert(0, str(_repo_root))

from lib.errors import AlreadyAdjacent, BadParameter, InconsistentRotation, NotOnFace, NotPlanar
from lib.families import cycle, hex_patch, path_graph
from lib.graph import PlanarGraph, build_graph, check_euler, relabel


def _two_cycles(n: int) -> PlanarGraph:
    a = cycle(n)
    b = relabel(cycle(n), {v: v + n for v in range(n)})
    return PlanarGraph({v: a.rotation(v) for v in a.vertices} | {v: b.rotation(v) for v in b.vertices})


def _union(*graphs: PlanarGraph) -> PlanarGraph:
    return PlanarGraph({v: h.rotation(v) for h in graphs for v in h.vertices})


# ---------------------------------------------------------------------------
# Faces
# ---------------------------------------------------------------------------

def test_hexagon_has_two_faces():
    g = cycle(6)
    lengths = sorted(f.length for f in g.faces())
    assert lengths == [6, 6], f"Expected two 6-faces, got {lengths}"
    assert all(f.is_simple for f in g.faces()), "Cycle faces should be simple"


def test_face_of_dart_is_left_face():
    g = cycle(6)
    assert g.face_of_dart(0, 1).walk == (0, 1, 2, 3, 4, 5), f"Got {g.face_of_dart(0, 1).walk}"
    assert g.face_of_dart(1, 0).walk == (0, 5, 4, 3, 2, 1), f"Got {g.face_of_dart(1, 0).walk}"
    assert g.face_of_dart(0, 1).id != g.face_of_dart(1, 0).id, "Opposite darts of a cycle lie on different faces"


def test_face_of_non_edge_raises():
    g = cycle(6)
    try:
        g.face_of_dart(0, 3)
        assert False, "Expected BadParameter"
    except BadParameter:
        pass


def test_tree_has_single_face():
    g = path_graph(4)
    faces = g.faces()
    assert len(faces) == 1, f"Expected one face, got {len(faces)}"
    assert faces[0].length == 6, f"Tree walk should traverse each edge twice, got {faces[0].length}"
    assert not faces[0].is_simple, "Tree face walk repeats vertices"


def test_isolated_vertex_face():
    g = PlanarGraph({7: ()})
    faces = g.faces()
    assert len(faces) == 1 and faces[0].length == 0, f"Got {faces}"


def test_face_lengths_sum_to_twice_edges():
    g = hex_patch(3, 4)
    total = sum(f.length for f in g.faces())
    assert total == 2 * g.num_edges, f"Face lengths sum {total} != {2 * g.num_edges}"


def test_hex_patch_cells():
    g = hex_patch(2, 2)
    hexes = [f for f in g.faces() if f.length == 6]
    assert len(hexes) == 4, f"Expected 4 hexagonal cells, got {len(hexes)}"
    check_euler(g)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def test_k5_not_planar():
    edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    try:
        build_graph(edges)
        assert False, "Expected NotPlanar"
    except NotPlanar:
        pass


def test_k4_embedding():
    edges = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    g = build_graph(edges)
    assert len(g.faces()) == 4, f"K4 has 4 faces, got {len(g.faces())}"
    assert all(f.length == 3 for f in g.faces()), "K4 faces are triangles"
    assert g.girth() == 3


def test_loop_and_repeated_edge_rejected():
    for edges in ([(0, 0)], [(0, 1), (1, 0)]):
        try:
            build_graph(edges)
            assert False, f"Expected BadParameter for {edges}"
        except BadParameter:
            pass


def test_rotation_must_match_edges():
    try:
        build_graph([(0, 1)], rotation={0: (1,), 1: ()})
        assert False, "Expected InconsistentRotation"
    except InconsistentRotation:
        pass


def test_rotation_round_trip():
    g = hex_patch(2, 3)
    again = build_graph(g.edges, rotation=g.rotation_system())
    assert again == g, "Rebuilding from the rotation system should give an equal graph"


def test_isolated_vertices_kept():
    g = build_graph([(0, 1)], vertices=[0, 1, 5])
    assert g.vertices == (0, 1, 5), f"Got {g.vertices}"
    assert g.degree(5) == 0


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

def test_girth():
    assert cycle(6).girth() == 6
    assert cycle(5).girth() == 5
    assert path_graph(5).girth() == math.inf
    assert hex_patch(3, 3).girth() == 6


def test_girth_with_tree_components():
    c = cycle(6)
    p = relabel(path_graph(5), {v: v + 6 for v in range(5)})
    q = relabel(path_graph(4), {v: v + 11 for v in range(4)})
    assert _union(p, q).girth() == math.inf, "Two paths form a forest"
    assert _union(c, p).girth() == 6, "Fewer edges than vertices does not rule out a cycle"


def test_distance_and_ball():
    g = cycle(8)
    assert g.distance(0, 4) == 4
    assert g.distance(0, 4, limit=3) == math.inf
    assert set(g.ball(0, 2)) == {0, 1, 2, 6, 7}, f"Got {g.ball(0, 2)}"


def test_components():
    g = _two_cycles(6)
    assert len(g.components) == 2
    assert not g.is_connected()
    assert min(g.components[1]) == 6


def test_delete_vertices():
    g = cycle(6).delete_vertices([0])
    assert g.num_vertices == 5 and g.num_edges == 4
    assert g.girth() == math.inf
    assert 0 not in g


def test_subgraph_keeps_rotation_order():
    g = hex_patch(2, 2)
    keep = sorted(g.vertices)[:8]
    sub = g.subgraph(keep)
    for v in sub.vertices:
        expected = tuple(x for x in g.rotation(v) if x in set(keep))
        assert sub.rotation(v) == expected, f"Rotation of {v} changed"


# ---------------------------------------------------------------------------
# Edits
# ---------------------------------------------------------------------------

def test_add_edge_in_face_splits_it():
    g = cycle(10)
    face = g.face_of_dart(0, 1)
    h = g.add_edge_in_face(face.id, 0, 5)
    lengths = sorted(f.length for f in h.faces())
    assert lengths == [6, 6, 10], f"Got {lengths}"
    assert h.has_edge(0, 5)
    assert h.girth() == 6
    check_euler(h)


def test_add_edge_in_face_errors():
    g = cycle(10)
    face = g.face_of_dart(0, 1)
    try:
        g.add_edge_in_face(face.id, 0, 1)
        assert False, "Expected AlreadyAdjacent"
    except AlreadyAdjacent:
        pass
    h = g.add_edge_in_face(face.id, 0, 5)
    small = h.face_of_dart(0, 1)
    try:
        h.add_edge_in_face(small.id, 0, 8)
        assert False, "Expected NotOnFace"
    except NotOnFace:
        pass


def test_delete_edge():
    g = cycle(6).delete_edge(0, 1)
    assert not g.has_edge(0, 1)
    assert g.num_edges == 5
    try:
        g.delete_edge(0, 1)
        assert False, "Expected BadParameter"
    except BadParameter:
        pass


def test_add_then_delete_edge_restores_graph():
    for g in (cycle(10), hex_patch(2, 2)):
        for face in g.faces():
            a, b = face.walk[0], face.walk[2]
            h = g.add_edge_in_face(face.id, a, b)
            check_euler(h)
            assert h.num_edges == g.num_edges + 1
            restored = h.delete_edge(a, b)
            assert restored == g, f"Face {face.id}: removing {a}-{b} should give back the original embedding"


if __name__ == "__main__":
    print("Testing graph core...\n")

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
