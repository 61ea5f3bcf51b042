"""Directed facial paths and path systems.

A facial path runs along a face's counterclockwise walk from its
out-endvertex to its in-endvertex; all inner vertices have degree 3. A path
system is a set of such paths in which no vertex is an endpoint of one path
and an inner vertex of another.

Niceness conditions on a path system X (degrees are taken in the graph):
  D1  an edge on two paths of X joins two vertices of degree 3
  D2  degree-2 vertices have outdegree 0
  D3  degree-3 vertices have indegree 0 and outdegree 0
  D4  a degree-4 vertex has positive indegree only if its outdegree is 3
  D5  vertices of degree >= 5 have indegree 0
Almost nice with root r: D1-D5 hold at every vertex other than r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import PreconditionViolated
from .graph import Edge, PlanarGraph, edge_key

NICE_PROPERTIES = ("D1", "D2", "D3", "D4", "D5")


@dataclass(frozen=True, order=True)
class FacialPath:
    face: int
    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 2:
            raise ValueError("a facial path needs at least one edge")

    @property
    def out_vertex(self) -> int:
        return self.vertices[0]

    @property
    def in_vertex(self) -> int:
        return self.vertices[-1]

    @property
    def inner(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def first_edge(self) -> Edge:
        return edge_key(self.vertices[0], self.vertices[1])

    @property
    def last_edge(self) -> Edge:
        return edge_key(self.vertices[-2], self.vertices[-1])

    def edges(self) -> list[Edge]:
        return [edge_key(a, b) for a, b in zip(self.vertices, self.vertices[1:])]

    def dump(self) -> str:
        middle = " ".join(str(v) for v in self.inner)
        body = f"out:{self.out_vertex} {middle} in:{self.in_vertex}" if middle else f"out:{self.out_vertex} in:{self.in_vertex}"
        return f"face:{self.face} {body}"


class PathSystem:
    """Immutable set of facial paths kept in canonical sorted order."""

    def __init__(self, paths: Iterable[FacialPath] = ()):
        self.paths: tuple[FacialPath, ...] = tuple(sorted(set(paths)))

    def __iter__(self):
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def __contains__(self, p: object) -> bool:
        return p in self._path_set

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PathSystem) and self.paths == other.paths

    def __hash__(self) -> int:
        return hash(self.paths)

    def __or__(self, other: PathSystem) -> PathSystem:
        return PathSystem(self.paths + other.paths)

    def __repr__(self) -> str:
        return f"PathSystem({len(self.paths)} paths)"

    def with_path(self, p: FacialPath) -> PathSystem:
        return PathSystem(self.paths + (p,))

    @cached_property
    def _path_set(self) -> frozenset[FacialPath]:
        return frozenset(self.paths)

    @cached_property
    def out_count(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.paths:
            out[p.out_vertex] = out.get(p.out_vertex, 0) + 1
        return out

    @cached_property
    def in_count(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.paths:
            out[p.in_vertex] = out.get(p.in_vertex, 0) + 1
        return out

    @cached_property
    def edge_count(self) -> dict[Edge, int]:
        out: dict[Edge, int] = {}
        for p in self.paths:
            for e in p.edges():
                out[e] = out.get(e, 0) + 1
        return out

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p.vertices)

    @cached_property
    def endvertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in (p.out_vertex, p.in_vertex))

    @cached_property
    def inner_vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p.inner)

    @cached_property
    def successors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for p in self.paths:
            out.setdefault(p.out_vertex, []).append(p.in_vertex)
        return out

    def incoming(self, v: int) -> list[FacialPath]:
        return [p for p in self.paths if p.in_vertex == v]

    def outgoing(self, v: int) -> list[FacialPath]:
        return [p for p in self.paths if p.out_vertex == v]

    def dump(self) -> str:
        return "\n".join(p.dump() for p in self.paths)


# ---------------------------------------------------------------------------
# Degrees, occupation, reachability
# ---------------------------------------------------------------------------

def indeg(X: PathSystem, v: int) -> int:
    return X.in_count.get(v, 0)


def outdeg(X: PathSystem, v: int) -> int:
    return X.out_count.get(v, 0)


def occupied(X: PathSystem, p: FacialPath) -> bool:
    """True iff the first or last edge of p lies on some path of X."""
    return p.first_edge in X.edge_count or p.last_edge in X.edge_count


def reachable_from(X: PathSystem, u: int) -> set[int]:
    """Vertices reachable from u along out -> in steps (u itself excluded unless on a cycle)."""
    seen: set[int] = set()
    stack = list(X.successors.get(u, ()))
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(X.successors.get(x, ()))
    return seen


def reaches(X: PathSystem, u: int, v: int) -> bool:
    return v in reachable_from(X, u)


def is_acyclic(X: PathSystem) -> bool:
    # Iterative colouring DFS over the endpoint digraph.
    state: dict[int, int] = {}
    for s in X.successors:
        if s in state:
            continue
        stack = [(s, iter(X.successors.get(s, ())))]
        state[s] = 1
        while stack:
            x, it = stack[-1]
            y = next(it, None)
            if y is None:
                state[x] = 2
                stack.pop()
                continue
            if y == x:
                continue
            st = state.get(y, 0)
            if st == 1:
                return False
            if st == 0:
                state[y] = 1
                stack.append((y, iter(X.successors.get(y, ()))))
    return True


def forward_closure(X: PathSystem, w: int) -> PathSystem:
    """X+(w): paths whose out-endvertex is w or reachable from w."""
    sources = reachable_from(X, w) | {w}
    return PathSystem(p for p in X.paths if p.out_vertex in sources)


# ---------------------------------------------------------------------------
# Niceness
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    """Per-property outcome; failures maps a property tag to a witness."""

    failures: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, tag: str, witness: object) -> None:
        self.failures.setdefault(tag, witness)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "failures": {k: repr(v) for k, v in self.failures.items()}}


def _check_properties(g: PlanarGraph, X: PathSystem, root: int | None) -> CheckReport:
    report = CheckReport()
    for e, count in X.edge_count.items():
        if count >= 2:
            bad = [v for v in e if g.degree(v) != 3 and v != root]
            if bad:
                report.fail("D1", e)
    for v in sorted(X.vertices):
        if v == root:
            continue
        d = g.degree(v)
        i, o = indeg(X, v), outdeg(X, v)
        if d == 2 and o != 0:
            report.fail("D2", v)
        elif d == 3 and (i != 0 or o != 0):
            report.fail("D3", v)
        elif d == 4 and i > 0 and o != 3:
            report.fail("D4", v)
        elif d >= 5 and i != 0:
            report.fail("D5", v)
    return report


def check_nice(g: PlanarGraph, X: PathSystem) -> CheckReport:
    return _check_properties(g, X, None)


def check_almost_nice(g: PlanarGraph, X: PathSystem, root: int) -> CheckReport:
    return _check_properties(g, X, root)


def check_path_system(g: PlanarGraph, X: PathSystem) -> CheckReport:
    """Structural validity: facial consecutive edges, degree-3 inner vertices,
    endpoints never inner elsewhere."""
    report = CheckReport()
    for p in X.paths:
        a, b = p.vertices[0], p.vertices[1]
        if not g.has_edge(a, b) or g.face_of_dart(a, b).id != p.face:
            report.fail("facial", p)
            continue
        face = g.face(p.face)
        m = face.length
        i = face.position(a, b)
        if p.length > m or any(face.walk[(i + k) % m] != v for k, v in enumerate(p.vertices)):
            report.fail("facial", p)
        for v in p.inner:
            if g.degree(v) != 3:
                report.fail("inner-degree", v)
    clash = X.endvertices & X.inner_vertices
    if clash:
        report.fail("endpoint-inner", min(clash))
    return report


# ---------------------------------------------------------------------------
# Construction of P and X0
# ---------------------------------------------------------------------------

def _require_structure(g: PlanarGraph) -> None:
    if not g.is_connected():
        raise PreconditionViolated("Lemma1", "graph is not connected")
    if g.min_degree < 2:
        raise PreconditionViolated("Lemma1", "graph has a vertex of degree < 2")
    for face in g.faces():
        if not face.is_simple or face.length > 9 or face_has_chord(g, face):
            raise PreconditionViolated("Lemma2", f"face {face.id} is not a chordless cycle of length <= 9")


def face_has_chord(g: PlanarGraph, face) -> bool:
    members = face.vertices
    m = face.length
    for i, v in enumerate(face.walk):
        allowed = {face.walk[(i - 1) % m], face.walk[(i + 1) % m]}
        for x in g.rotation(v):
            if x in members and x not in allowed:
                return True
    return False


def face_segments(g: PlanarGraph, face) -> list[FacialPath]:
    """Partition a face walk into ccw paths between consecutive non-3 vertices."""
    walk = face.walk
    m = face.length
    anchors = [i for i, v in enumerate(walk) if g.degree(v) != 3]
    if len(anchors) < 2:
        return []
    out = []
    for k, a in enumerate(anchors):
        b = anchors[(k + 1) % len(anchors)]
        span = (b - a) % m
        out.append(FacialPath(face.id, tuple(walk[(a + s) % m] for s in range(span + 1))))
    return out


def build_P(g: PlanarGraph) -> PathSystem:
    """Face segments with in-endvertex of degree 2 or 4 and out-endvertex of degree >= 4."""
    _require_structure(g)
    paths = []
    for face in g.faces():
        for p in face_segments(g, face):
            if g.degree(p.in_vertex) in (2, 4) and g.degree(p.out_vertex) >= 4:
                if p.length > 8:
                    raise PreconditionViolated("Lemma2", f"path {p.dump()} has more than 8 edges")
                paths.append(p)
    return PathSystem(paths)


@dataclass(frozen=True)
class X0Selection:
    order: int
    step: int
    vertex: int
    path: FacialPath


@dataclass
class X0Build:
    system: PathSystem
    selections: list[X0Selection]


def build_X0_traced(g: PlanarGraph, P: PathSystem) -> X0Build:
    """Select X0 from P and record which step picked each path."""
    by_in: dict[int, list[FacialPath]] = {}
    for p in P:
        by_in.setdefault(p.in_vertex, []).append(p)
    chosen: list[FacialPath] = []
    selections: list[X0Selection] = []
    edge_use: dict[Edge, int] = {}
    out_count: dict[int, int] = {}

    def take(v: int, step: int) -> bool:
        added = False
        for p in sorted(by_in.get(v, ()), key=lambda q: (q.face, q.vertices)):
            if p.first_edge in edge_use or p.last_edge in edge_use:
                continue
            chosen.append(p)
            selections.append(X0Selection(len(selections) + 1, step, v, p))
            for e in p.edges():
                edge_use[e] = edge_use.get(e, 0) + 1
            out_count[p.out_vertex] = out_count.get(p.out_vertex, 0) + 1
            added = True
        return added

    for v in g.vertices:
        if g.degree(v) == 2:
            take(v, 1)
    received: dict[int, int] = {}
    for p in chosen:
        received[p.in_vertex] = received.get(p.in_vertex, 0) + 1
    for v in g.vertices:
        if g.degree(v) == 2 and received.get(v, 0) != 2:
            raise PreconditionViolated("Lemma3", f"degree-2 vertex {v} does not receive two paths")

    done: set[int] = set()
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in done or g.degree(v) != 4 or out_count.get(v, 0) != 3:
                continue
            done.add(v)
            if take(v, 2):
                changed = True
    return X0Build(PathSystem(chosen), selections)


def build_X0(g: PlanarGraph, P: PathSystem) -> PathSystem:
    return build_X0_traced(g, P).system
