"""Constructive 2-list-coloring of planar graphs of girth >= 6.

Each recursion level takes a graph h and either colors it outright or removes
a vertex set, schedules the remainder, and extends the remainder's coloring
afterwards. Priority per level:

  1. |h| <= threshold           exact search
  2. degree <= 1 vertices       peel, color against the single neighbour
  3. several components         solve separately
  4. edge augmentation          until every face is a chordless cycle <= 9
  5. FaceCycle / Deg2Path       delete, recurse, color against outside
  6. discharging                configuration X1..X4, delete V1, recurse, extend

The work list is explicit so depth does not hit the interpreter's recursion
limit on large inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, MutableMapping

from .coloring import is_good
from .configuration import (
    Configuration,
    ExtensionFailed,
    build_configurations,
    discharge,
    extend_into,
)
from .errors import AssumptionViolated, GirthTooSmall, ListTooSmall, RuleDeadlock
from .graph import EmbeddingEditor, PlanarGraph
from .oracle import Query, search_domains
from .paths import build_P, build_X0, check_nice, face_has_chord, is_acyclic
from .types import Coloring, ListAssignment, SolverConfig, TraceEvent


# ---------------------------------------------------------------------------
# Augmentation
# ---------------------------------------------------------------------------

def augment_to_maximal(g: PlanarGraph) -> PlanarGraph:
    """Add in-face edges between vertices at distance >= 5 until none is left.

    Only faces of length >= 10 can hold such a pair: a shorter face is a
    cycle (a repeated vertex needs two cycles of length >= 6) and any two of
    its vertices are within distance 4 along it.
    """
    editor = EmbeddingEditor(g)
    work = [f.walk for f in g.faces() if f.length >= 10]
    added = 0
    while work:
        walk = work.pop(0)
        pair = _augmenting_pair(editor, walk)
        if pair is None:
            continue
        inner, outer = editor.insert_chord(walk, *pair)
        added += 1
        work.extend(w for w in (inner, outer) if len(w) >= 10)
    result = editor.freeze() if added else g
    for face in result.faces():
        if result.num_vertices and (not face.is_simple or face.length > 9 or face_has_chord(result, face)):
            raise AssumptionViolated("Lemma2", {"face": face.id, "walk": list(face.walk)},
                                     f"face {face.id} of length {face.length} survives augmentation")
    return result


def _augmenting_pair(editor: EmbeddingEditor, walk: tuple[int, ...]) -> tuple[int, int] | None:
    m = len(walk)
    balls: dict[int, dict[int, int]] = {}

    def far(i: int, j: int) -> bool:
        a, b = walk[i], walk[j]
        if a == b:
            return False
        if a not in balls:
            balls[a] = editor.within(a, 4)
        return b not in balls[a]

    for i in range(m):
        j = (i + 5) % m
        if far(i, j):
            return (i, j)
    for i in range(m):
        for j in range(i + 1, m):
            if far(i, j):
                return (i, j)
    return None


# ---------------------------------------------------------------------------
# Face reductions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """FaceCycle: a face with one degree-2 vertex, the rest degree 3.
    Deg2Path: a facial path between two degree-2 vertices with degree-3 inner vertices."""

    kind: str
    face: int
    vertices: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "face": self.face, "vertices": list(self.vertices)}


def _face_reductions(g: PlanarGraph, face) -> list[Reduction]:
    walk, m = face.walk, face.length
    if m < 3:
        return []
    twos = [i for i, v in enumerate(walk) if g.degree(v) == 2]
    if not twos:
        return []
    others_three = all(g.degree(v) == 3 for i, v in enumerate(walk) if i not in twos)
    if len(twos) == 1 and others_three:
        return [Reduction("FaceCycle", face.id, walk)]
    out = []
    for k, a in enumerate(twos):
        if len(twos) == 1:
            break
        b = twos[(k + 1) % len(twos)]
        span = (b - a) % m
        if span > m - 2:
            continue
        segment = tuple(walk[(a + s) % m] for s in range(span + 1))
        if all(g.degree(v) == 3 for v in segment[1:-1]):
            out.append(Reduction("Deg2Path", face.id, segment))
    return out


def find_reductions(g: PlanarGraph, batch: bool = True) -> list[Reduction]:
    """Reductions whose closed neighbourhoods are pairwise disjoint, by face id."""
    chosen: list[Reduction] = []
    blocked: set[int] = set()
    for face in g.faces():
        for red in _face_reductions(g, face):
            if blocked & set(red.vertices):
                continue
            chosen.append(red)
            if not batch:
                return chosen
            for v in red.vertices:
                blocked.add(v)
                blocked.update(g.rotation(v))
    return chosen


def find_reduction(g: PlanarGraph) -> Reduction | None:
    found = find_reductions(g, batch=False)
    return found[0] if found else None


def apply_reduction_extension(g: PlanarGraph, reduction: Reduction, coloring: Mapping[int, int],
                              lists: ListAssignment) -> Coloring:
    """Color the reduction's vertices on top of a good coloring of the rest."""
    colors = dict(coloring)
    _extend_reduction(g, reduction, colors, lists)
    return colors


def _extend_reduction(g: PlanarGraph, reduction: Reduction, colors: MutableMapping[int, int],
                      lists: ListAssignment) -> None:
    members = set(reduction.vertices)
    for v in members:
        colors.pop(v, None)
    special = None
    for v in reduction.vertices:
        outs = [x for x in g.rotation(v) if x not in members]
        if not outs:
            special = v
            continue
        avoid = {colors[outs[0]]} if outs[0] in colors else set()
        choice = next((c for c in lists[v] if c not in avoid), None)
        if choice is None:
            raise ListTooSmall(v, len(lists[v]))
        colors[v] = choice
    if special is not None:
        # Only the FaceCycle degree-2 vertex sees no outside neighbour.
        used = {colors[v] for v in reduction.vertices if v != special}
        avoid = used if len(used) == 1 else set()
        colors[special] = next((c for c in lists[special] if c not in avoid), lists[special][0])


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------

@dataclass
class _Expand:
    graph: PlanarGraph
    depth: int


@dataclass
class _StripFrame:
    order: list[int]
    graph: PlanarGraph


@dataclass
class _ReductionFrame:
    graph: PlanarGraph
    reductions: list[Reduction]


@dataclass
class _ConfigFrame:
    graph: PlanarGraph
    configurations: list[Configuration]
    depth: int


@dataclass
class SolveResult:
    coloring: Coloring
    trace: list[TraceEvent] = field(default_factory=list)
    containment: list[tuple[int, ...]] = field(default_factory=list)
    configurations: list[Configuration] = field(default_factory=list)


class Solver:
    def __init__(self, lists: ListAssignment, config: SolverConfig | None = None,
                 progress: Callable[[str], None] | None = None):
        self.lists = lists
        self.config = config or SolverConfig()
        self.progress = progress
        self.colors: dict[int, int] = {}
        self.trace: list[TraceEvent] = []
        self.containment: list[tuple[int, ...]] = []
        self.configurations: list[Configuration] = []

    def _event(self, depth: int, lemma: str, size: int, removed=(), **detail) -> None:
        self.trace.append(TraceEvent(len(self.trace), depth, lemma, size, sorted(removed), detail))

    def run(self, g: PlanarGraph) -> SolveResult:
        stack: list[object] = [_Expand(g, 0)]
        while stack:
            item = stack.pop()
            if isinstance(item, _Expand):
                self._expand(item, stack)
            elif isinstance(item, _StripFrame):
                self._extend_strip(item)
            elif isinstance(item, _ReductionFrame):
                for red in item.reductions:
                    _extend_reduction(item.graph, red, self.colors, self.lists)
            else:
                self._extend_configurations(item)
        return SolveResult(dict(self.colors), self.trace, self.containment, self.configurations)

    # -- expansion ---------------------------------------------------------

    def _expand(self, item: _Expand, stack: list) -> None:
        h, depth = item.graph, item.depth
        n = h.num_vertices
        if n == 0:
            return
        if self.progress and depth % 10 == 0:
            self.progress(f"depth {depth}: {n} vertices")

        if n <= self.config.threshold:
            self._oracle(h, depth)
            return

        order = peel_order(h)
        if order:
            self._event(depth, "strip", n, order)
            stack.append(_StripFrame(order, h))
            stack.append(_Expand(h.delete_vertices(order), depth + 1))
            return

        if not h.is_connected():
            self._event(depth, "split", n, (), components=len(h.components))
            for comp in reversed(h.components):
                stack.append(_Expand(h.subgraph(comp), depth + 1))
            return

        h_aug = augment_to_maximal(h)
        if h_aug.num_edges != h.num_edges:
            self._event(depth, "augment", n, (), added=h_aug.num_edges - h.num_edges)

        reductions = find_reductions(h_aug, self.config.batch)
        if reductions:
            removed = {v for red in reductions for v in red.vertices}
            for red in reductions:
                self._event(depth, red.kind, n, red.vertices, face=red.face)
            stack.append(_ReductionFrame(h_aug, reductions))
            stack.append(_Expand(h_aug.delete_vertices(removed), depth + 1))
            return

        P = build_P(h_aug)
        X0 = build_X0(h_aug, P)
        nice = check_nice(h_aug, X0)
        if not nice.ok or not is_acyclic(X0):
            raise AssumptionViolated("Lemma5", {"nice": nice.to_dict(), "acyclic": is_acyclic(X0)},
                                     "X0 is not nice and acyclic")
        result = discharge(h_aug, X0)
        confs = build_configurations(h_aug, X0, result, self.config.batch)
        removed = set()
        for conf in confs:
            removed |= conf.V1
            self._event(depth, conf.kind, n, conf.V1, root=conf.root, paths=len(conf.system))
        self.configurations.extend(confs)
        stack.append(_ConfigFrame(h_aug, confs, depth))
        stack.append(_Expand(h_aug.delete_vertices(removed), depth + 1))

    def _oracle(self, h: PlanarGraph, depth: int) -> None:
        found = search_domains(h, {v: self.lists[v] for v in h.vertices},
                               Query("good", self.config.max_len), self.config.oracle_budget)
        if found.witness is None:
            raise AssumptionViolated("Theorem1", {"vertices": list(h.vertices), "edges": [list(e) for e in h.edges]},
                                     "small instance has no good coloring")
        self.colors.update(found.witness)
        self._event(depth, "oracle", h.num_vertices, h.vertices, nodes=found.nodes)

    # -- extension ---------------------------------------------------------

    def _extend_strip(self, frame: _StripFrame) -> None:
        for v in reversed(frame.order):
            # At most one neighbour is colored: the one left when v was peeled.
            avoid = {self.colors[x] for x in frame.graph.rotation(v) if x in self.colors}
            choice = next((c for c in self.lists[v] if c not in avoid), None)
            if choice is None:
                raise ListTooSmall(v, len(self.lists[v]))
            self.colors[v] = choice

    def _extend_configurations(self, frame: _ConfigFrame) -> None:
        for conf in frame.configurations:
            try:
                self.containment.extend(
                    extend_into(frame.graph, conf, self.colors, self.lists, self.config.max_len))
            except ExtensionFailed as exc:
                raise AssumptionViolated("Lemma6", {"reason": exc.reason, "witness": exc.witness,
                                                    "configuration": conf.to_dict()},
                                         f"{conf.kind} rooted at {conf.root}: extension failed ({exc.reason})") from exc
            except RuleDeadlock as exc:
                raise AssumptionViolated("Lemma6", {"reason": "deadlock", "witness": sorted(exc.uncolored),
                                                    "configuration": conf.to_dict()},
                                         f"{conf.kind} rooted at {conf.root}: extension rules deadlocked") from exc


def peel_order(h: PlanarGraph) -> list[int]:
    """Vertices removed by repeatedly deleting degree <= 1 vertices, in removal order."""
    degree = {v: h.degree(v) for v in h.vertices}
    queue = [v for v in h.vertices if degree[v] <= 1]
    removed: list[int] = []
    gone: set[int] = set()
    while queue:
        v = queue.pop()
        if v in gone:
            continue
        gone.add(v)
        removed.append(v)
        for x in h.rotation(v):
            if x not in gone:
                degree[x] -= 1
                if degree[x] == 1:
                    queue.append(x)
    return removed


def solve(g: PlanarGraph, lists: ListAssignment | None = None, config: SolverConfig | None = None,
          progress: Callable[[str], None] | None = None) -> Coloring:
    """Good coloring of a planar graph of girth >= 6 from lists of size >= 2."""
    return solve_traced(g, lists, config, progress).coloring


def solve_traced(g: PlanarGraph, lists: ListAssignment | None = None, config: SolverConfig | None = None,
                 progress: Callable[[str], None] | None = None) -> SolveResult:
    config = config or SolverConfig()
    lists = lists if lists is not None else ListAssignment.uniform(g.vertices)
    lists.covers(g.vertices)
    girth = g.girth()
    if girth < 6:
        raise GirthTooSmall(int(girth))
    result = Solver(lists, config, progress).run(g)
    coloring = {v: result.coloring[v] for v in g.vertices}
    result.coloring = coloring
    if config.verify:
        verdict = is_good(g, coloring, config.max_len)
        if not verdict.ok:
            raise AssumptionViolated("Theorem1", verdict.witness, "solver output is not good")
        if not lists.respects(coloring, g.vertices):
            raise AssumptionViolated("Theorem1", None, "solver output leaves the lists")
    return result
