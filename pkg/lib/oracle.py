"""Exact backtracking search over list colorings.

Vertices are assigned in degree-descending order. After every assignment the
monochromatic component of the new vertex is re-examined: any uncolored
neighbour for which the same color would already violate the property loses
that color, and a vertex left with a single color is assigned at once.

Supported properties (all monotone under growing a color class):
  good(k)          every monochromatic component is a path with <= k edges
  pk_free(k)       no monochromatic path on k vertices
  k_fragmented(k)  monochromatic components have <= k vertices
  k_defective(k)   monochromatic degree <= k
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import BadParameter, BudgetExceeded
from .graph import PlanarGraph
from .types import Coloring, ListAssignment, default_budget

PROPERTIES = ("good", "pk_free", "k_fragmented", "k_defective")
MODES = ("exists", "forall")
PROGRESS_EVERY = 1 << 20


@dataclass(frozen=True)
class Query:
    """What to search for.

    exists: find a coloring with the property.
    forall: certify that every coloring violates it; a coloring with the
    property is reported as the counterexample.
    """

    property: str
    k: int
    mode: str = "exists"

    def __post_init__(self):
        if self.property not in PROPERTIES:
            raise BadParameter(f"Unknown property: {self.property}. Available: {', '.join(PROPERTIES)}")
        if self.mode not in MODES:
            raise BadParameter(f"Unknown mode: {self.mode}. Available: {', '.join(MODES)}")
        if self.k < 1:
            raise BadParameter(f"property parameter must be positive, got {self.k}")

    def describe(self) -> str:
        return f"{self.mode} {self.property}({self.k})"


@dataclass
class SearchResult:
    query: Query
    witness: Coloring | None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.witness is not None

    def certificate(self) -> str:
        return f"UNSAT nodes={self.nodes}"

    def to_dict(self) -> dict:
        return {
            "format": 1,
            "query": {"property": self.query.property, "k": self.query.k, "mode": self.query.mode},
            "found": self.found,
            "nodes": self.nodes,
            "colors": {str(v): c for v, c in sorted(self.witness.items())} if self.witness else None,
        }


# ---------------------------------------------------------------------------
# Property checks on a candidate assignment
# ---------------------------------------------------------------------------

def _component_with(adj: Mapping[int, Sequence[int]], colors: Mapping[int, int], x: int, c: int) -> list[int]:
    """Component of color c containing x, treating x as colored c."""
    comp = [x]
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for z in adj[y]:
            if z not in seen and colors.get(z) == c:
                seen.add(z)
                comp.append(z)
                queue.append(z)
    return comp


def _has_path_on(adj: Mapping[int, Sequence[int]], members: set[int], k: int) -> bool:
    """Whether the subgraph induced by members contains a path on k vertices."""
    if k <= 1:
        return bool(members)
    for s in members:
        stack = [(s, iter([y for y in adj[s] if y in members]))]
        on_path = {s}
        while stack:
            x, it = stack[-1]
            y = next(it, None)
            if y is None:
                stack.pop()
                on_path.discard(x)
                continue
            if y in on_path:
                continue
            if len(stack) + 1 >= k:
                return True
            on_path.add(y)
            stack.append((y, iter([z for z in adj[y] if z in members])))
    return False


def violates(query: Query, adj: Mapping[int, Sequence[int]], colors: Mapping[int, int], x: int, c: int) -> bool:
    """Whether coloring x with c breaks the property, given the colored part."""
    k = query.k
    same = [y for y in adj[x] if colors.get(y) == c]
    prop = query.property
    if prop == "k_defective":
        if len(same) > k:
            return True
        return any(sum(1 for z in adj[y] if colors.get(z) == c) + 1 > k for y in same)
    if prop == "good":
        if len(same) > 2:
            return True
        if any(sum(1 for z in adj[y] if colors.get(z) == c) + 1 > 2 for y in same):
            return True
        comp = _component_with(adj, colors, x, c)
        if len(comp) - 1 > k:
            return True
        if len(same) == 2:
            # Both neighbours in one component closes a cycle.
            a, b = same
            reach = _component_with({v: [z for z in adj[v] if z != x] for v in comp}, colors, a, c)
            return b in reach
        return False
    comp = _component_with(adj, colors, x, c)
    if prop == "k_fragmented":
        return len(comp) > k
    return _has_path_on(adj, set(comp), k)


def satisfies(query: Query, g: PlanarGraph, colors: Mapping[int, int]) -> bool:
    """Check a complete coloring against the property."""
    from .coloring import metrics, is_good

    if query.property == "good":
        return bool(is_good(g, colors, query.k))
    m = metrics(g, colors)
    if query.property == "k_fragmented":
        return m.max_component_order <= query.k
    if query.property == "k_defective":
        return m.max_mono_degree <= query.k
    return m.max_mono_path_order < query.k


# ---------------------------------------------------------------------------
# Search engine
# ---------------------------------------------------------------------------

@dataclass
class _Search:
    g: PlanarGraph
    domains: dict[int, tuple[int, ...]]
    query: Query
    budget: int
    prune: bool = True
    symmetry: bool = False
    progress: Callable[[int], None] | None = None
    nodes: int = 0
    colors: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.adj = {v: self.g.rotation(v) for v in self.g.vertices}
        self.order = sorted(self.g.vertices, key=lambda v: (-self.g.degree(v), v))
        self.live: dict[int, set[int]] = {v: set(d) for v, d in self.domains.items()}

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.nodes)
        if self.progress and self.nodes % PROGRESS_EVERY == 0:
            self.progress(self.nodes)

    def run(self) -> Coloring | None:
        if any(not d for d in self.live.values()):
            return None
        if self._descend(0):
            return dict(self.colors)
        return None

    def _next_index(self, i: int) -> int:
        while i < len(self.order) and self.order[i] in self.colors:
            i += 1
        return i

    def _descend(self, i: int) -> bool:
        i = self._next_index(i)
        if i == len(self.order):
            return self.prune or satisfies(self.query, self.g, self.colors)
        v = self.order[i]
        choices = sorted(self.live[v])
        if self.symmetry and i == 0 and not self.colors:
            choices = choices[:1]
        for c in choices:
            trail: list[tuple[int, int]] = []
            assigned: list[int] = []
            if self._assign(v, c, trail, assigned) and self._descend(i + 1):
                return True
            for x in assigned:
                del self.colors[x]
            for x, col in trail:
                self.live[x].add(col)
        return False

    def _assign(self, v: int, c: int, trail: list, assigned: list) -> bool:
        """Assign v = c and propagate forced colors; False on conflict."""
        queue = deque([(v, c)])
        while queue:
            x, col = queue.popleft()
            if x in self.colors:
                if self.colors[x] != col:
                    return False
                continue
            self._tick()
            if self.prune and violates(self.query, self.adj, self.colors, x, col):
                return False
            self.colors[x] = col
            assigned.append(x)
            if not self.prune:
                continue
            for y in self._frontier(x, col):
                if col in self.live[y] and violates(self.query, self.adj, self.colors, y, col):
                    self.live[y].discard(col)
                    trail.append((y, col))
                    if not self.live[y]:
                        return False
                    if len(self.live[y]) == 1:
                        queue.append((y, next(iter(self.live[y]))))
        return True

    def _frontier(self, x: int, col: int) -> list[int]:
        comp = _component_with(self.adj, self.colors, x, col)
        out = set()
        for y in comp:
            for z in self.adj[y]:
                if z not in self.colors:
                    out.add(z)
        return sorted(out)


def search_domains(
    g: PlanarGraph,
    domains: Mapping[int, Sequence[int]],
    query: Query,
    budget: int | None = None,
    prune: bool = True,
    progress: Callable[[int], None] | None = None,
) -> SearchResult:
    """Search with arbitrary (possibly singleton) per-vertex domains."""
    doms = {v: tuple(sorted(set(domains[v]))) for v in g.vertices}
    uniform = len(set(doms.values())) <= 1
    engine = _Search(
        g, doms, query,
        budget=budget if budget is not None else default_budget(),
        prune=prune,
        symmetry=uniform,
        progress=progress,
    )
    witness = engine.run()
    return SearchResult(query, witness, engine.nodes)


def search(
    g: PlanarGraph,
    lists: ListAssignment,
    query: Query,
    budget: int | None = None,
    prune: bool = True,
    progress: Callable[[int], None] | None = None,
) -> SearchResult:
    lists.covers(g.vertices)
    return search_domains(g, {v: lists[v] for v in g.vertices}, query, budget, prune, progress)


# ---------------------------------------------------------------------------
# Exhaustive gadget check
# ---------------------------------------------------------------------------

GADGET_CHUNK = 1 << 18


def verify_gadget_lemma(t: int, budget: int | None = None) -> bool:
    """Exhaustively check the B_t disjunction behind the G_t induction.

    For every 2-coloring of B_t in which u and w share a color c, one of:
    some A_t copy has a monochromatic t-path; some color-c vertex is adjacent
    to w; or adjacent color-c vertices v, v' exist with v adjacent to u.
    """
    from .families import gadget_B

    if not 2 <= t <= 6:
        raise BadParameter(f"verify_gadget_lemma needs 2 <= t <= 6, got {t}")
    gadget = gadget_B(t)
    g = gadget.graph
    n = g.num_vertices
    total = 1 << n
    limit = budget if budget is not None else default_budget()
    if total > limit:
        raise BudgetExceeded(total)

    u, w = gadget.marks["u"], gadget.marks["w"]
    paths = [np.array(p) for p in gadget.paths]
    w_nbrs = np.array(g.rotation(w))
    pairs = np.array([(v, x) for v in g.rotation(u) for x in g.rotation(v) if x != u])
    shifts = np.arange(n, dtype=np.int64)

    for start in range(0, total, GADGET_CHUNK):
        codes = np.arange(start, min(start + GADGET_CHUNK, total), dtype=np.int64)
        bits = ((codes[:, None] >> shifts) & 1).astype(bool)
        cu, cw = bits[:, u], bits[:, w]
        relevant = cu == cw
        mono_path = np.zeros(len(codes), dtype=bool)
        for p in paths:
            block = bits[:, p]
            mono_path |= block.all(axis=1) | (~block).all(axis=1)
        near_w = (bits[:, w_nbrs] == cu[:, None]).any(axis=1)
        if len(pairs):
            near_u = ((bits[:, pairs[:, 0]] == cu[:, None]) & (bits[:, pairs[:, 1]] == cu[:, None])).any(axis=1)
        else:
            near_u = np.zeros(len(codes), dtype=bool)
        if not np.all(~relevant | mono_path | near_w | near_u):
            return False
    return True


def all_colorings(vertices: Sequence[int], colors: Sequence[int] = (0, 1)):
    """Every assignment of colors to vertices; for brute-force cross checks."""
    for combo in itertools.product(colors, repeat=len(vertices)):
        yield dict(zip(vertices, combo))
