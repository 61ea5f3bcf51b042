"""Monochromatic components, goodness verdicts and the defect metric family.

k-defective bounds the degree inside a color class, k-fragmented bounds the
order of a monochromatic component, P_k-free forbids monochromatic paths on
k vertices. A coloring is good when every monochromatic component is a path
with at most max_len edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .errors import UncoloredVertex
from .graph import PlanarGraph
from .types import DEFAULT_MAX_LEN, Coloring

# Step cap for the exhaustive longest-path search on components that are
# neither paths, cycles nor trees.
LONGEST_PATH_STEPS = 200_000


@dataclass(frozen=True)
class MonoComponent:
    vertices: tuple[int, ...]
    color: int
    shape: str  # "path", "cycle" or "other"
    edges: int
    max_degree: int

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int | None:
        """Number of edges when the component is a path."""
        return self.edges if self.shape == "path" else None

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "color": self.color,
            "shape": self.shape,
            "edges": self.edges,
            "max_degree": self.max_degree,
        }


@dataclass
class Verdict:
    ok: bool
    witness: MonoComponent | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class Metrics:
    max_mono_degree: int = 0
    max_component_order: int = 0
    max_mono_path_order: int = 0
    exact: bool = True

    def to_dict(self) -> dict:
        return {
            "max_mono_degree": self.max_mono_degree,
            "max_component_order": self.max_component_order,
            "max_mono_path_order": self.max_mono_path_order,
            "exact": self.exact,
        }


@dataclass
class Report:
    """Verifier output: verdict, metrics and per-shape counts."""

    good: bool
    max_len: int
    metrics: Metrics
    components: int
    shapes: dict[str, int] = field(default_factory=dict)
    witness: MonoComponent | None = None

    def to_dict(self) -> dict:
        return {
            "format": 1,
            "good": self.good,
            "max_len": self.max_len,
            "metrics": self.metrics.to_dict(),
            "components": self.components,
            "shapes": dict(self.shapes),
            "witness": self.witness.to_dict() if self.witness else None,
        }


def _color_of(c: Mapping[int, int], v: int) -> int:
    try:
        return c[v]
    except KeyError:
        raise UncoloredVertex(v) from None


def mono_components(g: PlanarGraph, c: Mapping[int, int]) -> list[MonoComponent]:
    """Components of the subgraphs induced by each color class, by smallest vertex."""
    for v in g.vertices:
        _color_of(c, v)
    seen: set[int] = set()
    out = []
    for s in g.vertices:
        if s in seen:
            continue
        color = c[s]
        comp = [s]
        seen.add(s)
        queue = deque([s])
        degree_sum = 0
        max_deg = 0
        while queue:
            x = queue.popleft()
            d = 0
            for y in g.rotation(x):
                if c[y] != color:
                    continue
                d += 1
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
            degree_sum += d
            max_deg = max(max_deg, d)
        edges = degree_sum // 2
        n = len(comp)
        if max_deg <= 2 and edges == n - 1:
            shape = "path"
        elif max_deg == 2 and edges == n:
            shape = "cycle"
        else:
            shape = "other"
        out.append(MonoComponent(tuple(sorted(comp)), color, shape, edges, max_deg))
    return out


def is_good(g: PlanarGraph, c: Mapping[int, int], max_len: int = DEFAULT_MAX_LEN) -> Verdict:
    for comp in mono_components(g, c):
        if comp.shape != "path" or comp.edges > max_len:
            return Verdict(False, comp)
    return Verdict(True)


def metrics(g: PlanarGraph, c: Mapping[int, int]) -> Metrics:
    m = Metrics()
    for comp in mono_components(g, c):
        m.max_mono_degree = max(m.max_mono_degree, comp.max_degree)
        m.max_component_order = max(m.max_component_order, comp.order)
        order, exact = _longest_path_order(g, c, comp)
        m.max_mono_path_order = max(m.max_mono_path_order, order)
        m.exact = m.exact and exact
    return m


def verify(g: PlanarGraph, c: Mapping[int, int], max_len: int = DEFAULT_MAX_LEN) -> Report:
    comps = mono_components(g, c)
    shapes: dict[str, int] = {}
    for comp in comps:
        shapes[comp.shape] = shapes.get(comp.shape, 0) + 1
    verdict = is_good(g, c, max_len)
    return Report(
        good=verdict.ok,
        max_len=max_len,
        metrics=metrics(g, c),
        components=len(comps),
        shapes=shapes,
        witness=verdict.witness,
    )


def restrict(c: Mapping[int, int], g_sub: PlanarGraph) -> Coloring:
    return {v: c[v] for v in g_sub.vertices if v in c}


# ---------------------------------------------------------------------------
# Longest monochromatic path
# ---------------------------------------------------------------------------

def _longest_path_order(g: PlanarGraph, c: Mapping[int, int], comp: MonoComponent) -> tuple[int, bool]:
    if comp.shape in ("path", "cycle"):
        return comp.order, True
    members = set(comp.vertices)
    adj = {v: [y for y in g.rotation(v) if y in members] for v in comp.vertices}
    if comp.edges == comp.order - 1:
        # Tree: two sweeps give the diameter.
        far, _ = _farthest(adj, comp.vertices[0])
        _, dist = _farthest(adj, far)
        return dist + 1, True
    return _exhaustive_longest(adj)


def _farthest(adj: dict[int, list[int]], s: int) -> tuple[int, int]:
    dist = {s: 0}
    queue = deque([s])
    last = s
    while queue:
        x = queue.popleft()
        last = x
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return last, dist[last]


def _exhaustive_longest(adj: dict[int, list[int]]) -> tuple[int, bool]:
    best = 1
    steps = 0
    n = len(adj)
    for s in adj:
        stack = [(s, iter(adj[s]))]
        on_path = {s}
        while stack:
            steps += 1
            if steps > LONGEST_PATH_STEPS:
                return best, False
            x, it = stack[-1]
            y = next(it, None)
            if y is None:
                stack.pop()
                on_path.discard(x)
                continue
            if y in on_path:
                continue
            on_path.add(y)
            stack.append((y, iter(adj[y])))
            best = max(best, len(stack))
            if best == n:
                return best, True
    return best, True
