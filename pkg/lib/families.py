"""Deterministic graph families and random girth-6 instances.

cycle / hex_patch       test corpus
gadget_A / gadget_B     the path gadgets of the lower-bound construction
lower_bound_G           G_t: every 2-coloring has a monochromatic P_t
girth5_example          girth 5, every 2-coloring has a monochromatic P_3
random_planar_girth6    honeycomb clusters plus random in-face chords
subdivided_solid        octahedron / icosahedron with every edge subdivided
subdivided_delaunay     random Delaunay triangulations, every edge subdivided
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cache
from typing import Callable

import networkx as nx
import numpy as np

from .errors import BadParameter, ReconstructionUnavailable
from .graph import EmbeddingEditor, PlanarGraph, build_graph, edge_key, rotation_from_positions


@dataclass(frozen=True)
class MarkedGraph:
    """A graph with named special vertices.

    paths/anchors describe the A_t copies of a gadget: paths[k] is the t-path
    of copy k (main copy first) and anchors[k] the vertex playing u for it.
    """

    graph: PlanarGraph
    marks: dict[str, int] = field(default_factory=dict)
    paths: tuple[tuple[int, ...], ...] = ()
    anchors: tuple[int, ...] = ()

    def __post_init__(self):
        for name, v in self.marks.items():
            if v not in self.graph:
                raise BadParameter(f"mark {name} refers to missing vertex {v}")


def cycle(n: int) -> PlanarGraph:
    if n < 3:
        raise BadParameter(f"cycle needs n >= 3, got {n}")
    return PlanarGraph({i: ((i + 1) % n, (i - 1) % n) for i in range(n)})


def path_graph(n: int) -> PlanarGraph:
    if n < 1:
        raise BadParameter(f"path needs n >= 1, got {n}")
    return PlanarGraph({i: tuple(x for x in (i - 1, i + 1) if 0 <= x < n) for i in range(n)})


def _from_networkx_drawing(h: nx.Graph) -> PlanarGraph:
    order = sorted(h.nodes)
    ids = {node: i for i, node in enumerate(order)}
    pos = {ids[node]: h.nodes[node]["pos"] for node in order}
    adjacency = {ids[node]: [ids[x] for x in h.neighbors(node)] for node in order}
    return PlanarGraph(rotation_from_positions(adjacency, pos))


def hex_patch(rows: int, cols: int) -> PlanarGraph:
    """Honeycomb patch of rows x cols hexagons."""
    if rows < 1 or cols < 1:
        raise BadParameter(f"hex_patch needs rows, cols >= 1, got {rows}x{cols}")
    return _from_networkx_drawing(nx.hexagonal_lattice_graph(rows, cols, with_positions=True))


# ---------------------------------------------------------------------------
# Lower-bound gadgets
# ---------------------------------------------------------------------------

def _check_t(t: int) -> None:
    if t < 2:
        raise BadParameter(f"gadgets need t >= 2, got {t}")


def _attach_a(edges: list[tuple[int, int]], next_id: int, t: int, u: int, w: int) -> tuple[int, ...]:
    """Append a copy of A_t with specials u, w; return its path."""
    path = tuple(range(next_id, next_id + t))
    for a, b in zip(path, path[1:]):
        edges.append((a, b))
    for i, v in enumerate(path):
        edges.append((v, u if i % 2 == 0 else w))
    return path


def gadget_A(t: int) -> MarkedGraph:
    """Path v1..vt, odd-indexed vertices joined to u, even-indexed to w."""
    _check_t(t)
    u, w = t, t + 1
    edges: list[tuple[int, int]] = []
    path = _attach_a(edges, 0, t, u, w)
    marks = {"u": u, "w": w} | {f"v{i + 1}": v for i, v in enumerate(path)}
    return MarkedGraph(build_graph(edges), marks, (path,), (u,))


def gadget_B(t: int) -> MarkedGraph:
    """A_t plus one more A_t copy per neighbour v of u, with specials v and w."""
    _check_t(t)
    u, w = t, t + 1
    edges: list[tuple[int, int]] = []
    main = _attach_a(edges, 0, t, u, w)
    paths = [main]
    anchors = [u]
    next_id = t + 2
    for v in main[::2]:
        paths.append(_attach_a(edges, next_id, t, v, w))
        anchors.append(v)
        next_id += t
    return MarkedGraph(build_graph(edges), {"u": u, "w": w}, tuple(paths), tuple(anchors))


@cache
def _embedded_b(t: int) -> tuple[PlanarGraph, int, int]:
    """B_t embedded together with the edge uw, so u and w share a face."""
    b = gadget_B(t)
    u, w = b.marks["u"], b.marks["w"]
    return build_graph([*b.graph.edges, (u, w)]), u, w


def _glue_left(rotation: dict[int, list[int]], a: int, b: int, block: PlanarGraph,
               ids: dict[int, int], bw: int, bu: int) -> None:
    """Embed block in the face left of the dart a -> b, its edge bw-bu laid on a-b.

    ids maps block vertices to new ids with bw -> a and bu -> b.
    """
    for v in block.vertices:
        if v not in (bw, bu):
            rotation[ids[v]] = [ids[x] for x in block.rotation(v)]

    def after(v: int, skip: int) -> list[int]:
        rot = list(block.rotation(v))
        j = rot.index(skip)
        return [ids[x] for x in rot[j + 1:] + rot[:j]]

    rot_a = rotation[a]
    i = rot_a.index(b)
    rotation[a] = rot_a[:i + 1] + after(bw, bu) + rot_a[i + 1:]
    rot_b = rotation[b]
    i = rot_b.index(a)
    rotation[b] = rot_b[:i] + after(bu, bw) + rot_b[i:]


def lower_bound_G(t: int) -> PlanarGraph:
    """G_2 is C5; G_t hangs two copies of B_t on every edge of G_{t-1}.

    For an edge xy the copy B has w = x, u = y and sits left of x -> y; the
    copy B' has u' = x, w' = y and sits on the other side. Vertex ids of
    G_{t-1} are kept.
    """
    return _lower_bound(t).graph


def lower_bound_marked(t: int) -> MarkedGraph:
    """lower_bound_G(t) with its base cycle marked x0..x4."""
    return _lower_bound(t)


@cache
def _lower_bound(t: int) -> MarkedGraph:
    _check_t(t)
    if t == 2:
        return MarkedGraph(cycle(5), {f"x{i}": i for i in range(5)})
    prev = _lower_bound(t - 1)
    block, bu, bw = _embedded_b(t)
    rotation = {v: list(prev.graph.rotation(v)) for v in prev.graph.vertices}
    next_id = max(prev.graph.vertices) + 1
    for x, y in prev.graph.edges:
        for a, b in ((x, y), (y, x)):
            ids = {}
            for v in sorted(block.vertices):
                if v == bw:
                    ids[v] = a
                elif v == bu:
                    ids[v] = b
                else:
                    ids[v] = next_id
                    next_id += 1
            _glue_left(rotation, a, b, block, ids, bw, bu)
    return MarkedGraph(PlanarGraph({v: tuple(r) for v, r in rotation.items()}), dict(prev.marks))


# ---------------------------------------------------------------------------
# Girth-5 example
# ---------------------------------------------------------------------------

# One gadget per edge uv of a 5-cycle: u1..u3 hang off u, v1..v3 off v,
# w_i is joined to u_i and v_i, and w1-w2-w3 is a path.
GIRTH5_GADGET = (
    ("u", "u1"), ("u", "u2"), ("u", "u3"),
    ("v", "v1"), ("v", "v2"), ("v", "v3"),
    ("u1", "w1"), ("u2", "w2"), ("u3", "w3"),
    ("v1", "w1"), ("v2", "w2"), ("v3", "w3"),
    ("w1", "w2"), ("w2", "w3"),
)
GIRTH5_NAMES = ("u1", "u2", "u3", "v1", "v2", "v3", "w1", "w2", "w3")


def girth5_example() -> MarkedGraph:
    """Planar girth-5 graph in which every 2-coloring has a monochromatic P_3.

    The adjacency is certified with the oracle on first use.
    """
    marked = _girth5_build()
    if not _girth5_certified():
        raise ReconstructionUnavailable("girth-5 example has a 2-coloring without monochromatic P_3")
    return marked


@cache
def _girth5_build() -> MarkedGraph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    next_id = 5
    marks: dict[str, int] = {}
    for i in range(5):
        ids = {"u": i, "v": (i + 1) % 5}
        for name in GIRTH5_NAMES:
            ids[name] = next_id
            next_id += 1
        edges.extend((ids[a], ids[b]) for a, b in GIRTH5_GADGET)
        if i == 0:
            marks = dict(ids)
    return MarkedGraph(build_graph(edges), marks)


@cache
def _girth5_certified() -> bool:
    from .oracle import Query, search
    from .types import ListAssignment

    g = _girth5_build().graph
    if g.girth() != 5:
        return False
    result = search(g, ListAssignment.uniform(g.vertices), Query("pk_free", 3, "forall"))
    return result.witness is None


# ---------------------------------------------------------------------------
# Random girth >= 6 instances
# ---------------------------------------------------------------------------

def random_planar_girth6(n: int, seed: int, chord_rate: float = 0.5) -> PlanarGraph:
    """Connected planar graph of girth >= 6 with at least n vertices.

    Grows a random cluster of hexagonal cells inside a honeycomb until it
    covers n vertices, then adds random chords inside long faces between
    vertices at distance >= 5.
    """
    if n < 6:
        raise BadParameter(f"random_planar_girth6 needs n >= 6, got {n}")
    rng = random.Random(seed)
    side = int(math.isqrt(n)) + 4
    lattice = _from_networkx_drawing(nx.hexagonal_lattice_graph(side, side, with_positions=True))

    cells = [f for f in lattice.faces() if f.length == 6]
    cell_of_edge: dict[tuple[int, int], list[int]] = {}
    for k, f in enumerate(cells):
        for a, b in f.darts():
            cell_of_edge.setdefault((min(a, b), max(a, b)), []).append(k)

    def neighbours(k: int) -> list[int]:
        out = set()
        for a, b in cells[k].darts():
            out.update(cell_of_edge[(min(a, b), max(a, b))])
        out.discard(k)
        return sorted(out)

    center = lattice.num_vertices // 2
    start = min(range(len(cells)), key=lambda k: (center not in cells[k].vertices, k))
    chosen = [start]
    chosen_set = {start}
    covered = set(cells[start].walk)
    frontier = set(neighbours(start))
    while len(covered) < n and frontier:
        k = rng.choice(sorted(frontier))
        frontier.discard(k)
        chosen.append(k)
        chosen_set.add(k)
        covered.update(cells[k].walk)
        frontier.update(x for x in neighbours(k) if x not in chosen_set)

    keep_edges = {(min(a, b), max(a, b)) for k in chosen for a, b in cells[k].darts()}
    order = sorted(covered)
    ids = {v: i for i, v in enumerate(order)}
    base = PlanarGraph({
        ids[v]: tuple(ids[x] for x in lattice.rotation(v) if (min(v, x), max(v, x)) in keep_edges)
        for v in order
    })
    return _add_random_chords(base, rng, chord_rate)


def _add_random_chords(g: PlanarGraph, rng: random.Random, rate: float, attempts: int = 24) -> PlanarGraph:
    editor = EmbeddingEditor(g)
    work = [f.walk for f in g.faces() if f.length >= 10]
    while work:
        walk = work.pop(0)
        if rng.random() >= rate:
            continue
        m = len(walk)
        for _ in range(attempts):
            i, j = sorted(rng.sample(range(m), 2))
            a, b = walk[i], walk[j]
            if min(j - i, m - j + i) < 5 or a == b or editor.has_edge(a, b):
                continue
            if b in editor.within(a, 4):
                continue
            inner, outer = editor.insert_chord(walk, i, j)
            work.extend(w for w in (inner, outer) if len(w) >= 10)
            break
    return editor.freeze()


# ---------------------------------------------------------------------------
# Subdivided triangulations
# ---------------------------------------------------------------------------

def subdivide(g: PlanarGraph) -> PlanarGraph:
    """Replace every edge by a path of length 2, keeping the embedding.

    New vertices take ids after max(g.vertices), one per edge in g.edges order.
    """
    next_id = max(g.vertices, default=-1) + 1
    mid = {e: next_id + i for i, e in enumerate(g.edges)}
    rotation = {v: tuple(mid[edge_key(v, x)] for x in g.rotation(v)) for v in g.vertices}
    for (u, v), s in mid.items():
        rotation[s] = (u, v)
    return PlanarGraph(rotation)


SOLIDS = {
    "octahedron": nx.octahedral_graph,
    "icosahedron": nx.icosahedral_graph,
}


def subdivided_solid(name: str) -> PlanarGraph:
    """A subdivided triangulated solid: girth 6, minimum degree 2, no degree-3 vertex."""
    if name not in SOLIDS:
        raise BadParameter(f"Unknown solid: {name}. Available: {', '.join(SOLIDS)}")
    return subdivide(build_graph(SOLIDS[name]().edges))


def subdivided_delaunay(n: int, seed: int) -> PlanarGraph:
    """Delaunay triangulation of n random points in the unit square, every edge subdivided.

    Faces are hexagons plus the subdivided hull, so the solver reaches
    discharging almost immediately.
    """
    from matplotlib.tri import Triangulation

    if n < 4:
        raise BadParameter(f"subdivided_delaunay needs n >= 4, got {n}")
    rng = np.random.default_rng(seed)
    points = rng.random((n, 2))
    tri = Triangulation(points[:, 0], points[:, 1])
    adjacency: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in tri.edges:
        adjacency[int(a)].append(int(b))
        adjacency[int(b)].append(int(a))
    pos = {i: (float(x), float(y)) for i, (x, y) in enumerate(points)}
    return subdivide(PlanarGraph(rotation_from_positions(adjacency, pos)))


FAMILIES: dict[str, Callable[..., PlanarGraph | MarkedGraph]] = {
    "cycle": cycle,
    "hex": hex_patch,
    "A": gadget_A,
    "B": gadget_B,
    "G": lower_bound_marked,
    "girth5": girth5_example,
    "random": random_planar_girth6,
    "solid": subdivided_solid,
    "delaunay": subdivided_delaunay,
}


def get_family(name: str) -> Callable[..., PlanarGraph | MarkedGraph]:
    if name not in FAMILIES:
        raise BadParameter(f"Unknown family: {name}. Available: {', '.join(FAMILIES)}")
    return FAMILIES[name]
