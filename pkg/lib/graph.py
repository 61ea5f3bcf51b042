"""Embedded planar graphs as immutable values.

A PlanarGraph is a rotation system: for every vertex the cyclic
counterclockwise order of its neighbours. Faces are recovered by half-edge
traversal. The successor of the dart (u, v) is (v, w) where w is the
neighbour clockwise-next to u around v, which keeps each face on the left of
its darts, so every face walk is counterclockwise seen from inside the face.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import (
    AlreadyAdjacent,
    BadParameter,
    InconsistentRotation,
    NotOnFace,
    NotPlanar,
    UnknownVertex,
)

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Undirected edge as an ordered pair."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    """A face given by its closed boundary walk.

    walk[i] -> walk[i+1] (indices mod len) are the darts of the face.
    An isolated vertex has walk (v,) and length 0; the empty graph has one
    face with an empty walk.
    """

    id: int
    walk: tuple[int, ...]
    length: int

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.walk)

    @property
    def is_simple(self) -> bool:
        return self.length >= 3 and len(set(self.walk)) == self.length

    def darts(self) -> list[Edge]:
        if self.length == 0:
            return []
        m = self.length
        return [(self.walk[i], self.walk[(i + 1) % m]) for i in range(m)]

    def position(self, u: int, v: int) -> int:
        """Index i with walk[i] == u and walk[i+1] == v."""
        m = self.length
        for i in range(m):
            if self.walk[i] == u and self.walk[(i + 1) % m] == v:
                return i
        raise NotOnFace(u, self.id)


class PlanarGraph:
    """Immutable embedded graph on the sphere."""

    def __init__(self, rotation: Mapping[int, Sequence[int]]):
        # Trusted constructor: callers validate (see build_graph).
        self._rotation: dict[int, tuple[int, ...]] = {
            v: tuple(rotation[v]) for v in sorted(rotation)
        }
        self._index: dict[int, dict[int, int]] = {
            v: {x: i for i, x in enumerate(nbrs)} for v, nbrs in self._rotation.items()
        }

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._rotation)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self._rotation)

    @property
    def num_vertices(self) -> int:
        return len(self._rotation)

    @cached_property
    def num_edges(self) -> int:
        return sum(len(n) for n in self._rotation.values()) // 2

    def __len__(self) -> int:
        return len(self._rotation)

    def __contains__(self, v: object) -> bool:
        return v in self._rotation

    def _check(self, v: int) -> None:
        if v not in self._rotation:
            raise UnknownVertex(v)

    def rotation(self, v: int) -> tuple[int, ...]:
        """Neighbours of v in counterclockwise order."""
        self._check(v)
        return self._rotation[v]

    neighbors = rotation

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._index and v in self._index[u]

    def cw_next(self, v: int, x: int) -> int:
        """Neighbour of v clockwise-next after x."""
        nbrs = self._rotation[v]
        return nbrs[(self._index[v][x] - 1) % len(nbrs)]

    def ccw_next(self, v: int, x: int) -> int:
        nbrs = self._rotation[v]
        return nbrs[(self._index[v][x] + 1) % len(nbrs)]

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(
            (u, v) for u, nbrs in self._rotation.items() for v in nbrs if u < v
        ))

    @cached_property
    def min_degree(self) -> int:
        return min((len(n) for n in self._rotation.values()), default=0)

    @cached_property
    def max_degree(self) -> int:
        return max((len(n) for n in self._rotation.values()), default=0)

    def rotation_system(self) -> dict[int, tuple[int, ...]]:
        """Canonical rotation: each list rotated to start at its smallest neighbour."""
        out = {}
        for v, nbrs in self._rotation.items():
            if nbrs:
                k = nbrs.index(min(nbrs))
                nbrs = nbrs[k:] + nbrs[:k]
            out[v] = nbrs
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanarGraph):
            return NotImplemented
        return self.rotation_system() == other.rotation_system()

    def __hash__(self) -> int:
        return hash(tuple(self.rotation_system().items()))

    def __repr__(self) -> str:
        return f"PlanarGraph(n={self.num_vertices}, e={self.num_edges})"

    def to_networkx(self) -> nx.Graph:
        return self._nx.copy()

    @cached_property
    def _nx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self._rotation)
        g.add_edges_from(self.edges)
        return g

    # -- faces -------------------------------------------------------------

    @cached_property
    def _face_data(self) -> tuple[tuple[Face, ...], dict[Edge, int]]:
        faces: list[Face] = []
        dart_face: dict[Edge, int] = {}
        for v in self._rotation:
            nbrs = self._rotation[v]
            if not nbrs:
                faces.append(Face(len(faces), (v,), 0))
                continue
            for x in sorted(nbrs):
                if (v, x) in dart_face:
                    continue
                fid = len(faces)
                walk = []
                a, b = v, x
                while (a, b) not in dart_face:
                    dart_face[(a, b)] = fid
                    walk.append(a)
                    a, b = b, self.cw_next(b, a)
                faces.append(Face(fid, tuple(walk), len(walk)))
        if not faces:
            faces.append(Face(0, (), 0))
        return tuple(faces), dart_face

    def faces(self) -> tuple[Face, ...]:
        return self._face_data[0]

    def face(self, face_id: int) -> Face:
        faces = self._face_data[0]
        if not 0 <= face_id < len(faces):
            raise BadParameter(f"no face {face_id}")
        return faces[face_id]

    def face_of_dart(self, u: int, v: int) -> Face:
        """The face to the left of the dart u -> v."""
        self._check(u)
        self._check(v)
        fid = self._face_data[1].get((u, v))
        if fid is None:
            raise BadParameter(f"{u}-{v} is not an edge")
        return self._face_data[0][fid]

    # -- connectivity and metrics -----------------------------------------

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        comps = [frozenset(c) for c in nx.connected_components(self._nx)]
        return tuple(sorted(comps, key=min))

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    @cached_property
    def _girth(self) -> float:
        return _bfs_girth(self._rotation, nx.number_connected_components(self._nx))

    def girth(self) -> int | float:
        """Length of a shortest cycle, math.inf for forests."""
        g = self._girth
        return g if g == math.inf else int(g)

    def distance(self, u: int, v: int, limit: int | None = None) -> int | float:
        """Fewest edges on a u-v path; math.inf if none (or none within limit)."""
        self._check(u)
        self._check(v)
        return bfs_distance(self._rotation, u, v, limit)

    def ball(self, u: int, radius: int) -> dict[int, int]:
        """Vertices within radius of u with their distances."""
        self._check(u)
        return bfs_ball(self._rotation, u, radius)

    # -- mutation (returns new values) ------------------------------------

    def delete_vertices(self, removed: Iterable[int]) -> PlanarGraph:
        removed = set(removed)
        for v in removed:
            self._check(v)
        return PlanarGraph({
            v: tuple(x for x in nbrs if x not in removed)
            for v, nbrs in self._rotation.items() if v not in removed
        })

    def subgraph(self, keep: Iterable[int]) -> PlanarGraph:
        """Induced subgraph on keep with the restricted embedding."""
        keep = set(keep)
        for v in keep:
            self._check(v)
        return PlanarGraph({
            v: tuple(x for x in self._rotation[v] if x in keep) for v in sorted(keep)
        })

    def delete_edge(self, u: int, v: int) -> PlanarGraph:
        if not self.has_edge(u, v):
            raise BadParameter(f"no edge {u}-{v}")
        rot = dict(self._rotation)
        rot[u] = tuple(x for x in rot[u] if x != v)
        rot[v] = tuple(x for x in rot[v] if x != u)
        return PlanarGraph(rot)

    def add_edge_in_face(self, face_id: int, u: int, v: int) -> PlanarGraph:
        """Insert the edge uv inside the given face, splitting it in two."""
        face = self.face(face_id)
        self._check(u)
        self._check(v)
        if u not in face.vertices:
            raise NotOnFace(u, face_id)
        if v not in face.vertices:
            raise NotOnFace(v, face_id)
        if u == v or self.has_edge(u, v):
            raise AlreadyAdjacent(u, v)
        editor = EmbeddingEditor(self)
        i = face.walk.index(u)
        j = face.walk.index(v)
        editor.insert_chord(face.walk if face.length else (u,), i, j)
        return editor.freeze()


# ---------------------------------------------------------------------------
# Mutable editing for batched chord insertion
# ---------------------------------------------------------------------------

class EmbeddingEditor:
    """Mutable rotation system used to insert many in-face chords cheaply."""

    def __init__(self, g: PlanarGraph):
        self.rotation: dict[int, list[int]] = {v: list(g.rotation(v)) for v in g.vertices}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.rotation[u]

    def within(self, u: int, radius: int) -> dict[int, int]:
        return bfs_ball(self.rotation, u, radius)

    def _insert_at_corner(self, a: int, prev: int, nxt: int, b: int) -> None:
        # Corner of the face at a between darts prev->a and a->nxt;
        # nxt precedes prev in the ccw rotation of a.
        nbrs = self.rotation[a]
        if not nbrs:
            nbrs.append(b)
            return
        k = nbrs.index(nxt)
        nbrs.insert(k + 1, b)
        if len(nbrs) > 2 and nbrs[(k + 2) % len(nbrs)] != prev:
            raise InconsistentRotation(f"corner {prev}-{a}-{nxt} is not a face corner")

    def insert_chord(self, walk: Sequence[int], i: int, j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Insert walk[i]-walk[j] into the face with this walk.

        Returns the two new face walks (walk[i..j] and walk[j..] + walk[..i]).
        """
        m = len(walk)
        if i > j:
            i, j = j, i
        a, b = walk[i], walk[j]
        if m == 1 or (m == 0):
            self.rotation[a].append(b)
            self.rotation[b].append(a)
            return (a, b), (b, a)
        self._insert_at_corner(a, walk[(i - 1) % m], walk[(i + 1) % m], b)
        self._insert_at_corner(b, walk[(j - 1) % m], walk[(j + 1) % m], a)
        inner = tuple(walk[i:j + 1])
        outer = tuple(walk[j:]) + tuple(walk[:i + 1])
        return inner, outer

    def freeze(self) -> PlanarGraph:
        return PlanarGraph(self.rotation)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def build_graph(
    edges: Iterable[tuple[int, int]],
    rotation: Mapping[int, Sequence[int]] | None = None,
    vertices: Iterable[int] = (),
) -> PlanarGraph:
    """Build an embedded graph from an edge list.

    Without a rotation an embedding is computed with the left-right planarity
    test of networkx. A supplied rotation must list every neighbour exactly
    once and satisfy Euler's formula on every component.
    """
    adj: dict[int, set[int]] = {int(v): set() for v in vertices}
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise BadParameter(f"loop at vertex {u}")
        adj.setdefault(u, set())
        adj.setdefault(v, set())
        if v in adj[u]:
            raise BadParameter(f"repeated edge {u}-{v}")
        adj[u].add(v)
        adj[v].add(u)

    if rotation is None:
        g = nx.Graph()
        g.add_nodes_from(adj)
        g.add_edges_from((u, v) for u in adj for v in adj[u] if u < v)
        is_planar, embedding = nx.check_planarity(g)
        if not is_planar:
            raise NotPlanar(f"graph with {g.number_of_nodes()} vertices and {g.number_of_edges()} edges is not planar")
        return PlanarGraph({
            v: tuple(reversed(list(embedding.neighbors_cw_order(v)))) for v in adj
        })

    rot: dict[int, tuple[int, ...]] = {}
    for key, nbrs in rotation.items():
        v = int(key)
        rot[v] = tuple(int(x) for x in nbrs)
    for v in rot:
        adj.setdefault(v, set())
    for v, nbrs in adj.items():
        given = rot.get(v, ())
        if len(given) != len(set(given)) or set(given) != nbrs:
            raise InconsistentRotation(f"rotation of {v} does not match its neighbours")
    graph = PlanarGraph({v: rot.get(v, ()) for v in adj})
    check_euler(graph)
    return graph


def check_euler(g: PlanarGraph) -> None:
    """Raise InconsistentRotation unless n - e + f = 2 on every component."""
    faces_per_comp: dict[int, int] = {}
    comp_of = {v: i for i, comp in enumerate(g.components) for v in comp}
    for face in g.faces():
        if face.walk:
            faces_per_comp[comp_of[face.walk[0]]] = faces_per_comp.get(comp_of[face.walk[0]], 0) + 1
    for i, comp in enumerate(g.components):
        n = len(comp)
        e = sum(g.degree(v) for v in comp) // 2
        f = faces_per_comp.get(i, 0)
        if n - e + f != 2:
            raise InconsistentRotation(f"component of {min(comp)} has n-e+f = {n - e + f}, not 2")


def rotation_from_positions(
    adjacency: Mapping[int, Iterable[int]],
    pos: Mapping[int, tuple[float, float]],
) -> dict[int, tuple[int, ...]]:
    """Counterclockwise rotation of a straight-line drawing."""
    rot = {}
    for v, nbrs in adjacency.items():
        x0, y0 = pos[v]
        rot[v] = tuple(sorted(nbrs, key=lambda x: math.atan2(pos[x][1] - y0, pos[x][0] - x0)))
    return rot


def relabel(g: PlanarGraph, mapping: Mapping[int, int]) -> PlanarGraph:
    return PlanarGraph({mapping[v]: tuple(mapping[x] for x in g.rotation(v)) for v in g.vertices})


# ---------------------------------------------------------------------------
# BFS helpers
# ---------------------------------------------------------------------------

def bfs_ball(adj: Mapping[int, Sequence[int]], source: int, radius: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if d == radius:
            continue
        for y in adj[x]:
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def bfs_distance(adj: Mapping[int, Sequence[int]], u: int, v: int, limit: int | None = None) -> int | float:
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if limit is not None and d >= limit:
            continue
        for y in adj[x]:
            if y not in dist:
                if y == v:
                    return d + 1
                dist[y] = d + 1
                queue.append(y)
    return math.inf


def _bfs_girth(adj: Mapping[int, Sequence[int]], num_components: int) -> float:
    n = len(adj)
    e = sum(len(x) for x in adj.values()) // 2
    if e < n:
        # Forests are common after stripping; skip the search when the
        # edge count allows no cycle per component.
        if e == n - num_components:
            return math.inf
    best = math.inf
    for s in adj:
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
        if best == 3:
            break
    return best
