"""Discharging over X0, the rooted configurations X1..X4 and their extension coloring.

Charges are stored doubled: 2(deg(v) - 3) + indeg(v) - outdeg(v). On a
connected graph of girth >= 6 with a cycle they sum to 2(2e - 3n) <= -12, so
some vertex w0 ends negative; it has degree 4 or 5 and falls into

  Case1  outdeg(w0) == deg(w0)                   -> X1 = X0+(w0), root w0
  Case2  deg 4, outdeg 3, indeg 0                -> X2, X3 or X4

Every configuration is reducible: a good coloring of G - V1 extends to V1
with all boundary edges proper (extend_coloring).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, MutableMapping

from .coloring import mono_components
from .errors import AssumptionViolated, ListTooSmall, RuleDeadlock
from .graph import Edge, PlanarGraph, edge_key
from .paths import (
    CheckReport,
    FacialPath,
    PathSystem,
    check_almost_nice,
    check_nice,
    check_path_system,
    forward_closure,
    indeg,
    is_acyclic,
    outdeg,
    reaches,
)
from .types import DEFAULT_MAX_LEN, Coloring, ListAssignment

CASE1 = "Case1"
CASE2 = "Case2"


# ---------------------------------------------------------------------------
# Discharging
# ---------------------------------------------------------------------------

@dataclass
class Discharge:
    charges: dict[int, int]
    w0: int
    case: str
    negatives: list[int]

    @property
    def total(self) -> int:
        return sum(self.charges.values())


def charge_map(g: PlanarGraph, X: PathSystem) -> dict[int, int]:
    return {v: 2 * (g.degree(v) - 3) + indeg(X, v) - outdeg(X, v) for v in g.vertices}


def classify(g: PlanarGraph, X0: PathSystem, w: int) -> str:
    d, o, i = g.degree(w), outdeg(X0, w), indeg(X0, w)
    if d in (4, 5) and o == d:
        return CASE1
    if d == 4 and o == 3 and i == 0:
        return CASE2
    raise AssumptionViolated("Discharging", {"vertex": w, "degree": d, "outdeg": o, "indeg": i},
                             f"negative vertex {w} fits neither case")


def discharge(g: PlanarGraph, X0: PathSystem) -> Discharge:
    charges = charge_map(g, X0)
    total = sum(charges.values())
    expected = 2 * (2 * g.num_edges - 3 * g.num_vertices)
    if total != expected:
        raise AssumptionViolated("Discharging", {"total": total, "expected": expected}, "charge is not conserved")
    for v, ch in charges.items():
        if ch < 0 and g.degree(v) not in (4, 5):
            raise AssumptionViolated("Discharging", {"vertex": v, "charge": ch, "degree": g.degree(v)},
                                     f"vertex {v} of degree {g.degree(v)} ends negative")
    negatives = sorted(v for v, ch in charges.items() if ch < 0)
    if not negatives:
        raise AssumptionViolated("NoNegative", {"total": total}, "no vertex has negative charge")
    w0 = negatives[0]
    return Discharge(charges, w0, classify(g, X0, w0), negatives)


# ---------------------------------------------------------------------------
# Configurations
# ---------------------------------------------------------------------------

@dataclass
class Configuration:
    kind: str
    system: PathSystem
    root: int
    special_edge: Edge | None = None
    special_vertex: int | None = None
    V1: frozenset[int] = frozenset()
    W: frozenset[int] = frozenset()
    A: frozenset[int] = frozenset()
    E1: tuple[Edge, ...] = ()
    B: frozenset[int] = frozenset()
    H_edges: frozenset[Edge] = frozenset()
    H_prime_edges: frozenset[Edge] = frozenset()
    S: dict[int, tuple[int, ...]] = field(default_factory=dict)
    outside: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "root": self.root,
            "special_edge": list(self.special_edge) if self.special_edge else None,
            "paths": [p.dump() for p in self.system],
            "V1": sorted(self.V1),
            "W": sorted(self.W),
            "A": sorted(self.A),
            "E1": [list(e) for e in self.E1],
            "B": sorted(self.B),
        }


def _derive(g: PlanarGraph, kind: str, system: PathSystem, root: int,
            special: Edge | None = None, special_vertex: int | None = None) -> Configuration:
    V1 = system.vertices
    H = frozenset(e for p in system for e in p.edges())
    H_prime = frozenset(
        edge_key(v, x) for v in V1 for x in g.rotation(v) if x in V1
    )
    E1 = tuple(sorted(e for e in H_prime - H if e != special))
    W = system.endvertices
    outside: dict[int, int] = {}
    A = set()
    for v in V1:
        outs = [x for x in g.rotation(v) if x not in V1]
        if outs:
            A.add(v)
            outside[v] = outs[0]
    e1_vertices = {v for e in E1 for v in e}
    B = V1 - A - e1_vertices - W - ({special_vertex} if special_vertex is not None else set())
    S: dict[int, tuple[int, ...]] = {}
    for u in W:
        S[u] = tuple(sorted(p.vertices[-2] for p in system.incoming(u)))
    if special_vertex is not None:
        S[special_vertex] = (root,)
    return Configuration(
        kind=kind, system=system, root=root,
        special_edge=special, special_vertex=special_vertex,
        V1=V1, W=W, A=frozenset(A), E1=E1, B=frozenset(B),
        H_edges=H, H_prime_edges=H_prime, S=S, outside=outside,
    )


def build_configuration(g: PlanarGraph, X0: PathSystem, w0: int, case: str) -> Configuration:
    if case == CASE1:
        conf = _derive(g, "X1", forward_closure(X0, w0), w0)
        check_configuration(g, conf)
        return conf

    free = [x for x in g.rotation(w0) if edge_key(w0, x) not in X0.edge_count]
    if len(free) != 1:
        raise AssumptionViolated("Case2", {"w0": w0, "free_edges": free}, "w0 needs exactly one edge outside X0")
    x = free[0]
    face = g.face_of_dart(x, w0)
    m = face.length
    k = face.position(x, w0)
    back = [w0]
    for step in range(m - 1):
        y = face.walk[(k - step) % m]
        back.append(y)
        if g.degree(y) != 3:
            break
    v = back[-1]
    if v == w0 or g.degree(v) == 3:
        raise AssumptionViolated("Case2", {"w0": w0, "face": face.id}, "face of e has no other vertex of degree != 3")
    P = FacialPath(face.id, tuple(reversed(back)))
    if g.degree(v) not in (2, 4):
        raise AssumptionViolated("Case2", {"w0": w0, "v": v, "degree": g.degree(v)}, "out-endvertex must have degree 2 or 4")
    e2 = P.first_edge
    if not any(p.in_vertex == v and e2 in p.edges() for p in X0):
        raise AssumptionViolated("Case2", {"w0": w0, "v": v, "edge": e2}, "first edge of P is not on an X0 path into v")
    if len(P.inner) == 0:
        raise AssumptionViolated("Case2", {"w0": w0, "v": v}, "P has no inner vertex")

    closure_w0 = forward_closure(X0, w0)
    if not reaches(X0, w0, v):
        system = forward_closure(X0, v) | closure_w0
        conf = _derive(g, "X2", system.with_path(P), v)
    else:
        # back = [w0 = w_0, w_1, ..., w_k = v]
        covered = closure_w0.vertices
        i = next((j for j in range(1, len(back)) if back[j] != w0 and back[j] in covered), None)
        if i is None:
            raise AssumptionViolated("Case2", {"w0": w0, "v": v}, "v is reachable but P never meets X0+(w0)")
        if i == 1:
            conf = _derive(g, "X3", closure_w0, w0, special=edge_key(w0, back[1]), special_vertex=back[1])
        else:
            P_prime = FacialPath(face.id, tuple(reversed(back[:i])))
            conf = _derive(g, "X4", closure_w0.with_path(P_prime), back[i - 1])
    check_configuration(g, conf)
    return conf


def configuration_report(g: PlanarGraph, conf: Configuration) -> CheckReport:
    """Every structural claim about a configuration, failures keyed by clause."""
    X, r = conf.system, conf.root
    report = CheckReport()
    structural = check_path_system(g, X)
    for tag, witness in structural.failures.items():
        report.fail(f"path-system:{tag}", witness)
    if not is_acyclic(X):
        report.fail("acyclic", r)
    if conf.kind == "X1" or (conf.kind == "X2" and g.degree(r) == 4):
        nice = check_nice(g, X)
    else:
        nice = check_almost_nice(g, X, r)
    for tag, witness in nice.failures.items():
        report.fail(f"nice:{tag}", witness)
    if conf.kind == "X2" and g.degree(r) == 2 and outdeg(X, r) != 1:
        report.fail("X2-root", r)
    if conf.kind == "X3" and (outdeg(X, r) != 3 or indeg(X, r) != 0):
        report.fail("X3-root", r)
    if conf.kind == "X4" and (outdeg(X, r) != 1 or indeg(X, r) != 0):
        report.fail("X4-root", r)
    for p in X:
        if p.length > 8:
            report.fail("length", p.dump())
    for v in X.endvertices:
        if v != r and g.degree(v) not in (2, 4):
            report.fail("degrees", v)
    if g.degree(r) not in (2, 3, 4, 5):
        report.fail("degrees", r)
    for v in X.inner_vertices:
        if g.degree(v) != 3:
            report.fail("degrees", v)
    for v in conf.V1:
        if sum(1 for x in g.rotation(v) if x not in conf.V1) > 1:
            report.fail("outside", v)
        if v != r and sum(1 for x in g.rotation(v) if edge_key(v, x) not in conf.H_edges) > 1:
            report.fail("non-H", v)
    if conf.kind == "X3":
        e = conf.special_edge
        if e is None or e in conf.H_edges or e not in conf.H_prime_edges:
            report.fail("special-edge", e)
    return report


def check_configuration(g: PlanarGraph, conf: Configuration) -> None:
    report = configuration_report(g, conf)
    if not report.ok:
        tag = next(iter(report.failures))
        raise AssumptionViolated("Lemma5", {"clause": tag, "configuration": conf.to_dict(),
                                            "failures": report.to_dict()["failures"]},
                                 f"{conf.kind} rooted at {conf.root} fails {tag}")


def build_configurations(g: PlanarGraph, X0: PathSystem, result: Discharge, batch: bool = True) -> list[Configuration]:
    """Configurations for w0 and, with batch, for further negative vertices
    whose vertex sets are far enough apart to be extended independently."""
    first = build_configuration(g, X0, result.w0, result.case)
    confs = [first]
    if not batch:
        return confs
    blocked = _closed_neighbourhood(g, first.V1)
    for w in result.negatives[1:]:
        if w in blocked:
            continue
        conf = build_configuration(g, X0, w, classify(g, X0, w))
        if conf.V1 & blocked:
            continue
        confs.append(conf)
        blocked |= _closed_neighbourhood(g, conf.V1)
    return confs


def _closed_neighbourhood(g: PlanarGraph, vertices) -> set[int]:
    out = set(vertices)
    for v in vertices:
        out.update(g.rotation(v))
    return out


# ---------------------------------------------------------------------------
# Extension coloring
# ---------------------------------------------------------------------------

class ExtensionFailed(Exception):
    """Postcondition of the extension coloring did not hold."""

    def __init__(self, reason: str, witness: object):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


def _pick(lists: ListAssignment, v: int, avoid: set[int]) -> int:
    for c in lists[v]:
        if c not in avoid:
            return c
    raise ListTooSmall(v, len(lists[v]))


def extend_into(g: PlanarGraph, conf: Configuration, colors: MutableMapping[int, int],
                lists: ListAssignment, max_len: int = DEFAULT_MAX_LEN) -> list[tuple[int, ...]]:
    """Color V1 in place, given a coloring of its surroundings.

    Returns, for each monochromatic component inside V1, the one or two
    system paths that cover it; ExtensionFailed if no such pair exists.
    """
    r = conf.root
    for v in conf.V1:
        colors.pop(v, None)

    # (i) vertices with an outside neighbour
    for v in sorted(conf.A):
        x = conf.outside[v]
        if x not in colors:
            raise AssumptionViolated("Lemma6", {"vertex": v, "outside": x}, "outside neighbour is uncolored")
        colors[v] = _pick(lists, v, {colors[x]})

    # (ii) edges of H' outside the system
    e1_vertices = {v for e in conf.E1 for v in e}
    if r in e1_vertices:
        if r not in colors:
            colors[r] = lists[r][0]
        for a, b in conf.E1:
            if r in (a, b):
                y = b if a == r else a
                if y not in colors:
                    colors[y] = _pick(lists, y, {colors[r]})
    for a, b in conf.E1:
        if a not in colors and b not in colors:
            colors[a] = lists[a][0]
        if a not in colors:
            colors[a] = _pick(lists, a, {colors[b]})
        elif b not in colors:
            colors[b] = _pick(lists, b, {colors[a]})

    # (iii) inner vertices, path by path, against their off-path neighbour
    for p in conf.system:
        on_path = set(p.vertices)
        for u in p.inner:
            if u not in conf.B or u in colors:
                continue
            off = [x for x in g.rotation(u) if x not in on_path]
            colored = [colors[x] for x in off if x in colors]
            colors[u] = _pick(lists, u, set(colored[:1]))

    # (iv) remaining endvertices and u*
    pending = set(conf.W - conf.A)
    if conf.special_vertex is not None:
        pending.add(conf.special_vertex)
    pending = {v for v in pending if v not in colors}
    _apply_rules(g, conf, colors, lists, pending)

    return _postcheck(g, conf, colors, max_len)


def _apply_rules(g: PlanarGraph, conf: Configuration, colors: MutableMapping[int, int],
                 lists: ListAssignment, pending: set[int]) -> None:
    r = conf.root
    while pending:
        chosen = None
        for u in sorted(pending):
            counts: dict[int, int] = {}
            for x in g.rotation(u):
                if x in colors:
                    counts[colors[x]] = counts.get(colors[x], 0) + 1
            heavy = sorted(c for c, n in counts.items() if n >= 3)
            if heavy:
                chosen = (u, {heavy[0]})
                break
        if chosen is None:
            for u in sorted(pending):
                done = [s for s in conf.S.get(u, ()) if s in colors]
                if done:
                    chosen = (u, {colors[done[0]]})
                    break
        if chosen is None and r in pending:
            counts = {}
            for x in g.rotation(r):
                if x in colors:
                    counts[colors[x]] = counts.get(colors[x], 0) + 1
            if counts:
                a = max(sorted(counts), key=lambda c: counts[c])
                chosen = (r, {a})
            else:
                chosen = (r, set())
        if chosen is None:
            raise RuleDeadlock(sorted(pending))
        u, avoid = chosen
        colors[u] = _pick(lists, u, avoid)
        pending.discard(u)


def _postcheck(g: PlanarGraph, conf: Configuration, colors: Mapping[int, int], max_len: int) -> list[tuple[int, ...]]:
    for v in conf.V1:
        for x in g.rotation(v):
            if x not in conf.V1 and colors.get(x) == colors[v]:
                raise ExtensionFailed("boundary", (v, x))
    if conf.special_edge is not None:
        a, b = conf.special_edge
        if colors[a] == colors[b]:
            raise ExtensionFailed("special-edge", conf.special_edge)
    inner = g.subgraph(conf.V1)
    containment = []
    for comp in mono_components(inner, colors):
        if comp.shape != "path" or comp.edges > max_len:
            raise ExtensionFailed("component", comp.to_dict())
        if comp.order > 1:
            cover = _covering_paths(conf.system, comp.vertices)
            if not cover:
                raise ExtensionFailed("containment", comp.to_dict())
            containment.append(cover)
    return containment


def _covering_paths(system: PathSystem, vertices: tuple[int, ...]) -> tuple[int, ...]:
    members = set(vertices)
    paths = system.paths
    for i, p in enumerate(paths):
        if vertices[0] not in p.vertices:
            continue
        rest = members - set(p.vertices)
        if not rest:
            return (i,)
        pivot = min(rest)
        for j, q in enumerate(paths):
            if j != i and pivot in q.vertices and rest <= set(q.vertices):
                return tuple(sorted((i, j)))
    return ()


def extend_coloring(g: PlanarGraph, conf: Configuration, coloring: Mapping[int, int],
                    lists: ListAssignment, max_len: int = DEFAULT_MAX_LEN) -> Coloring:
    """Extend a good coloring of g - V1 to g.

    Raises AssumptionViolated("Lemma6") when a postcondition fails.
    """
    colors = dict(coloring)
    try:
        extend_into(g, conf, colors, lists, max_len)
    except ExtensionFailed as exc:
        raise AssumptionViolated("Lemma6", {"reason": exc.reason, "witness": exc.witness,
                                            "configuration": conf.to_dict()}) from exc
    except RuleDeadlock as exc:
        raise AssumptionViolated("Lemma6", {"reason": "deadlock", "witness": sorted(exc.uncolored),
                                            "configuration": conf.to_dict()}) from exc
    return colors
