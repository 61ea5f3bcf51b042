"""JSON input parsing for graphs, list assignments and colorings.

Graph files carry a rotation system, with each vertex's neighbours in
counterclockwise order:

    {"format": 1, "vertices": [0, 1, ...], "rotation": {"0": [1, 5], ...},
     "marks": {"u": 4}}

"vertices" is optional (isolated vertices need it), "marks" is informational.
An "edges" list may replace "rotation"; the embedding is then computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import LinsplitError, ParseError
from .graph import PlanarGraph, build_graph, edge_key
from .types import Coloring, ListAssignment

FORMAT_VERSION = 1


@dataclass
class GraphDocument:
    graph: PlanarGraph
    marks: dict[str, int] = field(default_factory=dict)
    source: str = ""


def _load(path: Path | str) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc


def _check_format(doc: Any, where: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    version = doc.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"{where}: unsupported format {version!r}")
    return doc


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: expected an integer, got {value!r}") from None


def graph_from_dict(doc: Any, where: str = "<graph>") -> GraphDocument:
    doc = _check_format(doc, where)
    vertices = [_int(v, f"{where}: vertices") for v in doc.get("vertices", [])]
    marks = {str(k): _int(v, f"{where}: marks.{k}") for k, v in doc.get("marks", {}).items()}

    try:
        if "rotation" in doc:
            rotation = {
                _int(v, f"{where}: rotation key"): [_int(x, f"{where}: rotation[{v}]") for x in nbrs]
                for v, nbrs in doc["rotation"].items()
            }
            edges = sorted({edge_key(v, x) for v, nbrs in rotation.items() for x in nbrs if v != x})
            for v, nbrs in rotation.items():
                if v in nbrs:
                    raise ParseError(f"{where}: loop at vertex {v}")
            graph = build_graph(edges, rotation=rotation, vertices=vertices)
        elif "edges" in doc:
            edges = []
            for e in doc["edges"]:
                if not isinstance(e, (list, tuple)) or len(e) != 2:
                    raise ParseError(f"{where}: edge {e!r} is not a pair")
                edges.append((_int(e[0], f"{where}: edge"), _int(e[1], f"{where}: edge")))
            graph = build_graph(edges, vertices=vertices)
        else:
            raise ParseError(f"{where}: needs 'rotation' or 'edges'")
    except ParseError:
        raise
    except LinsplitError:
        raise
    except (AttributeError, TypeError) as exc:
        raise ParseError(f"{where}: malformed graph: {exc}") from exc

    for name, v in marks.items():
        if v not in graph:
            raise ParseError(f"{where}: mark {name} names unknown vertex {v}")
    return GraphDocument(graph, marks, where)


def read_graph(path: Path | str) -> GraphDocument:
    return graph_from_dict(_load(path), str(path))


def lists_from_dict(doc: Any, where: str = "<lists>") -> ListAssignment:
    doc = _check_format(doc, where)
    raw = doc.get("lists")
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: expected a 'lists' object")
    return ListAssignment({
        _int(v, f"{where}: lists key"): tuple(_int(c, f"{where}: lists[{v}]") for c in colors)
        for v, colors in raw.items()
    })


def read_lists(path: Path | str) -> ListAssignment:
    return lists_from_dict(_load(path), str(path))


def coloring_from_dict(doc: Any, where: str = "<coloring>") -> Coloring:
    doc = _check_format(doc, where)
    raw = doc.get("colors")
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: expected a 'colors' object")
    return {_int(v, f"{where}: colors key"): _int(c, f"{where}: colors[{v}]") for v, c in raw.items()}


def read_coloring(path: Path | str) -> Coloring:
    return coloring_from_dict(_load(path), str(path))
