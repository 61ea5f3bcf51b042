"""Shared helpers for the test suite (not collected as tests)."""

from __future__ import annotations

import sys
from pathlib import Path

_repo_root = Path(__file__).resolve().parent.parent
if str(_repo_root) not in sys.path:
    sys.path.insert(0, str(_repo_root))

from lib.graph import PlanarGraph
from lib.reducer import augment_to_maximal, find_reductions, peel_order


def reduced_core(g: PlanarGraph, stop_at_reducible: bool = True, min_size: int = 30) -> PlanarGraph | None:
    """Replay the solver's cheap steps on g.

    Peels degree <= 1 vertices and keeps the largest component. Without
    stop_at_reducible that graph is returned as is. Otherwise it also
    augments and deletes face reductions until none applies, returning the
    augmented graph, or None once fewer than min_size vertices remain.
    """
    h = g
    while True:
        order = peel_order(h)
        if order:
            h = h.delete_vertices(order)
        if h.num_vertices == 0:
            return None
        h = h.subgraph(max(h.components, key=lambda c: (len(c), -min(c))))
        if not stop_at_reducible:
            return h
        if h.num_vertices < min_size:
            return None
        h = augment_to_maximal(h)
        reductions = find_reductions(h)
        if not reductions:
            return h
        h = h.delete_vertices({v for r in reductions for v in r.vertices})
