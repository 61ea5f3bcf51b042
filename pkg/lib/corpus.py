"""Corpus runs for the stats subcommand: solve and measure many generated instances."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

import numpy as np

from .coloring import verify
from .errors import LinsplitError
from .families import hex_patch, random_planar_girth6
from .graph import PlanarGraph
from .reducer import solve_traced
from .types import ListAssignment, SolverConfig

# Largest orders a good coloring with 14-edge paths allows.
MAX_COMPONENT_ORDER = 15
MAX_PATH_ORDER = 15


@dataclass
class InstanceResult:
    family: str
    name: str
    n: int
    m: int
    ok: bool
    seconds: float
    max_mono_path_order: int = 0
    max_component_order: int = 0
    max_mono_degree: int = 0
    configurations: int = 0
    error: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def corpus_instances(hex_sizes: list[int], random_sizes: list[int], seeds: range) -> Iterator[tuple[str, str, PlanarGraph, int]]:
    """(family, name, graph, seed) tuples; seed also drives non-uniform lists."""
    for k in hex_sizes:
        yield "hex", f"hex-{k}x{k}", hex_patch(k, k), k
    for n in random_sizes:
        for seed in seeds:
            yield "random", f"random-{n}-s{seed}", random_planar_girth6(n, seed), seed


def run_instance(family: str, name: str, g: PlanarGraph, seed: int, config: SolverConfig,
                 random_lists: bool = False) -> InstanceResult:
    lists = ListAssignment.random_pairs(g.vertices, seed) if random_lists else ListAssignment.uniform(g.vertices)
    start = time.monotonic()
    try:
        result = solve_traced(g, lists, config)
    except LinsplitError as exc:
        return InstanceResult(family, name, g.num_vertices, g.num_edges, False,
                              time.monotonic() - start, error=f"{type(exc).__name__}: {exc}")
    seconds = time.monotonic() - start
    report = verify(g, result.coloring, config.max_len)
    m = report.metrics
    ok = (report.good and lists.respects(result.coloring, g.vertices)
          and m.max_component_order <= MAX_COMPONENT_ORDER and m.max_mono_path_order <= MAX_PATH_ORDER)
    return InstanceResult(family, name, g.num_vertices, g.num_edges, ok, seconds,
                          m.max_mono_path_order, m.max_component_order, m.max_mono_degree, len(result.configurations))


def run_corpus(instances, config: SolverConfig, random_lists: bool = False,
               progress: Callable[[InstanceResult], None] | None = None) -> list[InstanceResult]:
    results = []
    for family, name, g, seed in instances:
        res = run_instance(family, name, g, seed, config, random_lists)
        results.append(res)
        if progress:
            progress(res)
    return results


def summarize(results: list[InstanceResult]) -> list[dict]:
    """Per-family maxima, plus an "all" row."""
    rows = []
    families = sorted({r.family for r in results})
    groups = [(f, [r for r in results if r.family == f]) for f in families]
    if len(groups) > 1:
        groups.append(("all", results))
    for family, group in groups:
        table = np.array([
            (r.n, r.max_mono_path_order, r.max_component_order, r.max_mono_degree, r.configurations, r.seconds)
            for r in group
        ], dtype=float)
        maxima = table.max(axis=0)
        rows.append({
            "family": family,
            "instances": len(group),
            "max_n": int(maxima[0]),
            "max_mono_path_order": int(maxima[1]),
            "max_component_order": int(maxima[2]),
            "max_mono_degree": int(maxima[3]),
            "configurations": int(table[:, 4].sum()),
            "max_seconds": float(maxima[5]),
            "mean_seconds": float(table[:, 5].mean()),
            "violations": sum(1 for r in group if not r.ok),
        })
    return rows
