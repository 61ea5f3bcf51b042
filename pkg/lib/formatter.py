"""Output formatting: JSON documents, DOT export and rich tables."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Mapping

from rich.console import Console
from rich.table import Table

from .coloring import Report
from .graph import PlanarGraph
from .oracle import SearchResult
from .types import TraceEvent

console = Console(stderr=True)

# DOT fill colors by color index; larger indices cycle.
DOT_PALETTE = ("#e74c3c", "#3498db", "#2ecc71", "#f39c12", "#9b59b6")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def graph_to_dict(g: PlanarGraph, marks: Mapping[str, int] | None = None) -> dict:
    doc = {
        "format": 1,
        "vertices": list(g.vertices),
        "rotation": {str(v): list(nbrs) for v, nbrs in sorted(g.rotation_system().items())},
    }
    if marks:
        doc["marks"] = {name: v for name, v in marks.items()}
    return doc


def coloring_to_dict(colors: Mapping[int, int]) -> dict:
    return {"format": 1, "colors": {str(v): c for v, c in sorted(colors.items())}}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1)


def write_json(doc: dict, output_path: Path | None) -> None:
    """Write to a file, or to standard output when no path is given."""
    text = dumps(doc)
    if output_path is None:
        print(text)
        return
    Path(output_path).write_text(text + "\n")
    console.print(f"Wrote {output_path}")


def write_trace(events: Iterable[TraceEvent], output_path: Path) -> None:
    with open(output_path, "w") as f:
        for ev in events:
            f.write(json.dumps(ev.to_dict()) + "\n")
    console.print(f"Wrote trace to {output_path}")


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------

def to_dot(g: PlanarGraph, colors: Mapping[int, int] | None = None,
           marks: Mapping[str, int] | None = None) -> str:
    """Graphviz source; monochromatic edges are drawn bold in their color."""
    labels = {v: name for name, v in (marks or {}).items()}
    lines = ["graph G {", "  node [shape=circle, style=filled, fillcolor=white, fontsize=10];"]
    for v in g.vertices:
        attrs = []
        if v in labels:
            attrs.append(f'xlabel="{labels[v]}"')
        if colors is not None and v in colors:
            attrs.append(f'fillcolor="{DOT_PALETTE[colors[v] % len(DOT_PALETTE)]}"')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for u, v in g.edges:
        if colors is not None and colors.get(u) is not None and colors.get(u) == colors.get(v):
            lines.append(f'  {u} -- {v} [penwidth=3, color="{DOT_PALETTE[colors[u] % len(DOT_PALETTE)]}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(g: PlanarGraph, output_path: Path, colors: Mapping[int, int] | None = None,
              marks: Mapping[str, int] | None = None) -> None:
    Path(output_path).write_text(to_dot(g, colors, marks))
    console.print(f"Wrote DOT to {output_path}")


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

def print_graph_summary(g: PlanarGraph, title: str = "Graph") -> None:
    table = Table(title=title, show_header=False)
    table.add_column("Field", style="bold")
    table.add_column("Value", justify="right")
    table.add_row("Vertices", f"{g.num_vertices:,}")
    table.add_row("Edges", f"{g.num_edges:,}")
    table.add_row("Faces", f"{len(g.faces()):,}")
    girth = g.girth()
    table.add_row("Girth", "inf" if girth == float("inf") else str(girth))
    table.add_row("Degree", f"{g.min_degree}..{g.max_degree}")
    console.print(table)


def print_report(report: Report) -> None:
    status = "[green]good[/green]" if report.good else "[red]not good[/red]"
    table = Table(title="Coloring Report", show_header=True)
    table.add_column("Measure", style="bold")
    table.add_column("Value", justify="right")
    table.add_column("Note", style="dim")
    m = report.metrics
    table.add_row("Verdict", status, f"max path length {report.max_len}")
    table.add_row("Mono components", str(report.components), ", ".join(f"{k}: {v}" for k, v in sorted(report.shapes.items())))
    table.add_row("Max mono degree", str(m.max_mono_degree), "k-defective")
    table.add_row("Max component order", str(m.max_component_order), "k-fragmented")
    table.add_row("Max mono path order", str(m.max_mono_path_order), "longest path" if m.exact else "lower bound, search capped")
    console.print(table)
    if report.witness is not None:
        w = report.witness
        console.print(f"[red]Witness:[/red] {w.shape} of color {w.color}, {w.edges} edges, vertices {list(w.vertices)[:20]}")


def search_line(result: SearchResult) -> str:
    """One-line verdict; a forall certificate already carries the node count."""
    q = result.query
    if q.mode == "forall" and not result.found:
        return f"{q.describe()}: [green]{result.certificate()}[/green]"
    if q.mode == "exists":
        verdict = "[green]found[/green]" if result.found else "[red]none exists[/red]"
    else:
        verdict = "[red]counterexample[/red]"
    return f"{q.describe()}: {verdict} ({result.nodes:,} nodes)"


def print_search(result: SearchResult) -> None:
    console.print(search_line(result))


def print_trace_summary(events: list[TraceEvent]) -> None:
    counts: dict[str, int] = {}
    removed: dict[str, int] = {}
    for ev in events:
        counts[ev.lemma] = counts.get(ev.lemma, 0) + 1
        removed[ev.lemma] = removed.get(ev.lemma, 0) + len(ev.removed)
    table = Table(title="Reduction Steps", show_header=True)
    table.add_column("Step", style="bold")
    table.add_column("Count", justify="right")
    table.add_column("Vertices", justify="right")
    for lemma in sorted(counts, key=lambda k: -counts[k]):
        table.add_row(lemma, f"{counts[lemma]:,}", f"{removed[lemma]:,}")
    depth = max((ev.depth for ev in events), default=0)
    table.add_section()
    table.add_row("Max depth", str(depth), "")
    console.print(table)


def print_stats_table(rows: list[dict], max_len: int) -> None:
    """One row per family: maxima over the corpus."""
    table = Table(title="Corpus Statistics", show_header=True)
    table.add_column("Family", style="bold")
    table.add_column("Instances", justify="right")
    table.add_column("Max n", justify="right")
    table.add_column("Max path order", justify="right")
    table.add_column("Max comp. order", justify="right")
    table.add_column("Max mono degree", justify="right")
    table.add_column("Configurations", justify="right")
    table.add_column("Time (s)", justify="right")
    table.add_column("Status", style="dim")
    for row in rows:
        ok = row["violations"] == 0
        table.add_row(
            row["family"],
            f"{row['instances']:,}",
            f"{row['max_n']:,}",
            str(row["max_mono_path_order"]),
            str(row["max_component_order"]),
            str(row["max_mono_degree"]),
            f"{row['configurations']:,}",
            f"{row['max_seconds']:.2f}",
            "ok" if ok else f"[red]{row['violations']} violations[/red]",
        )
    console.print(table)
    console.print(f"Bound: monochromatic paths of at most {max_len} edges")
