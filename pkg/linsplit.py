#!/usr/bin/env python3
"""Split planar graphs of girth >= 6 into two induced linear forests with short paths.

Subcommands:
  gen      Write a graph from a named family (cycle, hex, A, B, G, girth5, random, solid, delaunay)
  solve    Color from lists of size 2 so every monochromatic component is a short path
  verify   Check a coloring and report its defect metrics
  oracle   Exact search for a coloring with a property, or proof that none exists
  stats    Solve a generated corpus and tabulate the metrics

Exit codes:
  0 ok, 1 negative verdict, 2 precondition failed, 3 assumption violated,
  4 search budget exceeded, 64 usage or parse error

Usage:
    uv run linsplit.py gen --family hex --rows 4 --cols 4 --out hex.json
    uv run linsplit.py solve hex.json --output hex.coloring.json --trace hex.trace.jsonl
    uv run linsplit.py verify hex.json hex.coloring.json --max-len 14
    uv run linsplit.py oracle girth5.json --property pk-free --k 3 --mode forall
    uv run linsplit.py stats --random-sizes 200,1000 --seeds 20 --plot stats.png
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from rich.console import Console

from lib.coloring import verify
from lib.corpus import MAX_PATH_ORDER, corpus_instances, run_corpus, summarize
from lib.errors import (
    AssumptionViolated,
    BadParameter,
    BudgetExceeded,
    GirthTooSmall,
    InconsistentRotation,
    LinsplitError,
    ListTooSmall,
    NotPlanar,
    ParseError,
    PreconditionViolated,
    UncoloredVertex,
)
from lib.families import MarkedGraph, get_family
from lib.formatter import (
    coloring_to_dict,
    graph_to_dict,
    print_graph_summary,
    print_report,
    print_search,
    print_stats_table,
    print_trace_summary,
    write_dot,
    write_json,
    write_trace,
)
from lib.oracle import Query, search
from lib.parser import read_coloring, read_graph, read_lists
from lib.reducer import solve_traced
from lib.types import DEFAULT_MAX_LEN, ListAssignment, SolverConfig, default_budget

console = Console(stderr=True)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PRECONDITION = 2
EXIT_ASSUMPTION = 3
EXIT_BUDGET = 4
EXIT_USAGE = 64

PROPERTY_NAMES = {
    "good": "good",
    "pk-free": "pk_free",
    "fragmented": "k_fragmented",
    "defective": "k_defective",
}


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        console.print(f"[red]{self.prog}: error: {message}[/red]")
        sys.exit(EXIT_USAGE)


def exit_code(exc: LinsplitError) -> int:
    if isinstance(exc, AssumptionViolated):
        return EXIT_ASSUMPTION
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(exc, ParseError):
        return EXIT_USAGE
    if isinstance(exc, (GirthTooSmall, PreconditionViolated, BadParameter, NotPlanar,
                        InconsistentRotation, ListTooSmall, UncoloredVertex)):
        return EXIT_PRECONDITION
    return EXIT_ASSUMPTION


def report_error(exc: LinsplitError, where: str = "") -> int:
    code = exit_code(exc)
    prefix = f"{where}: " if where else ""
    console.print(f"[red]{prefix}{type(exc).__name__}: {exc}[/red]")
    if isinstance(exc, AssumptionViolated):
        sys.stderr.write(json.dumps(exc.to_dict(), indent=1) + "\n")
    return code


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    """Write a family member as a graph file."""
    builder = get_family(args.family)
    params = {
        "cycle": lambda: (args.n,),
        "hex": lambda: (args.rows, args.cols),
        "A": lambda: (args.t,),
        "B": lambda: (args.t,),
        "G": lambda: (args.t,),
        "girth5": lambda: (),
        "random": lambda: (args.n, args.seed, args.chord_rate),
        "solid": lambda: (args.solid,),
        "delaunay": lambda: (args.n, args.seed),
    }[args.family]()
    if any(p is None for p in params):
        raise BadParameter(f"family {args.family} needs {_family_flags(args.family)}")

    console.print(f"Building {args.family}{params}...")
    t0 = time.monotonic()
    built = builder(*params)
    marked = built if isinstance(built, MarkedGraph) else MarkedGraph(built)
    console.print(f"  done in {time.monotonic() - t0:.2f}s")
    if args.summary:
        print_graph_summary(marked.graph, title=f"{args.family}{params}")

    write_json(graph_to_dict(marked.graph, marked.marks), args.out)
    if args.dot:
        write_dot(marked.graph, args.dot, marks=marked.marks)
    return EXIT_OK


def _family_flags(family: str) -> str:
    return {
        "cycle": "--n",
        "hex": "--rows and --cols",
        "A": "--t",
        "B": "--t",
        "G": "--t",
        "random": "--n",
        "solid": "--solid",
        "delaunay": "--n",
    }.get(family, "no parameters")


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _load_lists(args: argparse.Namespace, g) -> ListAssignment:
    if getattr(args, "lists", None):
        lists = read_lists(args.lists)
        lists.covers(g.vertices)
        return lists
    if getattr(args, "random_lists", None) is not None:
        return ListAssignment.random_pairs(g.vertices, args.random_lists)
    return ListAssignment.uniform(g.vertices)


def _solve_one(path: Path, output: Path | None, args: argparse.Namespace) -> dict:
    """Solve a single graph file; returns a status record (runs in worker processes)."""
    status = {"input": str(path), "output": str(output) if output else None, "code": EXIT_OK}
    try:
        doc = read_graph(path)
        g = doc.graph
        lists = _load_lists(args, g)
        config = SolverConfig.from_env(
            max_len=args.max_len,
            threshold=args.threshold,
            batch=not args.no_batch,
            verify=args.verify,
        )
        progress = (lambda msg: console.print(f"  [dim]{path.name}: {msg}[/dim]")) if args.verbose else None
        t0 = time.monotonic()
        result = solve_traced(g, lists, config, progress)
        elapsed = time.monotonic() - t0
    except LinsplitError as exc:
        status["code"] = report_error(exc, str(path))
        return status

    report = verify(g, result.coloring, config.max_len)
    status.update({
        "n": g.num_vertices,
        "seconds": round(elapsed, 3),
        "configurations": len(result.configurations),
        "metrics": report.metrics.to_dict(),
    })
    write_json(coloring_to_dict(result.coloring), output)
    if args.trace:
        write_trace(result.trace, args.trace)
    if args.dot:
        write_dot(g, args.dot, result.coloring, doc.marks)
    if args.verbose:
        print_trace_summary(result.trace)
    if args.verify and not report.good:
        status["code"] = EXIT_NEGATIVE
    return status


def cmd_solve(args: argparse.Namespace) -> int:
    """Color every input graph; several inputs run in parallel with --jobs."""
    inputs: list[Path] = args.graph_files
    if len(inputs) > 1 and (args.output or args.trace or args.dot):
        console.print("[red]--output, --trace and --dot need a single input; use --out-dir[/red]")
        return EXIT_USAGE

    outputs = []
    for path in inputs:
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            outputs.append(args.out_dir / f"{path.stem}.coloring.json")
        elif len(inputs) > 1:
            outputs.append(path.with_name(f"{path.stem}.coloring.json"))
        else:
            outputs.append(args.output)

    jobs = args.jobs or int(os.environ.get("LINSPLIT_JOBS", 1))
    console.print(f"Solving {len(inputs)} graph(s) with {min(jobs, len(inputs))} job(s)...")
    if jobs <= 1 or len(inputs) == 1:
        statuses = [_solve_one(p, o, args) for p, o in zip(inputs, outputs)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            statuses = list(pool.map(_solve_one, inputs, outputs, [args] * len(inputs)))

    for st in statuses:
        if st["code"] == EXIT_OK and "metrics" in st:
            m = st["metrics"]
            console.print(
                f"  [green]{st['input']}[/green]: n={st['n']:,}, {st['seconds']:.2f}s, "
                f"longest mono path {m['max_mono_path_order']} vertices, "
                f"largest component {m['max_component_order']}, configurations {st['configurations']}"
            )
    return max(st["code"] for st in statuses)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    """Check a coloring; exit 1 when it is not good."""
    doc = read_graph(args.graph_file)
    colors = read_coloring(args.coloring_file)
    report = verify(doc.graph, colors, args.max_len)
    print_report(report)
    ok = report.good
    if args.lists:
        lists = read_lists(args.lists)
        lists.covers(doc.graph.vertices)
        if not lists.respects(colors, doc.graph.vertices):
            console.print("[red]Coloring leaves the lists[/red]")
            ok = False
    write_json(report.to_dict(), args.output)
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def cmd_oracle(args: argparse.Namespace) -> int:
    """exists: 0 with a witness, 1 without. forall: 0 when no coloring has the property."""
    doc = read_graph(args.graph_file)
    g = doc.graph
    lists = _load_lists(args, g)
    query = Query(PROPERTY_NAMES[args.property], args.k, args.mode)
    budget = args.budget if args.budget is not None else default_budget()
    console.print(f"Searching {query.describe()} on {g.num_vertices} vertices (budget {budget:,} nodes)...")

    def progress(nodes: int) -> None:
        console.print(f"  [dim]{nodes:,} nodes[/dim]")

    t0 = time.monotonic()
    result = search(g, lists, query, budget, prune=not args.no_prune, progress=progress)
    console.print(f"  {time.monotonic() - t0:.2f}s")
    print_search(result)
    write_json(result.to_dict(), args.output)
    if query.mode == "exists":
        return EXIT_OK if result.found else EXIT_NEGATIVE
    return EXIT_NEGATIVE if result.found else EXIT_OK


# ---------------------------------------------------------------------------
# stats
# ---------------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_stats(args: argparse.Namespace) -> int:
    """Solve a generated corpus and tabulate the metrics; exit 1 on any violation."""
    config = SolverConfig.from_env(max_len=args.max_len)
    instances = corpus_instances(args.hex_sizes, args.random_sizes, range(1, args.seeds + 1))
    total = len(args.hex_sizes) + len(args.random_sizes) * args.seeds
    console.print(f"Running corpus of {total} instances...")
    done = [0]

    def progress(res) -> None:
        done[0] += 1
        mark = "[green]ok[/green]" if res.ok else f"[red]FAIL {res.error}[/red]"
        console.print(f"  [{done[0]}/{total}] {res.name}: n={res.n:,}, {res.seconds:.2f}s {mark}")

    t0 = time.monotonic()
    results = run_corpus(instances, config, args.random_lists, progress)
    rows = summarize(results)
    print_stats_table(rows, config.max_len)
    console.print(f"Total time: {time.monotonic() - t0:.1f}s")

    records = [r.to_dict() for r in results]
    if args.output:
        write_json({"format": 1, "summary": rows, "instances": records}, args.output)
    if args.plot:
        from lib.plots import save_stats_plot

        save_stats_plot(records, MAX_PATH_ORDER, args.plot)
        console.print(f"Saved plot to {args.plot}")
    return EXIT_OK if all(r.ok for r in results) else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_lists_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--lists", type=Path, help="JSON list assignment (default: {0,1} everywhere)")
    group.add_argument("--random-lists", type=int, metavar="SEED",
                       help="Random 2-subsets of {0..4} per vertex, seeded")


def build_parser() -> argparse.ArgumentParser:
    """Build the CLI argument parser with subcommands."""
    parser = UsageParser(
        description="Linsplit: good 2-list-colorings of planar graphs of girth at least 6.",
    )
    subparsers = parser.add_subparsers(dest="command", parser_class=UsageParser)

    # --- gen ---
    gen_p = subparsers.add_parser("gen", help="Generate a graph from a family")
    gen_p.add_argument("--family", required=True, choices=["cycle", "hex", "A", "B", "G", "girth5", "random", "solid", "delaunay"])
    gen_p.add_argument("--n", type=int, help="Vertices (cycle, random), points (delaunay)")
    gen_p.add_argument("--solid", choices=["octahedron", "icosahedron"], help="Solid to subdivide (solid)")
    gen_p.add_argument("--t", type=int, help="Gadget parameter (A, B, G)")
    gen_p.add_argument("--rows", type=int, help="Honeycomb rows")
    gen_p.add_argument("--cols", type=int, help="Honeycomb columns")
    gen_p.add_argument("--seed", type=int, default=1, help="Random seed (default: 1)")
    gen_p.add_argument("--chord-rate", type=float, default=0.5, help="Chord probability for random (default: 0.5)")
    gen_p.add_argument("--out", type=Path, help="Output file (default: standard output)")
    gen_p.add_argument("--dot", type=Path, help="Also write Graphviz DOT")
    gen_p.add_argument("--summary", action="store_true", help="Print a graph summary table")

    # --- solve ---
    solve_p = subparsers.add_parser("solve", help="Compute a good coloring")
    solve_p.add_argument("graph_files", type=Path, nargs="+", help="Graph JSON file(s)")
    _add_lists_args(solve_p)
    solve_p.add_argument("--output", type=Path, help="Coloring output (default: standard output)")
    solve_p.add_argument("--out-dir", type=Path, help="Directory for per-input colorings")
    solve_p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True,
                         help="Re-check goodness and lists (default: on)")
    solve_p.add_argument("--trace", type=Path, help="Write reduction steps as JSON lines")
    solve_p.add_argument("--dot", type=Path, help="Write the colored graph as Graphviz DOT")
    solve_p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN,
                         help=f"Longest allowed monochromatic path in edges (default: {DEFAULT_MAX_LEN})")
    solve_p.add_argument("--threshold", type=int, help="Exact search below this size (env LINSPLIT_THRESHOLD)")
    solve_p.add_argument("--no-batch", action="store_true", help="One reduction per recursion level")
    solve_p.add_argument("--jobs", type=int, help="Parallel workers over input files (env LINSPLIT_JOBS)")
    solve_p.add_argument("--verbose", action="store_true", help="Show recursion progress and step counts")

    # --- verify ---
    verify_p = subparsers.add_parser("verify", help="Check a coloring")
    verify_p.add_argument("graph_file", type=Path)
    verify_p.add_argument("coloring_file", type=Path)
    verify_p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    verify_p.add_argument("--lists", type=Path, help="Also check membership in these lists")
    verify_p.add_argument("--output", type=Path, help="Report JSON (default: standard output)")

    # --- oracle ---
    oracle_p = subparsers.add_parser("oracle", help="Exact coloring search")
    oracle_p.add_argument("graph_file", type=Path)
    oracle_p.add_argument("--property", choices=list(PROPERTY_NAMES), default="good")
    oracle_p.add_argument("--k", type=int, default=DEFAULT_MAX_LEN, help="Property parameter (default: 14)")
    oracle_p.add_argument("--mode", choices=["exists", "forall"], default="exists")
    oracle_p.add_argument("--budget", type=int, help="Node budget (env LINSPLIT_BUDGET, default 10^8)")
    oracle_p.add_argument("--no-prune", action="store_true", help="Check the property only at leaves")
    _add_lists_args(oracle_p)
    oracle_p.add_argument("--output", type=Path, help="Result JSON (default: standard output)")

    # --- stats ---
    stats_p = subparsers.add_parser("stats", help="Solve a generated corpus and tabulate metrics")
    stats_p.add_argument("--hex-sizes", type=_int_list, default=[3, 5, 8, 12], help="Honeycomb sides (default: 3,5,8,12)")
    stats_p.add_argument("--random-sizes", type=_int_list, default=[100, 500], help="Random sizes (default: 100,500)")
    stats_p.add_argument("--seeds", type=int, default=10, help="Seeds per random size (default: 10)")
    stats_p.add_argument("--random-lists", action="store_true", help="Use seeded random 2-lists")
    stats_p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    stats_p.add_argument("--output", type=Path, help="Write summary and per-instance JSON")
    stats_p.add_argument("--plot", type=Path, help="Write a PNG plot")

    return parser


COMMANDS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "stats": cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(sys.argv[1:] if argv is None else argv)
    if args.command not in COMMANDS:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except LinsplitError as exc:
        return report_error(exc)


if __name__ == "__main__":
    sys.exit(main())
