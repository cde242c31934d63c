"""Command-line entry point: ``bubblegraph <command> [options]``.

Exit codes: 0 success, 1 usage, 2 input format, 3 contract violation.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Optional, Sequence

from . import io, oracle
from .connectivity import blocks_of_graph, spqr_tree
from .errors import BubbleGraphError, ContractViolation, InputError, UsageError
from .feedback import feedback_arcs_directed, feedback_edges_tipless_bidirected
from .graph import BidirectedGraph, DirectedGraph, NotDigraphic, as_bidirected, as_directed
from .snarls import expand_representation, find_snarl_representation
from .superbubbles import find_superbubbles
from .ultrabubbles import find_ultrabubbles

THREADS_ENV = "BUBBLEGRAPH_THREADS"
EXPAND_WARN = 100_000  # expanded pairs beyond which --expand warns on stderr
CHECK_LIMIT = 12       # vertex cap for the oracle comparison

GENERATORS = ("random-bidirected", "random-digraph", "dag", "tip-clique", "two-tip", "nested")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2; usage errors are 1 here
        raise UsageError(f"{self.prog}: {message}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", "-i", default="-", help="input path, '-' for stdin")
    p.add_argument("--format", "-f", choices=io.FORMATS, help="input format (default: from extension)")
    p.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    p.add_argument("--stats", action="store_true", help="write counts and wall time to stderr")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads for per-block work (fallback: ${THREADS_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bubblegraph", description="Superbubbles, snarls and ultrabubbles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("superbubbles", help="superbubbles of a directed graph")
    p.add_argument("--provenance", action="store_true", help="append the detecting rule")
    p = sub.add_parser("snarls", help="linear-size snarl representation")
    p.add_argument("--expand", action="store_true", help="list every snarl pair instead")
    p = sub.add_parser("ultrabubbles", help="ultrabubbles of a bidirected graph")
    p.add_argument("--back-edge", action="store_true", help="also require the back-edge condition")
    p.add_argument("--provenance", action="store_true", help="append the detecting rule")
    sub.add_parser("feedback-arcs", help="arcs lying on every cycle of a directed graph")
    sub.add_parser("feedback-edges", help="edges lying on every cycloid of a tipless graph")
    sub.add_parser("check", help="compare the finders with brute force on a small graph")
    p = sub.add_parser("gen", help="write a generated graph")
    p.add_argument("kind", choices=GENERATORS)
    p.add_argument("-n", type=int, default=10, help="vertices (or clique size)")
    p.add_argument("-m", type=int, default=None, help="edges (random kinds; default 2n)")
    for sp in sub.choices.values():
        _common(sp)
    return parser


def _threads(args: argparse.Namespace) -> int:
    if args.threads is not None:
        value, origin = args.threads, "--threads"
    else:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            value, origin = int(raw), THREADS_ENV
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{origin} must be at least 1")
    return value


def _directed(g: io.Graph) -> DirectedGraph:
    if isinstance(g, DirectedGraph):
        return g
    d = as_directed(g)
    if isinstance(d, NotDigraphic):
        raise InputError(f"graph is not digraphic: edge {d.witness} has equal signs")
    return d


def _structure_stats(g: BidirectedGraph) -> dict[str, int]:
    bct = blocks_of_graph(g)
    nodes = 0
    for b, verts in enumerate(bct.block_vertices):
        if len(verts) > 2:
            nodes += len(spqr_tree(bct.view, bct.blocks[b]).nodes)
    return {"vertices": g.n, "edges": g.m, "blocks": len(bct.blocks),
            "cutvertices": len(bct.cut_vertices), "spqr_nodes": nodes}


def _emit_stats(stats: dict[str, object]) -> None:
    for k, v in stats.items():
        print(f"# {k}: {v}", file=sys.stderr)


def _run(args: argparse.Namespace, out) -> dict[str, object]:
    cmd = args.command
    if cmd == "gen":
        g = _generate(args)
        fmt = args.format or (io.DIRECTED if isinstance(g, DirectedGraph) else io.BIDIRECTED)
        out.write(io.write_graph(g, fmt))
        return {"vertices": g.n, "edges": g.m}
    g = io.read_graph(args.input, args.format)
    threads = _threads(args)
    stats: dict[str, object] = {}
    if cmd == "superbubbles":
        reports = find_superbubbles(_directed(g), threads=threads)
        for r in reports:
            line = io.superbubble_line(r)
            out.write(f"{line} {r.provenance}\n" if args.provenance else line + "\n")
        stats["superbubbles"] = len(reports)
    elif cmd == "ultrabubbles":
        reports = find_ultrabubbles(as_bidirected(g), back_edge=args.back_edge, threads=threads)
        for r in reports:
            line = io.ultrabubble_line(r)
            out.write(f"{line} {r.provenance}\n" if args.provenance else line + "\n")
        stats["ultrabubbles"] = len(reports)
    elif cmd == "snarls":
        b = as_bidirected(g)
        rep = find_snarl_representation(b, threads=threads)
        tip_total = sum(len(t) for t in rep.tip_sets)
        if tip_total > 2 * b.n:
            raise ContractViolation(f"tip sets hold {tip_total} sides on {b.n} vertices")
        expanded = sum(len(t) * (len(t) - 1) // 2 for t in rep.tip_sets) + len(rep.pairs)
        if args.expand:
            if expanded > EXPAND_WARN:
                print(f"warning: expanding to about {expanded} snarl pairs", file=sys.stderr)
            for p in expand_representation(rep):
                out.write(io.pair_line(p) + "\n")
        else:
            for line in io.snarl_lines(rep):
                out.write(line + "\n")
        stats.update({"tip_sets": len(rep.tip_sets), "tip_sides": tip_total,
                      "pairs": len(rep.pairs), "representation_size": rep.size,
                      "expanded_upper_bound": expanded})
    elif cmd == "feedback-arcs":
        d = _directed(g)
        res = feedback_arcs_directed(d)
        out.write(f"KIND: {res.kind}\n")
        arcs = d.arcs()
        for u, v in sorted(arcs[e] for e in res.edges):
            out.write(f"FA: {u} {v}\n")
        stats["feedback"] = len(res)
    elif cmd == "feedback-edges":
        b = as_bidirected(g)
        res = feedback_edges_tipless_bidirected(b)
        out.write(f"KIND: {res.kind}\n")
        edges = b.edge_tuples()
        for e in sorted(edges[i] for i in res.edges):
            out.write("FE: " + " ".join(e) + "\n")
        stats["feedback"] = len(res)
    elif cmd == "check":
        for line in _check(g, threads):
            out.write(line + "\n")
    if args.stats:
        stats = {**_structure_stats(as_bidirected(g)), **stats}
    return stats


def _check(g: io.Graph, threads: int) -> list[str]:
    b = as_bidirected(g)
    if b.n > CHECK_LIMIT:
        raise UsageError(f"check runs brute force; at most {CHECK_LIMIT} vertices, got {b.n}")
    lines = []
    d = as_directed(b)
    if not isinstance(d, NotDigraphic):
        got = {(r.entry, r.exit) for r in find_superbubbles(d, threads=threads)}
        lines.append(_verdict("superbubbles", got, oracle.oracle_superbubbles(d)))
    got = set(expand_representation(find_snarl_representation(b, threads=threads)))
    lines.append(_verdict("snarls", got, oracle.oracle_snarls(b)))
    got = {r.pair for r in find_ultrabubbles(b, threads=threads)}
    lines.append(_verdict("ultrabubbles", got, oracle.oracle_ultrabubbles(b)))
    bad = [x for x in lines if not x.startswith("OK")]
    if bad:
        raise ContractViolation("; ".join(bad))
    return lines


def _verdict(name: str, got: set, want: set) -> str:
    if got == want:
        return f"OK {name}: {len(got)}"
    return f"MISMATCH {name}: {len(got - want)} extra, {len(want - got)} missing"


def _generate(args: argparse.Namespace) -> io.Graph:
    n, seed = args.n, args.seed
    m = args.m if args.m is not None else 2 * n
    if args.kind == "random-bidirected":
        return oracle.gen_random_bidirected(n, m, seed)
    if args.kind == "random-digraph":
        return oracle.gen_random_digraph(n, m, seed)
    if args.kind == "dag":
        return oracle.gen_random_dag(n, m, seed)
    if args.kind == "tip-clique":
        return oracle.gen_tip_clique(n)
    if args.kind == "two-tip":
        return oracle.gen_two_tip_connected(n, seed)
    return oracle.gen_nested(n, seed)


def main(argv: Optional[Sequence[str]] = None) -> int:
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        out = io.open_output(args.output)
        try:
            stats = _run(args, out)
        finally:
            if out is not sys.stdout:
                out.close()
        if args.stats:
            stats["wall_seconds"] = f"{time.perf_counter() - start:.3f}"
            _emit_stats(stats)
        return 0
    except BubbleGraphError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
