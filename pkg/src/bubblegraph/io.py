"""Text formats: GFA1 (S and L lines), directed and bidirected edge lists, report lines.

GFA links use the node-end convention of variation-graph tools: ``L u o1 v o2``
leaves ``u`` through side ``o1`` and enters ``v`` through the side opposite to
``o2``, so the edge is ``{u o1, v flip(o2)}``.
"""

from __future__ import annotations

import os
import sys
from typing import IO, Iterable, Optional, Union

from .errors import InputError, UsageError
from .graph import SIGN_CHARS, BidirectedGraph, DirectedGraph, sign_of

GFA, DIRECTED, BIDIRECTED = "gfa", "directed", "bidirected"
FORMATS = (GFA, DIRECTED, BIDIRECTED)
EXTENSIONS = {".gfa": GFA, ".arcs": DIRECTED, ".bidir": BIDIRECTED}

Graph = Union[BidirectedGraph, DirectedGraph]


def _lines(source: Union[str, Iterable[str]]) -> Iterable[tuple[int, list[str]]]:
    """Numbered, whitespace-split, non-empty, non-comment lines."""
    if isinstance(source, str):
        source = source.splitlines()
    for no, line in enumerate(source, 1):
        fields = line.split()
        if fields and not fields[0].startswith("#"):
            yield no, fields


def parse_gfa(source: Union[str, Iterable[str]]) -> BidirectedGraph:
    """Segments become vertices and links become edges; other record types are skipped."""
    names: list[str] = []
    known: set[str] = set()
    links: list[tuple[int, str, int, str, int]] = []
    for no, f in _lines(source):
        if f[0] == "S":
            if len(f) < 2:
                raise InputError("S line without a segment name", no)
            if f[1] not in known:
                known.add(f[1])
                names.append(f[1])
        elif f[0] == "L":
            if len(f) < 5:
                raise InputError("L line needs: L from orient to orient [overlap]", no)
            try:
                a, b = sign_of(f[2]), sign_of(f[4])
            except InputError as err:
                raise InputError(str(err), no) from None
            if f[1] == f[3]:
                raise InputError(f"self-link on segment {f[1]!r} is not supported", no)
            links.append((no, f[1], a, f[3], b))
        elif len(f[0]) != 1:
            raise InputError(f"unknown record type {f[0]!r}", no)
    edges = []
    for no, u, a, v, b in links:
        for x in (u, v):
            if x not in known:
                raise InputError(f"link names unknown segment {x!r}", no)
        edges.append((u, SIGN_CHARS[a], v, SIGN_CHARS[b ^ 1]))
    return BidirectedGraph(names, edges)


def parse_edge_lists(source: Union[str, Iterable[str]], fmt: str = BIDIRECTED) -> Graph:
    """``u v`` lines (directed) or ``u s v t`` lines (bidirected); a lone name declares a vertex."""
    if fmt not in (DIRECTED, BIDIRECTED):
        raise UsageError(f"edge-list format must be {DIRECTED!r} or {BIDIRECTED!r}")
    width = 2 if fmt == DIRECTED else 4
    names: list[str] = []
    items: list[tuple[str, ...]] = []
    for no, f in _lines(source):
        if len(f) == 1:
            names.append(f[0])
            continue
        if len(f) != width:
            raise InputError(f"expected {width} fields, got {len(f)}", no)
        if fmt == BIDIRECTED:
            try:
                sign_of(f[1])
                sign_of(f[3])
            except InputError as err:
                raise InputError(str(err), no) from None
        if f[0] == f[width // 2]:
            raise InputError(f"self-loop at vertex {f[0]!r} is not supported", no)
        names.extend((f[0], f[width // 2]))
        items.append(tuple(f))
    if fmt == DIRECTED:
        return DirectedGraph(names, items)
    return BidirectedGraph(names, items)


def detect_format(path: Optional[str], fmt: Optional[str]) -> str:
    """Explicit flag first, then the file extension; content is never sniffed."""
    if fmt:
        if fmt not in FORMATS:
            raise UsageError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
        return fmt
    if path and path != "-":
        ext = os.path.splitext(path)[1].lower()
        if ext in EXTENSIONS:
            return EXTENSIONS[ext]
    raise UsageError("cannot tell the input format: pass --format or use .gfa/.arcs/.bidir")


def read_graph(path: Optional[str], fmt: Optional[str] = None) -> Graph:
    fmt = detect_format(path, fmt)
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise InputError(f"cannot read {path!r}: {err.strerror}") from None
    if fmt == GFA:
        return parse_gfa(text)
    return parse_edge_lists(text, fmt)


# serialization


def _sorted_edges(g: BidirectedGraph) -> list[tuple[str, str, str, str]]:
    out = []
    for u, s, v, t in g.edge_tuples():
        if (u, s) > (v, t):
            u, s, v, t = v, t, u, s
        out.append((u, s, v, t))
    return sorted(out)


def _isolated(names: Iterable[str], used: set[str]) -> list[str]:
    return sorted(x for x in names if x not in used)


def write_bidirected(g: BidirectedGraph) -> str:
    edges = _sorted_edges(g)
    used = {x for e in edges for x in (e[0], e[2])}
    lines = _isolated(g.names, used) + [" ".join(e) for e in edges]
    return "".join(line + "\n" for line in lines)


def write_directed(d: DirectedGraph) -> str:
    arcs = sorted(d.arcs())
    used = {x for a in arcs for x in a}
    lines = _isolated(d.names, used) + [f"{u} {v}" for u, v in arcs]
    return "".join(line + "\n" for line in lines)


def write_gfa(g: BidirectedGraph) -> str:
    lines = ["H\tVN:Z:1.0"] + [f"S\t{x}\t*" for x in sorted(g.names)]
    for u, s, v, t in _sorted_edges(g):
        lines.append(f"L\t{u}\t{s}\t{v}\t{SIGN_CHARS[sign_of(t) ^ 1]}\t0M")
    return "".join(line + "\n" for line in lines)


def write_graph(g: Graph, fmt: str) -> str:
    if isinstance(g, DirectedGraph):
        if fmt == DIRECTED:
            return write_directed(g)
        g = g.to_bidirected()
    if fmt == GFA:
        return write_gfa(g)
    if fmt == BIDIRECTED:
        return write_bidirected(g)
    raise UsageError(f"cannot write a bidirected graph as {fmt!r}")


def open_output(path: Optional[str]) -> IO[str]:
    if path is None or path == "-":
        return sys.stdout
    try:
        return open(path, "w", encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot write {path!r}: {err.strerror}") from None


# report lines


def side_text(side) -> str:
    return f"{side.vertex}{side.sign}"


def superbubble_line(r) -> str:
    return f"SB: {r.entry} {r.exit}"


def ultrabubble_line(r) -> str:
    return f"UB: {side_text(r.pair[0])} {side_text(r.pair[1])}"


def snarl_lines(rep) -> Iterable[str]:
    for i, ts in enumerate(rep.tip_sets, 1):
        yield f"T{i}: " + " ".join(side_text(x) for x in ts)
    for a, b in rep.pairs:
        yield f"S: {side_text(a)} {side_text(b)}"


def pair_line(p) -> str:
    return f"S: {side_text(p[0])} {side_text(p[1])}"

