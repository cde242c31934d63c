"""Superbubbles of directed graphs.

The three tree phases are shared with the ultrabubble finder: a digraph is run
as the bidirected graph of its arcs, with the extra rule that a candidate
``(s, t)`` is dropped when the arc ``t -> s`` exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _engine
from .connectivity import SpqrTree
from .graph import PLUS, DirectedGraph

TRIVIAL, WHOLE, PNODE, RNODE = _engine.TRIVIAL, _engine.WHOLE, _engine.PNODE, _engine.RNODE


@dataclass(frozen=True)
class EdgeState:
    """What one side of a tree edge looks like, seen from the poles ``(s, t)``.

    ``direction`` is ``(from_node, to_node)``; the expansion described is the
    one on the ``to_node`` side.
    """

    no_extremity: bool
    acyclic: Optional[bool]
    reaches_st: Optional[bool]
    reaches_ts: Optional[bool]
    direction: tuple[int, int]
    poles: tuple[str, str]


@dataclass(frozen=True)
class SuperbubbleReport:
    entry: str
    exit: str
    provenance: str


@dataclass(frozen=True)
class PoleCounts:
    """Out- and in-degree of both poles inside each side of a tree edge."""

    poles: tuple[str, str]
    below: tuple[int, int, int, int]  # (out s, in s, out t, in t) on the child side
    above: tuple[int, int, int, int]


def _report(g, u: int, a: int, v: int, b: int, prov: str) -> SuperbubbleReport:
    s, t = (u, v) if a == PLUS else (v, u)
    return SuperbubbleReport(g.names[s], g.names[t], prov)


def find_superbubbles(g: DirectedGraph, threads: int = 1) -> list[SuperbubbleReport]:
    """Every superbubble ``(s, t)``: blocks in order, then trivial, whole-block, P-node, R-node."""
    bg = g.to_bidirected()
    return [_report(g, *f) for f in _engine.find_bubbles(bg, back_edge=True, threads=threads)]


def _state(eng, k: int, st, direction, counts) -> EdgeState:
    nd = eng.tree.nodes[k]
    nm = eng.g.names
    poles = (nm[nd.eu[nd.parent_slot]], nm[nd.ev[nd.parent_slot]])
    if st[1] is True:
        fwd = counts[0] > 0
        return EdgeState(st[0], True, fwd, not fwd, direction, poles)
    return EdgeState(st[0], st[1], None, None, direction, poles)


def _load(eng, states: dict[tuple[int, int], EdgeState]) -> None:
    for (a, b), st in states.items():
        slot = (st.no_extremity, st.acyclic)
        if eng.tree.nodes[b].parent == a:
            eng.down[b] = slot
        else:
            eng.up[a] = slot


def phase1(g: DirectedGraph, t: SpqrTree) -> dict[tuple[int, int], EdgeState]:
    """States of every parent-to-child tree edge, bottom-up."""
    eng = _engine.engine_for(g.to_bidirected(), t)
    eng.phase1()
    return {(p, c): _state(eng, c, eng.down[c], (p, c), _engine.down_counts(eng, c))
            for p, c in _engine.tree_edges(t)}


def phase2(g: DirectedGraph, t: SpqrTree,
           states: dict[tuple[int, int], EdgeState]) -> dict[tuple[int, int], EdgeState]:
    """States of every child-to-parent tree edge, top-down."""
    eng = _engine.engine_for(g.to_bidirected(), t)
    _load(eng, states)
    eng.phase2()
    return {(c, p): _state(eng, c, eng.up[c], (c, p), _engine.up_counts(eng, c))
            for p, c in _engine.tree_edges(t)}


def phase3(g: DirectedGraph, t: SpqrTree,
           states: dict[tuple[int, int], EdgeState]) -> list[SuperbubbleReport]:
    """P-node groupings and R-node checks over both state tables."""
    bg = g.to_bidirected()
    eng = _engine.engine_for(bg, t)
    _load(eng, states)
    ctx = _engine.GraphContext(bg)
    return [_report(g, *f) for f in eng.phase3(ctx.has_edge)]


def neighborhood_counts(g: DirectedGraph, t: SpqrTree) -> dict[tuple[int, int], PoleCounts]:
    """Pole degree counts on both sides of every ``(parent, child)`` tree edge."""
    eng = _engine.engine_for(g.to_bidirected(), t)
    nm = g.names
    out = {}
    for p, c in _engine.tree_edges(t):
        nd = t.nodes[c]
        poles = (nm[nd.eu[nd.parent_slot]], nm[nd.ev[nd.parent_slot]])
        out[(p, c)] = PoleCounts(poles, _engine.down_counts(eng, c), _engine.up_counts(eng, c))
    return out
