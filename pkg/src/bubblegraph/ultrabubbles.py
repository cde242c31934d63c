"""Ultrabubbles of bidirected graphs, by the same tree phases as superbubbles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _engine
from .connectivity import SpqrTree
from .graph import MINUS, PLUS, SIGN_CHARS, BidirectedGraph, SidePair, VertexSide, side_pair

TRIVIAL, WHOLE, PNODE, RNODE = _engine.TRIVIAL, _engine.WHOLE, _engine.PNODE, _engine.RNODE

Reaches = tuple[tuple[bool, bool], tuple[bool, bool]]  # reaches[a][b], a at s and b at t


@dataclass(frozen=True)
class BidirEdgeState:
    no_extremity: bool
    acyclic: Optional[bool]
    reaches: Optional[Reaches]
    direction: tuple[int, int]
    poles: tuple[str, str]

    def reach_signs(self) -> Optional[tuple[str, str]]:
        """The single true flag as a pair of sign characters."""
        if self.reaches is None:
            return None
        for a in (PLUS, MINUS):
            for b in (PLUS, MINUS):
                if self.reaches[a][b]:
                    return SIGN_CHARS[a], SIGN_CHARS[b]
        return None


@dataclass(frozen=True)
class UltrabubbleReport:
    pair: SidePair
    provenance: str

    def __str__(self) -> str:
        return f"{self.pair[0]} {self.pair[1]}"


def _report(g: BidirectedGraph, u: int, a: int, v: int, b: int, prov: str) -> UltrabubbleReport:
    nm = g.names
    return UltrabubbleReport(side_pair(VertexSide(nm[u], SIGN_CHARS[a]), VertexSide(nm[v], SIGN_CHARS[b])), prov)


def find_ultrabubbles(g: BidirectedGraph, back_edge: bool = False, threads: int = 1) -> list[UltrabubbleReport]:
    """Every ultrabubble; ``back_edge`` re-imposes the superbubble rule against ``{u -a, v -b}``."""
    return [_report(g, *f) for f in _engine.find_bubbles(g, back_edge=back_edge, threads=threads)]


def _state(eng, k: int, st, direction, counts) -> BidirEdgeState:
    nd = eng.tree.nodes[k]
    nm = eng.g.names
    poles = (nm[nd.eu[nd.parent_slot]], nm[nd.ev[nd.parent_slot]])
    if st[1] is True:
        a = PLUS if counts[0] else MINUS
        b = PLUS if counts[2] else MINUS
        reaches = tuple(tuple(x == a and y == b for y in (PLUS, MINUS)) for x in (PLUS, MINUS))
        return BidirEdgeState(st[0], True, reaches, direction, poles)
    return BidirEdgeState(st[0], st[1], None, direction, poles)


def _load(eng, states: dict[tuple[int, int], BidirEdgeState]) -> None:
    for (a, b), st in states.items():
        slot = (st.no_extremity, st.acyclic)
        if eng.tree.nodes[b].parent == a:
            eng.down[b] = slot
        else:
            eng.up[a] = slot


def ultra_phase1(g: BidirectedGraph, t: SpqrTree) -> dict[tuple[int, int], BidirEdgeState]:
    eng = _engine.engine_for(g, t)
    eng.phase1()
    return {(p, c): _state(eng, c, eng.down[c], (p, c), _engine.down_counts(eng, c))
            for p, c in _engine.tree_edges(t)}


def ultra_phase2(g: BidirectedGraph, t: SpqrTree,
                 states: dict[tuple[int, int], BidirEdgeState]) -> dict[tuple[int, int], BidirEdgeState]:
    eng = _engine.engine_for(g, t)
    _load(eng, states)
    eng.phase2()
    return {(c, p): _state(eng, c, eng.up[c], (c, p), _engine.up_counts(eng, c))
            for p, c in _engine.tree_edges(t)}


def ultra_phase3(g: BidirectedGraph, t: SpqrTree,
                 states: dict[tuple[int, int], BidirEdgeState], back_edge: bool = False) -> list[UltrabubbleReport]:
    eng = _engine.engine_for(g, t)
    _load(eng, states)
    ctx = _engine.GraphContext(g)
    be = ctx.has_edge if back_edge else (lambda u, s, v, t: False)
    return [_report(g, *f) for f in eng.phase3(be)]
