"""Per-tree-edge states against brute force on the materialized expansion."""

import pytest

from bubblegraph._engine import GraphContext
from bubblegraph.connectivity import ExpansionRef, expansion_edges, expansion_vertices
from bubblegraph.graph import MINUS, PLUS, BidirectedGraph, DirectedGraph, as_directed
from bubblegraph.oracle import gen_nested, oracle_has_cycloid
from bubblegraph.superbubbles import (find_superbubbles, neighborhood_counts, phase1, phase2,
                                      phase3)
from bubblegraph.ultrabubbles import ultra_phase1, ultra_phase2, ultra_phase3


def _trees(g: BidirectedGraph):
    ctx = GraphContext(g)
    for b, verts in enumerate(ctx.bct.block_vertices):
        if len(verts) > 2:
            yield ctx, ctx.spqr(b)


def _side_ref(t, key):
    """Expansion described by the state stored under ``key = (from, to)``."""
    a, b = key
    if t.nodes[b].parent == a:
        nd = t.nodes[b]
        return ExpansionRef(*nd.twin[nd.parent_slot])
    return ExpansionRef(a, t.nodes[a].parent_slot)


def _sub(g: BidirectedGraph, edges):
    return BidirectedGraph(g.names, [g.edge_tuples()[e] for e in edges])


def _expected(ctx, t, key, st):
    g = ctx.g
    ref = _side_ref(t, key)
    edges = expansion_edges(t, ref)
    verts = expansion_vertices(t, ref)
    poles = {g.vid(p) for p in st.poles}
    noext = not any(ctx.ext[v] for v in verts - poles)
    if not noext:
        return noext, None, None
    sub = _sub(g, edges)
    return noext, oracle_has_cycloid(sub) is None, sub


def _reach_directed(d: DirectedGraph, s: str, t: str) -> bool:
    out: dict[str, list[str]] = {}
    for u, v in d.arcs():
        out.setdefault(u, []).append(v)
    seen, todo = {s}, [s]
    while todo:
        x = todo.pop()
        for y in out.get(x, ()):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return t in seen


@pytest.mark.parametrize("seed", range(60))
def test_superbubble_states(seed):
    g = gen_nested(10, seed, directed=True)
    d = as_directed(g)
    for ctx, t in _trees(g):
        down = phase1(d, t)
        up = phase2(d, t, down)
        for key, st in {**down, **up}.items():
            assert st.direction == key
            noext, acyclic, sub = _expected(ctx, t, key, st)
            assert st.no_extremity == noext
            assert st.acyclic == acyclic
            if acyclic:
                sd = as_directed(sub)
                s, u = st.poles
                assert st.reaches_st == _reach_directed(sd, s, u)
                assert st.reaches_ts == _reach_directed(sd, u, s)
        counts = neighborhood_counts(d, t)
        for (p, c), pc in counts.items():
            s, u = (g.vid(x) for x in pc.poles)
            total = [ctx.tot[PLUS][s], ctx.tot[MINUS][s], ctx.tot[PLUS][u], ctx.tot[MINUS][u]]
            block = [a + b for a, b in zip(pc.below, pc.above)]
            assert all(x <= y for x, y in zip(block, total))
        found = {(r.entry, r.exit) for r in phase3(d, t, {**down, **up})}
        assert all(r.provenance in ("P-node", "R-node") for r in phase3(d, t, {**down, **up}))
        assert found <= {(r.entry, r.exit) for r in find_superbubbles(d)}


@pytest.mark.parametrize("seed", range(60))
def test_ultrabubble_states(seed):
    g = gen_nested(10, seed)
    for ctx, t in _trees(g):
        down = ultra_phase1(g, t)
        up = ultra_phase2(g, t, down)
        for key, st in {**down, **up}.items():
            noext, acyclic, sub = _expected(ctx, t, key, st)
            assert st.no_extremity == noext
            assert st.acyclic == acyclic
            if acyclic:
                # exactly one sign pair is realized, and both poles use it
                sa, sb = st.reach_signs()
                a, b = st.poles
                ends = {(x, s) for u, su, v, sv in sub.edge_tuples() for x, s in ((u, su), (v, sv))}
                assert (a, sa) in ends and (b, sb) in ends
                flip = {"+": "-", "-": "+"}
                assert (a, flip[sa]) not in ends and (b, flip[sb]) not in ends
        assert all(r.provenance in ("P-node", "R-node") for r in ultra_phase3(g, t, {**down, **up}))
