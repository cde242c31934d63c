"""Shared three-phase engine behind the superbubble and ultrabubble finders.

A directed graph is handled as the bidirected graph whose edges are
``{u+, v-}``; with ``back_edge=True`` the finder additionally rejects a
candidate ``{u a, v b}`` when ``{u -a, v -b}`` is an edge, which turns
ultrabubbles into superbubbles.

Per SPQR tree node ``mu`` with reference edge poles ``(p0, p1)`` two states
are kept: ``down[mu]`` describes the expansion on the child side, ``up[mu]``
the expansion on the parent side.  A state is ``(no_extremity, acyclic)`` with
``acyclic`` in ``{None, True, False}``.  Reachability is not stored: when an
expansion is acyclic and free of extremities each pole carries a single sign in
it, and that sign is read off the per-slot edge-end counts.
"""

from __future__ import annotations

import gc
from contextlib import contextmanager
from typing import Callable, Iterator, Optional

from .connectivity import SpqrTree
from .errors import ContractViolation
from .feedback import (ALREADY_ACYCLIC, _feedback_directed, _feedback_tipless, _incidence,
                       _orient, _arcs_from_flips, _topo, _out_lists)
from .graph import MINUS, PLUS, BidirectedGraph

State = tuple  # (no_extremity: bool, acyclic: Optional[bool])
Counts = tuple  # (a+, a-, b+, b-) edge ends at the slot endpoints inside its expansion

TRIVIAL, WHOLE, PNODE, RNODE = "trivial", "whole-block", "P-node", "R-node"
PROVENANCE_ORDER = {TRIVIAL: 0, WHOLE: 1, PNODE: 2, RNODE: 3}


def _two_tip_ok(names: list[int], edges: list[tuple[int, int, int, int]], p0: int, p1: int) -> bool:
    """Cycloid-freeness of a connected graph whose tips must be exactly ``p0`` and ``p1``."""
    local = {v: i for i, v in enumerate(names)}
    n = len(names)
    has = [0] * n
    eu, su, ev, sv = [], [], [], []
    for a, sa, b, sb in edges:
        la, lb = local[a], local[b]
        eu.append(la)
        su.append(sa)
        ev.append(lb)
        sv.append(sb)
        has[la] |= 1 << sa
        has[lb] |= 1 << sb
    tips = [names[i] for i in range(n) if has[i] != 3]
    for x in tips:
        assert x == p0 or x == p1, "tip outside the poles of an extremity-free expansion"
    if len(tips) < 2:
        return False
    inc = _incidence(n, eu, ev)
    flip = _orient(n, eu, su, ev, sv, inc, local[p0])
    if flip is None:
        return False
    tails, heads = _arcs_from_flips(eu, su, ev, sv, [max(f, 0) for f in flip])
    return _topo(n, tails, heads, _out_lists(n, tails, heads)) is not None


class BlockEngine:
    """Counts and states for one 2-connected block and its SPQR tree."""

    def __init__(self, g: BidirectedGraph, tree: SpqrTree, tot: list[list[int]], ext: list[bool]) -> None:
        self.g = g
        self.tree = tree
        self.tot = tot
        self.ext = ext
        nodes = tree.nodes
        self.verts = [nd.vertices for nd in nodes]
        geu, gsu, gev, gsv = g.eu, g.su, g.ev, g.sv
        blk: dict[int, list[int]] = {}
        for e in tree.edges:
            for v, s in ((geu[e], gsu[e]), (gev[e], gsv[e])):
                c = blk.get(v)
                if c is None:
                    c = blk[v] = [0, 0]
                c[s] += 1
        self.blk = blk
        cnt: list[list[Optional[Counts]]] = [[None] * len(nd.eu) for nd in nodes]
        for k, nd in enumerate(nodes):
            ck = cnt[k]
            for i, r in enumerate(nd.real):
                if r >= 0:
                    if geu[r] == nd.eu[i]:
                        sa, sb = gsu[r], gsv[r]
                    else:
                        sa, sb = gsv[r], gsu[r]
                    ck[i] = (1 - sa, sa, 1 - sb, sb)
        for k in reversed(tree.order):
            nd = nodes[k]
            ps = nd.parent_slot
            if ps < 0:
                continue
            p0, p1 = nd.eu[ps], nd.ev[ps]
            c0 = c1 = c2 = c3 = 0
            ck = cnt[k]
            for i, (a, b) in enumerate(zip(nd.eu, nd.ev)):
                if i == ps:
                    continue
                x = ck[i]
                if a == p0:
                    c0 += x[0]
                    c1 += x[1]
                elif a == p1:
                    c2 += x[0]
                    c3 += x[1]
                if b == p0:
                    c0 += x[2]
                    c1 += x[3]
                elif b == p1:
                    c2 += x[2]
                    c3 += x[3]
            pk, pi = nd.twin[ps]
            cnt[pk][pi] = (c0, c1, c2, c3)
            b0, b1 = blk[p0], blk[p1]
            ck[ps] = (b0[0] - c0, b0[1] - c1, b1[0] - c2, b1[1] - c3)
        self.cnt = cnt
        self.down: list[Optional[State]] = [None] * len(nodes)
        self.up: list[Optional[State]] = [None] * len(nodes)

    # slot helpers

    def slot_state(self, k: int, i: int) -> State:
        """State of the expansion behind slot ``i`` of node ``k`` (real edges are clean)."""
        nd = self.tree.nodes[k]
        if nd.real[i] >= 0:
            return (True, True)
        if i == nd.parent_slot:
            return self.up[k]
        return self.down[nd.twin[i][0]]

    def slot_edge(self, k: int, i: int) -> tuple[int, int, int, int]:
        """Signed skeleton edge of a clean slot: the single sign at each endpoint."""
        nd = self.tree.nodes[k]
        c = self.cnt[k][i]
        return (nd.eu[i], PLUS if c[0] else MINUS, nd.ev[i], PLUS if c[2] else MINUS)

    def _k_acyclic(self, k: int, skip: int) -> bool:
        nd = self.tree.nodes[k]
        edges = [self.slot_edge(k, i) for i in range(len(nd.eu)) if i != skip]
        return _two_tip_ok(self.verts[k], edges, nd.eu[skip], nd.ev[skip])

    # phases

    def phase1(self) -> None:
        nodes = self.tree.nodes
        ext = self.ext
        down = self.down
        for k in reversed(self.tree.order):
            nd = nodes[k]
            ps = nd.parent_slot
            if ps < 0:
                continue
            p0, p1 = nd.eu[ps], nd.ev[ps]
            noext = True
            for v in self.verts[k]:
                if ext[v] and v != p0 and v != p1:
                    noext = False
                    break
            acyc_below = True
            if noext:
                for c, _ in nd.children:
                    st = down[c]
                    if not st[0]:
                        noext = False
                        break
                    if st[1] is False:
                        acyc_below = False
            if not noext:
                down[k] = (False, None)
            elif not acyc_below:
                down[k] = (True, False)
            else:
                down[k] = (True, self._k_acyclic(k, ps))

    def phase2(self) -> None:
        nodes = self.tree.nodes
        ext = self.ext
        down, up = self.down, self.up
        for k in self.tree.order:
            nd = nodes[k]
            if not nd.children:
                continue
            ps = nd.parent_slot
            leaving = [(i, down[c]) for c, i in nd.children]
            if ps >= 0:
                leaving.append((ps, up[k]))
            extremities = []
            for v in self.verts[k]:
                if ext[v]:
                    extremities.append(v)
                    if len(extremities) == 3:
                        break
            bad_ne = [i for i, st in leaving if not st[0]][:2]
            bad_ac = [i for i, st in leaving if st[1] is not True][:2]
            joint: Optional[Callable[[int], bool]] = None
            ne_ok: dict[int, bool] = {}
            for c, i in nd.children:
                a, b = nd.eu[i], nd.ev[i]
                ne_ok[i] = (len(extremities) <= 2 and all(v == a or v == b for v in extremities)
                            and all(j == i for j in bad_ne))
            for c, i in nd.children:
                if not ne_ok[i]:
                    up[c] = (False, None)
                elif any(j != i for j in bad_ac):
                    up[c] = (True, False)
                elif bad_ac:
                    up[c] = (True, self._k_acyclic(k, i))
                else:
                    if joint is None:
                        joint = self._joint(k, ne_ok)
                    up[c] = (True, joint(i))

    def _joint(self, k: int, ne_ok: dict[int, bool]) -> Callable[[int], bool]:
        """Decide acyclicity of every ``K - e_i`` at once, ``K`` the full signed skeleton."""
        nd = self.tree.nodes[k]
        names = self.verts[k]
        local = {v: j for j, v in enumerate(names)}
        n = len(names)
        eu, su, ev, sv = [], [], [], []
        has = [0] * n
        for i in range(len(nd.eu)):
            a, sa, b, sb = self.slot_edge(k, i)
            la, lb = local[a], local[b]
            eu.append(la)
            su.append(sa)
            ev.append(lb)
            sv.append(sb)
            has[la] |= 1 << sa
            has[lb] |= 1 << sb
        inc = _incidence(n, eu, ev)
        flip = _orient(n, eu, su, ev, sv, inc, 0)
        if flip is not None:
            tails, heads = _arcs_from_flips(eu, su, ev, sv, flip)
            kind, arcs = _feedback_directed(n, tails, heads)
            good = set(arcs)
            return good.__contains__
        tips = [j for j in range(n) if has[j] != 3]
        if not tips:
            kind, arcs = _feedback_tipless(n, eu, su, ev, sv, inc)
            if kind == ALREADY_ACYCLIC:
                # a tipless skeleton always carries a cycloid; reaching this is a bug
                raise ContractViolation(f"tipless skeleton of node {k} reported acyclic")
            good = set(arcs)
            return good.__contains__
        if len(tips) > 1:
            return lambda i: False
        # one tip x: every acyclic K - e_i has e_i on any cycloid of K, and e_i meets x
        x = tips[0]
        walk_pos: dict[int, int] = {}
        walk_edges: list[int] = []
        y, need = x, (0 if has[x] == 1 else 1)
        while y not in walk_pos:
            walk_pos[y] = len(walk_edges)
            e = next(e for e in inc[y] if (su[e] if eu[e] == y else sv[e]) == need)
            walk_edges.append(e)
            if eu[e] == y:
                y, need = ev[e], sv[e] ^ 1
            else:
                y, need = eu[e], su[e] ^ 1
        cycle = walk_edges[walk_pos[y]:]
        good = set()
        for i in cycle:
            if (eu[i] == x or ev[i] == x) and ne_ok.get(i):
                if self._k_acyclic(k, i):
                    good.add(i)
        return good.__contains__

    # reporting

    def phase3(self, back_edge: Callable[[int, int, int, int], bool]) -> list[tuple[int, int, int, int, str]]:
        out: list[tuple[int, int, int, int, str]] = []
        nodes = self.tree.nodes
        tot = self.tot
        for k, nd in enumerate(nodes):
            if nd.kind != "P":
                continue
            x, y = nd.eu[0], nd.ev[0]
            slots = len(nd.eu)
            cx = []  # counts per slot oriented as (x+, x-, y+, y-)
            for i in range(slots):
                c = self.cnt[k][i]
                cx.append(c if nd.eu[i] == x else (c[2], c[3], c[0], c[1]))
            for a in (PLUS, MINUS):
                for b in (PLUS, MINUS):
                    group = [i for i in range(slots) if cx[i][a]]
                    if not group or len(group) == slots:
                        continue
                    if sum(1 for i in range(slots) if cx[i][2 + b]) != len(group):
                        continue
                    if any(not cx[i][2 + b] for i in group):
                        continue
                    ok = True
                    sx = sy = 0
                    for i in group:
                        st = self.slot_state(k, i)
                        c = cx[i]
                        if not st[0] or st[1] is not True or c[a ^ 1] or c[2 + (b ^ 1)]:
                            ok = False
                            break
                        sx += c[a]
                        sy += c[2 + b]
                    if not ok:
                        continue
                    assert sum(1 for i in range(slots) if cx[i][a ^ 1]) == slots - len(group), \
                        "P-node sign groups do not partition the skeleton"
                    if tot[a][x] != sx or tot[b][y] != sy:
                        continue
                    if len(group) == 1:
                        i = group[0]
                        if nd.real[i] < 0 and nodes[nd.twin[i][0]].kind == "S":
                            continue
                    if back_edge(x, a ^ 1, y, b ^ 1):
                        continue
                    out.append((x, a, y, b, PNODE))
        for k, nd in enumerate(nodes):
            ps = nd.parent_slot
            if ps < 0:
                continue
            pk = nd.parent
            pkind = nodes[pk].kind
            p0, p1 = nd.eu[ps], nd.ev[ps]
            sides = []
            if nd.kind == "R" and pkind != "P":
                pk2, pi2 = nd.twin[ps]
                sides.append((self.down[k], self.cnt[pk2][pi2]))
            if pkind == "R" and nd.kind != "P":
                sides.append((self.up[k], self.cnt[k][ps]))
            for st, c in sides:
                if not st[0] or st[1] is not True:
                    continue
                a = PLUS if c[0] else MINUS
                b = PLUS if c[2] else MINUS
                if tot[a][p0] != c[a] or tot[b][p1] != c[2 + b]:
                    continue
                if back_edge(p0, a ^ 1, p1, b ^ 1):
                    continue
                out.append((p0, a, p1, b, RNODE))
        return out


def whole_block(g: BidirectedGraph, edges, tot, cut: list[bool],
                back_edge: Callable[[int, int, int, int], bool],
                in_rnode: Callable[[int], bool]) -> list[tuple[int, int, int, int]]:
    """The block, or the block minus one edge, as a single bubble.

    With two tips the candidate is the whole block.  A tipless block can still
    hold a bubble once an edge ``{u g, v d}`` is dropped whose ends are the only
    ``g``-end at ``u`` and the only ``d``-end at ``v``; dropping it must leave the
    rest cycloid-free, so the candidates are the tipless feedback edges.  The
    edge must sit in an R-node skeleton: elsewhere the rest has a cutvertex
    between ``u`` and ``v`` (S-node) or the P-node grouping already covers it.
    """
    has: dict[int, int] = {}
    cnt: dict[int, list[int]] = {}
    geu, gsu, gev, gsv = g.eu, g.su, g.ev, g.sv
    signed = []
    for e in edges:
        u, s, v, t = geu[e], gsu[e], gev[e], gsv[e]
        signed.append((u, s, v, t))
        for x, sx in ((u, s), (v, t)):
            has[x] = has.get(x, 0) | (1 << sx)
            c = cnt.get(x)
            if c is None:
                c = cnt[x] = [0, 0]
            c[sx] += 1
    cuts = [x for x in has if cut[x]]
    if len(cuts) > 2:
        return []
    tips = [x for x, h in has.items() if h != 3]
    if len(tips) == 2:
        u, v = tips
        a = PLUS if has[u] == 1 else MINUS
        b = PLUS if has[v] == 1 else MINUS
        if tot[a][u] != cnt[u][a] or tot[b][v] != cnt[v][b]:
            return []
        if any(x != u and x != v for x in cuts) or back_edge(u, a ^ 1, v, b ^ 1):
            return []
        if not _two_tip_ok(list(has), signed, u, v):
            return []
        return [(u, a, v, b)]
    if tips:
        return []
    cand = [j for j, (u, s, v, t) in enumerate(signed) if cnt[u][s] == 1 and cnt[v][t] == 1]
    if not cand:
        return []
    names = list(has)
    local = {x: i for i, x in enumerate(names)}
    kind, arcs = _feedback_tipless(len(names), [local[x[0]] for x in signed], [x[1] for x in signed],
                                   [local[x[2]] for x in signed], [x[3] for x in signed])
    fb = set(arcs)
    out = []
    for j in cand:
        if j not in fb or not in_rnode(edges[j]):
            continue
        u, s, v, t = signed[j]
        a, b = s ^ 1, t ^ 1
        if tot[a][u] != cnt[u][a] or tot[b][v] != cnt[v][b]:
            continue
        if any(x != u and x != v for x in cuts) or back_edge(u, s, v, t):
            continue
        out.append((u, a, v, b))
    return out


def trivial_bubbles(g: BidirectedGraph, edges, tot, back_edge) -> list[tuple[int, int, int, int]]:
    out = []
    geu, gsu, gev, gsv = g.eu, g.su, g.ev, g.sv
    tp, tm = tot
    for e in edges:
        u, s, v, t = geu[e], gsu[e], gev[e], gsv[e]
        if (tp[u] if s == PLUS else tm[u]) != 1 or (tp[v] if t == PLUS else tm[v]) != 1:
            continue
        if back_edge(u, s ^ 1, v, t ^ 1):
            continue
        out.append((u, s, v, t))
    return out


Found = tuple  # (u, a, v, b, provenance) with (u, a) < (v, b) by name then sign


class GraphContext:
    """Whole-graph data shared by all blocks: sign degrees, extremities, block-cut tree."""

    def __init__(self, g: BidirectedGraph) -> None:
        from .connectivity import blocks_of_graph
        self.g = g
        self.tot = g.sign_degrees()
        self.bct = blocks_of_graph(g)
        tp, tm = self.tot
        self.cut = [len(bs) > 1 for bs in self.bct.blocks_of]
        self.ext = [self.cut[v] or not tp[v] or not tm[v] for v in range(g.n)]
        self._keys: Optional[set] = None

    def has_edge(self, u: int, s: int, v: int, t: int) -> bool:
        if self._keys is None:
            g = self.g
            self._keys = set(zip(g.eu, g.su, g.ev, g.sv))
            self._keys.update(zip(g.ev, g.sv, g.eu, g.su))
        return (u, s, v, t) in self._keys

    def spqr(self, b: int) -> SpqrTree:
        from .connectivity import spqr_tree
        return spqr_tree(self.bct.view, self.bct.blocks[b])


def canonical(g: BidirectedGraph, u: int, a: int, v: int, b: int) -> tuple[int, int, int, int]:
    nm = g.names
    if (nm[u], a) > (nm[v], b):
        return v, b, u, a
    return u, a, v, b


def block_bubbles(ctx: GraphContext, b: int, back_edge: bool) -> list[Found]:
    """Bubbles of one block, grouped by provenance and sorted by name within a group."""
    g = ctx.g
    edges = ctx.bct.blocks[b]
    be = ctx.has_edge if back_edge else (lambda u, s, v, t: False)
    found: list[Found] = [(*t, TRIVIAL) for t in trivial_bubbles(g, edges, ctx.tot, be)]
    if not ctx.bct.is_multi_bridge(b):
        tree = ctx.spqr(b)
        rreal = {r for nd in tree.nodes if nd.kind == "R" for r in nd.real if r >= 0}
        found.extend((*w, WHOLE) for w in whole_block(g, edges, ctx.tot, ctx.cut, be, rreal.__contains__))
        if len(tree.nodes) >= 2:
            eng = BlockEngine(g, tree, ctx.tot, ctx.ext)
            eng.phase1()
            eng.phase2()
            found.extend(eng.phase3(be))
    nm = g.names
    out = []
    for u, a, v, bb, prov in found:
        u, a, v, bb = canonical(g, u, a, v, bb)
        out.append((u, a, v, bb, prov))
    out.sort(key=lambda f: (PROVENANCE_ORDER[f[4]], nm[f[0]], f[1], nm[f[2]], f[3]))
    return out


@contextmanager
def paused_gc() -> Iterator[None]:
    """Suspend cyclic garbage collection.

    The finders allocate millions of lists but no reference cycles; on large
    inputs the collector's full passes otherwise cost time that grows with
    the heap.
    """
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def find_bubbles(g: BidirectedGraph, back_edge: bool = False, threads: int = 1) -> list[Found]:
    """All bubbles of ``g``, deduplicated, in block order."""
    with paused_gc():
        return _find_bubbles(g, back_edge, threads)


def _find_bubbles(g: BidirectedGraph, back_edge: bool, threads: int) -> list[Found]:
    ctx = GraphContext(g)
    nb = len(ctx.bct.blocks)
    if threads > 1 and nb > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_block = list(pool.map(lambda b: block_bubbles(ctx, b, back_edge), range(nb)))
    else:
        per_block = [block_bubbles(ctx, b, back_edge) for b in range(nb)]
    seen: set = set()
    out: list[Found] = []
    for fs in per_block:
        for f in fs:
            if f[:4] not in seen:
                seen.add(f[:4])
                out.append(f)
    return out


def engine_for(g: BidirectedGraph, tree: SpqrTree) -> BlockEngine:
    """Engine over one block tree, with extremities taken from the whole graph."""
    ctx = GraphContext(g)
    return BlockEngine(g, tree, ctx.tot, ctx.ext)


def tree_edges(tree: SpqrTree) -> list[tuple[int, int]]:
    """``(parent, child)`` pairs in BFS order."""
    return [(tree.nodes[k].parent, k) for k in tree.order if tree.nodes[k].parent >= 0]


def down_counts(eng: BlockEngine, k: int) -> Counts:
    """Pole counts of the expansion on the child side of node ``k``'s reference edge."""
    nd = eng.tree.nodes[k]
    pk, pi = nd.twin[nd.parent_slot]
    return eng.cnt[pk][pi]


def up_counts(eng: BlockEngine, k: int) -> Counts:
    return eng.cnt[k][eng.tree.nodes[k].parent_slot]
