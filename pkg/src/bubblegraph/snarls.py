"""Linear-size snarl representation: tip sets per sign-cut graph plus explicit pairs.

Every sign-consistent cutvertex (one sign towards each incident block) is split
so that its two copies become tips of different sign-cut graphs.  Inside one
sign-cut graph any two tips form a snarl; every other snarl joins two non-tips
of one block and is found by the S-node, P-node, R-R and edge finders below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from . import _engine
from .connectivity import SpqrTree
from .graph import MINUS, PLUS, SIGN_CHARS, BidirectedGraph, SidePair, VertexSide, side_pair

Found = tuple[int, int, int, int]  # (u, a, v, b) in dense ids and signs


@dataclass(frozen=True)
class SignCutDecomposition:
    """Sign-cut graphs ``graphs[i]`` with vertices keeping their original names.

    ``homes[v]`` lists the graph indices holding vertex ``v`` (two iff it was
    split, plus side first); ``edge_home[e]`` is the graph holding edge ``e``.
    """

    graphs: tuple[BidirectedGraph, ...]
    homes: dict[str, tuple[int, ...]]
    edge_home: tuple[int, ...]


@dataclass(frozen=True)
class SnarlRepresentation:
    tip_sets: tuple[tuple[VertexSide, ...], ...]
    pairs: tuple[SidePair, ...]

    @property
    def size(self) -> int:
        return sum(len(t) for t in self.tip_sets) + len(self.pairs)


class _SnarlContext(_engine.GraphContext):
    """Adds per-vertex block sign summaries and the sign-cut labelling."""

    def __init__(self, g: BidirectedGraph) -> None:
        super().__init__(g)
        bct = self.bct
        n = g.n
        geu, gsu, gev, gsv = g.eu, g.su, g.ev, g.sv
        # mixed[b] holds the vertices of block b seeing both signs inside it
        mixed_blocks = [0] * n
        mixed: list[set[int]] = []
        for edges in bct.blocks:
            seen: dict[int, int] = {}
            for e in edges:
                seen[geu[e]] = seen.get(geu[e], 0) | (1 << gsu[e])
                seen[gev[e]] = seen.get(gev[e], 0) | (1 << gsv[e])
            mx = {v for v, h in seen.items() if h == 3}
            for v in mx:
                mixed_blocks[v] += 1
            mixed.append(mx)
        self.mixed = mixed
        self.mixed_blocks = mixed_blocks
        self.consistent = [self.cut[v] and mixed_blocks[v] == 0 for v in range(n)]
        tp, tm = self.tot
        self.tip_in_f = [self.consistent[v] or not tp[v] or not tm[v] for v in range(n)]

    def has_dangling(self, b: int, v: int) -> bool:
        return self.mixed_blocks[v] - (v in self.mixed[b]) > 0

    def labels(self) -> tuple[list[int], int, list[int]]:
        """Component label of every edge and of every vertex copy after splitting.

        Copy ids: ``v`` for the plus side (or the whole vertex), ``n + v`` for
        the minus side of a split vertex.  Returns ``(edge_label, count, copy_label)``.
        """
        g = self.g
        n = g.n
        parent = list(range(2 * n))

        def find(x: int) -> int:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        cons = self.consistent
        for u, s, v, t in zip(g.eu, g.su, g.ev, g.sv):
            a = n + u if cons[u] and s == MINUS else u
            b = n + v if cons[v] and t == MINUS else v
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        label = [-1] * (2 * n)
        count = 0
        for x in list(range(n)) + [n + v for v in range(n) if cons[v]]:
            r = find(x)
            if label[r] < 0:
                label[r] = count
                count += 1
            label[x] = label[r]
        edge_label = [label[n + u if cons[u] and s == MINUS else u] for u, s in zip(g.eu, g.su)]
        return edge_label, count, label


def sign_cut_graphs(g: BidirectedGraph) -> SignCutDecomposition:
    """Split every sign-consistent cutvertex and return the resulting components."""
    ctx = _SnarlContext(g)
    edge_label, count, label = ctx.labels()
    n = g.n
    verts: list[list[str]] = [[] for _ in range(count)]
    homes: dict[str, tuple[int, ...]] = {}
    for v in range(n):
        hs = (label[v], label[n + v]) if ctx.consistent[v] else (label[v],)
        homes[g.names[v]] = hs
        for h in hs:
            verts[h].append(g.names[v])
    edges: list[list[tuple[str, str, str, str]]] = [[] for _ in range(count)]
    for e, tup in enumerate(g.edge_tuples()):
        edges[edge_label[e]].append(tup)
    graphs = tuple(BidirectedGraph(verts[i], edges[i]) for i in range(count))
    return SignCutDecomposition(graphs, homes, tuple(edge_label))


# block finders


def _eng(ctx: _SnarlContext, tree: SpqrTree) -> _engine.BlockEngine:
    return _engine.BlockEngine(ctx.g, tree, ctx.tot, ctx.ext)


def _blocked(ctx: _SnarlContext, b: int, v: int) -> bool:
    return ctx.tip_in_f[v] or ctx.has_dangling(b, v)


def find_snarls_S(ctx: _SnarlContext, b: int, eng: _engine.BlockEngine) -> list[Found]:
    """Consecutive good vertices around every S-node cycle."""
    out: list[Found] = []
    tree = eng.tree
    for k, nd in enumerate(tree.nodes):
        if nd.kind != "S":
            continue
        at: dict[int, list[int]] = {}
        for i, (x, y) in enumerate(zip(nd.eu, nd.ev)):
            at.setdefault(x, []).append(i)
            at.setdefault(y, []).append(i)
        start = nd.parent_slot if nd.parent_slot >= 0 else 0
        # walk the cycle: slot i enters vertex v, the next slot leaves it
        w: list[tuple[int, int]] = []
        i, v = start, nd.ev[start]
        for _ in range(len(nd.eu)):
            j = at[v][0] if at[v][0] != i else at[v][1]
            if not _blocked(ctx, b, v):
                cl, cr = eng.cnt[k][i], eng.cnt[k][j]
                lp, lm = (cl[0], cl[1]) if nd.eu[i] == v else (cl[2], cl[3])
                rp, rm = (cr[0], cr[1]) if nd.eu[j] == v else (cr[2], cr[3])
                if (not lp or not rp) and (not lm or not rm):
                    a = PLUS if not lp else MINUS
                    w.append((v, a ^ 1))
                    w.append((v, a))
            i, v = j, (nd.ev[j] if nd.eu[j] == v else nd.eu[j])
        if len(w) >= 4:
            for p in range(1, len(w) - 1, 2):
                out.append((*w[p], *w[p + 1]))
            out.append((*w[-1], *w[0]))
    return out


def _pertains_to_s(tree: SpqrTree, k: int, i: int) -> bool:
    nd = tree.nodes[k]
    return nd.real[i] < 0 and tree.nodes[nd.twin[i][0]].kind == "S"


def _parallel_pairs(u: int, v: int, cu: list[tuple[int, int, int, int]],
                    via_s: Callable[[int], bool]) -> list[Found]:
    """Sign groups over parallel branches; ``cu[i]`` counts ``(u+, u-, v+, v-)`` in branch ``i``."""
    out: list[Found] = []
    if any(c[0] and c[1] for c in cu) or any(c[2] and c[3] for c in cu):
        return out
    slots = range(len(cu))
    at_u = [frozenset(i for i in slots if cu[i][a]) for a in (PLUS, MINUS)]
    at_v = [frozenset(i for i in slots if cu[i][2 + a]) for a in (PLUS, MINUS)]
    for a in (PLUS, MINUS):
        for bb in (PLUS, MINUS):
            grp = at_u[a]
            if not grp or grp != at_v[bb]:
                continue
            if not (len(grp) == 1 and via_s(next(iter(grp)))):
                out.append((u, a, v, bb))
            rest = at_u[a ^ 1]
            if rest and not (len(rest) == 1 and via_s(next(iter(rest)))):
                out.append((u, a ^ 1, v, bb ^ 1))
    return out


def find_snarls_P(ctx: _SnarlContext, b: int, eng: _engine.BlockEngine) -> list[Found]:
    """Sign groups of the parallel branches at both poles."""
    out: list[Found] = []
    tree = eng.tree
    for k, nd in enumerate(tree.nodes):
        if nd.kind != "P":
            continue
        u, v = nd.eu[0], nd.ev[0]
        if _blocked(ctx, b, u) or _blocked(ctx, b, v):
            continue
        cu = []
        for i in range(len(nd.eu)):
            c = eng.cnt[k][i]
            cu.append(c if nd.eu[i] == u else (c[2], c[3], c[0], c[1]))
        out.extend(_parallel_pairs(u, v, cu, lambda i: _pertains_to_s(tree, k, i)))
    return out


def find_snarls_bridge(ctx: _SnarlContext, b: int) -> list[Found]:
    """A multi-bridge is a bond of real edges: group its edges like a P-node."""
    g = ctx.g
    edges = ctx.bct.blocks[b]
    u, v = ctx.bct.block_vertices[b]
    if _blocked(ctx, b, u) or _blocked(ctx, b, v):
        return []
    cu = []
    for e in edges:
        s, t = (g.su[e], g.sv[e]) if g.eu[e] == u else (g.sv[e], g.su[e])
        cu.append((1 - s, s, 1 - t, t))
    return _parallel_pairs(u, v, cu, lambda i: False)


def find_snarls_RR(ctx: _SnarlContext, b: int, eng: _engine.BlockEngine) -> list[Found]:
    """Sign partitions across tree edges joining two R-nodes."""
    out: list[Found] = []
    tree = eng.tree
    for k, nd in enumerate(tree.nodes):
        if nd.parent < 0 or nd.kind != "R" or tree.nodes[nd.parent].kind != "R":
            continue
        ps = nd.parent_slot
        u, v = nd.eu[ps], nd.ev[ps]
        if _blocked(ctx, b, u) or _blocked(ctx, b, v):
            continue
        below = _engine.down_counts(eng, k)
        above = _engine.up_counts(eng, k)
        for a in (PLUS, MINUS):
            for bb in (PLUS, MINUS):
                if (not above[a] and not below[a ^ 1]
                        and not above[2 + bb] and not below[2 + (bb ^ 1)]):
                    out.append((u, a, v, bb))
                    out.append((u, a ^ 1, v, bb ^ 1))
    return out


def find_edge_snarls(ctx: _SnarlContext, b: int, tree: Optional[SpqrTree]) -> list[Found]:
    """Edges whose two sides are exclusive within the block, and their complements.

    Exclusivity is only required inside the block: other blocks at an endpoint
    carry one sign each (no dangling block), so they stay on their side of the
    split.
    """
    g = ctx.g
    edges = ctx.bct.blocks[b]
    shared_s: set[int] = set()  # real edges whose endpoints share an S-node skeleton
    if tree is not None:
        for nd in tree.nodes:
            if nd.kind == "S":
                shared_s.update(r for r in nd.real if r >= 0)
            elif nd.kind == "P" and any(c >= 0 and tree.nodes[c].kind == "S" for c, _ in nd.twin):
                shared_s.update(r for r in nd.real if r >= 0)
    cnt: dict[tuple[int, int], int] = {}
    for e in edges:
        cnt[g.eu[e], g.su[e]] = cnt.get((g.eu[e], g.su[e]), 0) + 1
        cnt[g.ev[e], g.sv[e]] = cnt.get((g.ev[e], g.sv[e]), 0) + 1
    out: list[Found] = []
    for e in edges:
        u, s, v, t = g.eu[e], g.su[e], g.ev[e], g.sv[e]
        if cnt[u, s] != 1 or cnt[v, t] != 1 or _blocked(ctx, b, u) or _blocked(ctx, b, v):
            continue
        out.append((u, s, v, t))
        if e not in shared_s:
            out.append((u, s ^ 1, v, t ^ 1))
    return out


def has_dangling(g: BidirectedGraph, block: int, v: str, ctx: Optional[_SnarlContext] = None) -> bool:
    """Whether another block at ``v`` sees both signs of ``v`` (blocks numbered as in the block-cut tree)."""
    ctx = ctx or _SnarlContext(g)
    return ctx.has_dangling(block, g.vid(v))


def block_snarls(ctx: _SnarlContext, b: int) -> list[Found]:
    if ctx.bct.is_multi_bridge(b):
        return find_snarls_bridge(ctx, b) + find_edge_snarls(ctx, b, None)
    tree = ctx.spqr(b)
    eng = _eng(ctx, tree)
    return (find_snarls_S(ctx, b, eng) + find_snarls_P(ctx, b, eng)
            + find_snarls_RR(ctx, b, eng) + find_edge_snarls(ctx, b, tree))


def _side(g: BidirectedGraph, v: int, s: int) -> VertexSide:
    return VertexSide(g.names[v], SIGN_CHARS[s])


def find_snarl_representation(g: BidirectedGraph, threads: int = 1) -> SnarlRepresentation:
    """Tip sets and explicit pairs; every snarl is a pair inside one tip set or an explicit pair."""
    with _engine.paused_gc():
        return _representation(g, threads)


def _representation(g: BidirectedGraph, threads: int) -> SnarlRepresentation:
    ctx = _SnarlContext(g)
    n = g.n
    edge_label, count, label = ctx.labels()
    tp, tm = ctx.tot
    tips: list[list[VertexSide]] = [[] for _ in range(count)]
    has_edges = [False] * count
    for lab in edge_label:
        has_edges[lab] = True
    for v in range(n):
        if ctx.consistent[v]:
            tips[label[v]].append(_side(g, v, PLUS))
            tips[label[n + v]].append(_side(g, v, MINUS))
        elif not tm[v] and tp[v]:
            tips[label[v]].append(_side(g, v, PLUS))
        elif not tp[v] and tm[v]:
            tips[label[v]].append(_side(g, v, MINUS))
    tip_sets = tuple(tuple(sorted(ts)) for i, ts in enumerate(tips) if has_edges[i])
    nb = len(ctx.bct.blocks)
    if threads > 1 and nb > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_block = list(pool.map(lambda b: block_snarls(ctx, b), range(nb)))
    else:
        per_block = [block_snarls(ctx, b) for b in range(nb)]
    seen: set[SidePair] = set()
    pairs: list[SidePair] = []
    for fs in per_block:
        for u, a, v, bb in fs:
            p = side_pair(_side(g, u, a), _side(g, v, bb))
            if p not in seen:
                seen.add(p)
                pairs.append(p)
    return SnarlRepresentation(tip_sets, tuple(sorted(pairs)))


def expand_representation(r: SnarlRepresentation) -> Iterator[SidePair]:
    """Every snarl encoded by ``r``, each once."""
    seen: set[SidePair] = set()
    for ts in r.tip_sets:
        for i in range(len(ts)):
            for j in range(i + 1, len(ts)):
                p = side_pair(ts[i], ts[j])
                if p[0].vertex != p[1].vertex and p not in seen:
                    seen.add(p)
                    yield p
    for p in r.pairs:
        if p not in seen:
            seen.add(p)
            yield p
