"""Block-cut trees and SPQR trees over the sign-stripped view of a graph.

Vertex and edge ids in this module are the dense ids of the source graph, so
results can be mapped back to signs without translation tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from ._tricomp import triconnected_components
from .errors import ContractViolation, InputError
from .graph import SIGN_CHARS, BidirectedGraph, DirectedGraph, UndirectedView


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks (edge id tuples) and cutvertices; a two-vertex block is a multi-bridge."""

    view: UndirectedView
    blocks: tuple[tuple[int, ...], ...]
    block_vertices: tuple[tuple[int, ...], ...]
    cut_vertices: tuple[int, ...]
    blocks_of: tuple[tuple[int, ...], ...]

    def is_multi_bridge(self, b: int) -> bool:
        return len(self.block_vertices[b]) == 2

    def is_cut(self, v: int) -> bool:
        return len(self.blocks_of[v]) > 1

    @property
    def tree_edges(self) -> list[tuple[int, int]]:
        """Pairs ``(block, cutvertex)`` of the tree adjacency."""
        return [(b, v) for v in self.cut_vertices for b in self.blocks_of[v]]

    def to_dot(self) -> str:
        nm = self.view.names
        lines = ["graph blockcut {"]
        for b, vs in enumerate(self.block_vertices):
            kind = "bridge" if len(vs) == 2 else "block"
            lines.append(f'  B{b} [shape=box,label="{kind} {b}: {len(self.blocks[b])} edges"];')
        for v in self.cut_vertices:
            lines.append(f'  C{v} [label="{nm[v]}"];')
        for b, v in self.tree_edges:
            lines.append(f"  B{b} -- C{v};")
        lines.append("}")
        return "\n".join(lines)


def block_cut_tree(u: UndirectedView) -> BlockCutTree:
    """Biconnected components of the multigraph, by an iterative edge-stack DFS."""
    n, eu, ev = u.n, u.eu, u.ev
    inc: list[list[int]] = [[] for _ in range(n)]
    for e in range(len(eu)):
        inc[eu[e]].append(e)
        inc[ev[e]].append(e)
    disc = [0] * n
    low = [0] * n
    pedge = [-1] * n
    ptr = [0] * n
    estack: list[int] = []
    blocks: list[tuple[int, ...]] = []
    clock = 0
    for root in range(n):
        if disc[root] or not inc[root]:
            continue
        clock += 1
        disc[root] = low[root] = clock
        stack = [root]
        while stack:
            v = stack[-1]
            iv = inc[v]
            i = ptr[v]
            if i < len(iv):
                ptr[v] = i + 1
                e = iv[i]
                if e == pedge[v]:
                    continue
                w = ev[e] if eu[e] == v else eu[e]
                if not disc[w]:
                    clock += 1
                    disc[w] = low[w] = clock
                    pedge[w] = e
                    estack.append(e)
                    stack.append(w)
                elif disc[w] < disc[v]:
                    estack.append(e)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                continue
            stack.pop()
            if not stack:
                break
            p = stack[-1]
            if low[v] < low[p]:
                low[p] = low[v]
            if low[v] >= disc[p]:
                te = pedge[v]
                k = len(estack) - 1
                while estack[k] != te:
                    k -= 1
                blocks.append(tuple(estack[k:]))
                del estack[k:]
    blocks_of: list[list[int]] = [[] for _ in range(n)]
    block_vertices = []
    for b, es in enumerate(blocks):
        vs = []
        for e in es:
            for x in (eu[e], ev[e]):
                bo = blocks_of[x]
                if not bo or bo[-1] != b:
                    bo.append(b)
                    vs.append(x)
        block_vertices.append(tuple(vs))
    cuts = tuple(v for v in range(n) if len(blocks_of[v]) > 1)
    return BlockCutTree(u, tuple(blocks), tuple(block_vertices), cuts,
                        tuple(tuple(b) for b in blocks_of))


@dataclass(eq=False)
class SpqrNode:
    """Skeleton of one tree node.

    Slot ``i`` is the skeleton edge ``eu[i]``-``ev[i]`` (global vertex ids).
    ``real[i]`` is the graph edge id, or ``-1`` for a virtual edge whose twin
    is ``twin[i] = (node, slot)``.
    """

    kind: str
    eu: list[int]
    ev: list[int]
    real: list[int]
    twin: list[tuple[int, int]]
    parent: int = -1
    parent_slot: int = -1
    children: list[tuple[int, int]] = field(default_factory=list)

    @property
    def vertices(self) -> list[int]:
        seen: dict[int, None] = {}
        for a, b in zip(self.eu, self.ev):
            seen[a] = None
            seen[b] = None
        return list(seen)

    @property
    def poles(self) -> Optional[tuple[int, int]]:
        """Endpoints of the reference edge; ``None`` at the root."""
        if self.parent_slot < 0:
            return None
        return self.eu[self.parent_slot], self.ev[self.parent_slot]


@dataclass(frozen=True)
class ExpansionRef:
    node: int
    slot: int


@dataclass(eq=False)
class SpqrTree:
    """SPQR tree of one block, Q-nodes omitted, rooted at the node holding the smallest edge."""

    view: UndirectedView
    edges: tuple[int, ...]
    nodes: list[SpqrNode]
    root: int
    order: list[int]

    def endpoints(self, ref: ExpansionRef) -> tuple[int, int]:
        nd = self.nodes[ref.node]
        return nd.eu[ref.slot], nd.ev[ref.slot]

    def cycle(self, node: int) -> list[int]:
        """Vertices of an S-node in cycle order, starting with the reference edge."""
        nd = self.nodes[node]
        if nd.kind != "S":
            raise InputError(f"node {node} is not an S-node")
        start = nd.parent_slot if nd.parent_slot >= 0 else 0
        at: dict[int, list[int]] = {}
        for i, (a, b) in enumerate(zip(nd.eu, nd.ev)):
            at.setdefault(a, []).append(i)
            at.setdefault(b, []).append(i)
        out = [nd.eu[start], nd.ev[start]]
        prev = start
        while len(out) < len(nd.eu):
            v = out[-1]
            i = at[v][0] if at[v][0] != prev else at[v][1]
            out.append(nd.ev[i] if nd.eu[i] == v else nd.eu[i])
            prev = i
        return out

    def separation_pairs(self) -> set[frozenset[str]]:
        """Virtual-edge endpoints together with nonadjacent S-skeleton pairs."""
        nm = self.view.names
        out: set[frozenset[str]] = set()
        for k, nd in enumerate(self.nodes):
            for i, r in enumerate(nd.real):
                if r < 0:
                    out.add(frozenset((nm[nd.eu[i]], nm[nd.ev[i]])))
            if nd.kind == "S":
                cyc = self.cycle(k)
                q = len(cyc)
                for i in range(q):
                    for j in range(i + 2, q):
                        if i == 0 and j == q - 1:
                            continue
                        out.add(frozenset((nm[cyc[i]], nm[cyc[j]])))
        return out

    def to_dot(self) -> str:
        nm = self.view.names
        lines = ["graph spqr {"]
        for k, nd in enumerate(self.nodes):
            vs = ",".join(nm[v] for v in nd.vertices)
            nreal = sum(1 for r in nd.real if r >= 0)
            lines.append(f'  N{k} [label="{nd.kind} {{{vs}}} real={nreal} virtual={len(nd.real) - nreal}"];')
        for k, nd in enumerate(self.nodes):
            if nd.parent >= 0:
                a, b = nd.poles
                lines.append(f'  N{nd.parent} -- N{k} [label="{nm[a]},{nm[b]}"];')
        lines.append("}")
        return "\n".join(lines)


def spqr_tree(block: UndirectedView, edges: Optional[Sequence[int]] = None) -> SpqrTree:
    """SPQR tree of the block formed by ``edges`` (default: all edges of ``block``)."""
    eu_g, ev_g = block.eu, block.ev
    es = tuple(range(len(eu_g))) if edges is None else tuple(edges)
    local: dict[int, int] = {}
    verts: list[int] = []
    leu: list[int] = []
    lev: list[int] = []
    for e in es:
        for x in (eu_g[e], ev_g[e]):
            if x not in local:
                local[x] = len(verts)
                verts.append(x)
        leu.append(local[eu_g[e]])
        lev.append(local[ev_g[e]])
    if len(es) < 2 or len(verts) < 3:
        raise ContractViolation("SPQR trees need a block with at least two edges and three vertices")
    comps, src, dst = triconnected_components(len(verts), leu, lev)
    m0 = len(es)
    nodes: list[SpqrNode] = []
    seen_at: dict[int, tuple[int, int]] = {}
    for k, (kind, ids) in enumerate(comps):
        nd = SpqrNode(kind, [verts[src[x]] for x in ids], [verts[dst[x]] for x in ids],
                      [es[x] if x < m0 else -1 for x in ids], [(-1, -1)] * len(ids))
        for i, x in enumerate(ids):
            if x >= m0:
                other = seen_at.pop(x, None)
                if other is None:
                    seen_at[x] = (k, i)
                else:
                    nd.twin[i] = other
                    nodes[other[0]].twin[other[1]] = (k, i)
        nodes.append(nd)
    if seen_at:
        raise ContractViolation("unpaired virtual edge in decomposition")
    nm = block.names

    def key(e: int) -> tuple[str, str, int]:
        a, b = nm[eu_g[e]], nm[ev_g[e]]
        return (a, b, e) if a <= b else (b, a, e)

    first = min(es, key=key)
    root = next(k for k, nd in enumerate(nodes) if first in nd.real)
    order = [root]
    head = 0
    while head < len(order):
        k = order[head]
        head += 1
        nd = nodes[k]
        for i, (c, j) in enumerate(nd.twin):
            if c < 0 or c == nd.parent and i == nd.parent_slot:
                continue
            ch = nodes[c]
            ch.parent = k
            ch.parent_slot = j
            nd.children.append((c, i))
            order.append(c)
    return SpqrTree(block, es, nodes, root, order)


def expansion_edges(t: SpqrTree, ref: ExpansionRef) -> list[int]:
    """Real edges on the far side of skeleton edge ``ref``; a real slot gives itself."""
    if not 0 <= ref.node < len(t.nodes) or not 0 <= ref.slot < len(t.nodes[ref.node].real):
        raise InputError(f"no skeleton edge {ref}")
    nd = t.nodes[ref.node]
    if nd.real[ref.slot] >= 0:
        return [nd.real[ref.slot]]
    out: list[int] = []
    todo = [nd.twin[ref.slot]]
    while todo:
        k, skip = todo.pop()
        cur = t.nodes[k]
        for i, r in enumerate(cur.real):
            if i == skip:
                continue
            if r >= 0:
                out.append(r)
            else:
                todo.append(cur.twin[i])
    return out


def expansion_vertices(t: SpqrTree, ref: ExpansionRef) -> set[int]:
    eu, ev = t.view.eu, t.view.ev
    out: set[int] = set()
    for e in expansion_edges(t, ref):
        out.add(eu[e])
        out.add(ev[e])
    return out


Flags2 = tuple[bool, bool]


def directed_skeleton(t: SpqrTree, node: int, reach: Union[Sequence[Flags2], dict[int, Flags2]]) -> DirectedGraph:
    """Arc ``eu->ev`` per slot with a forward flag and ``ev->eu`` with a backward flag."""
    nd = t.nodes[node]
    nm = t.view.names
    arcs: list[tuple[str, str]] = []
    for i, (a, b) in enumerate(zip(nd.eu, nd.ev)):
        flags = _flag(reach, i)
        if flags[0]:
            arcs.append((nm[a], nm[b]))
        if flags[1]:
            arcs.append((nm[b], nm[a]))
    return DirectedGraph([nm[v] for v in nd.vertices], arcs)


def bidirected_skeleton(t: SpqrTree, node: int, reach4) -> BidirectedGraph:
    """Edge ``{eu alpha, ev beta}`` per slot whenever ``reach4[slot][alpha][beta]`` holds."""
    nd = t.nodes[node]
    nm = t.view.names
    edges: list[tuple[str, str, str, str]] = []
    for i, (a, b) in enumerate(zip(nd.eu, nd.ev)):
        flags = _flag(reach4, i)
        for x in (0, 1):
            for y in (0, 1):
                if flags[x][y]:
                    edges.append((nm[a], SIGN_CHARS[x], nm[b], SIGN_CHARS[y]))
    return BidirectedGraph([nm[v] for v in nd.vertices], edges)


def _flag(table, i: int):
    try:
        return table[i]
    except (KeyError, IndexError):
        raise ContractViolation(f"missing reachability flags for skeleton slot {i}") from None


def blocks_of_graph(g: BidirectedGraph) -> BlockCutTree:
    return block_cut_tree(UndirectedView(g.names, g.eu, g.ev))


def check_tree(t: SpqrTree) -> None:
    """Assert the structural invariants of an SPQR tree; raises ContractViolation."""
    seen: dict[int, int] = {}
    for k, nd in enumerate(t.nodes):
        vs = nd.vertices
        if nd.kind == "P" and (len(vs) != 2 or len(nd.eu) < 3):
            raise ContractViolation(f"P-node {k} is not a bond", witness=k)
        if nd.kind == "S" and len(vs) != len(nd.eu):
            raise ContractViolation(f"S-node {k} is not a cycle", witness=k)
        if nd.kind == "R":
            pairs = {(min(a, b), max(a, b)) for a, b in zip(nd.eu, nd.ev)}
            if len(pairs) != len(nd.eu) or len(vs) < 4:
                raise ContractViolation(f"R-node {k} skeleton is not simple", witness=k)
        if nd.parent >= 0 and nd.kind != "R" and t.nodes[nd.parent].kind == nd.kind:
            raise ContractViolation(f"adjacent {nd.kind}-nodes", witness=k)
        for r in nd.real:
            if r >= 0:
                seen[r] = seen.get(r, 0) + 1
    if sorted(seen) != sorted(t.edges) or any(c != 1 for c in seen.values()):
        raise ContractViolation("real edges are not partitioned among skeletons")
    if len(t.order) != len(t.nodes):
        raise ContractViolation("SPQR tree is not connected")

