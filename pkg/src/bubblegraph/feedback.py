"""Feedback arcs and feedback edges.

A feedback arc of a digraph lies on every directed cycle; a feedback edge of a
bidirected graph lies on every cycloid.  Both routines run in linear time.

Directed case.  If the graph is acyclic every arc qualifies; if two strongly
connected components carry cycles nothing does.  Otherwise fix one cycle ``C``
with positions ``0..k-1``.  Every other cycle leaves ``C`` at some position
``a`` and re-enters it at ``b`` through off-cycle vertices, and such a bridge
yields a cycle avoiding exactly the cycle arcs ``a, a+1, .., b-1`` (cyclically).
The feedback arcs are the arcs of ``C`` covered by no bridge.  Bridge extremes
are computed by dynamic programming over the acyclic off-cycle part, so the
union of covered intervals is one sweep.

Tipless bidirected case.  The graph is rebuilt by ear additions while flipping
vertices so that every edge gets opposite signs; any obstruction met on the way
certifies that no edge lies on every cycloid.  On success the flipped graph is a
digraph with the same cycloids and the directed routine finishes the job.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ContractViolation
from .graph import MINUS, PLUS, SIGN_CHARS, BidirectedGraph, DirectedGraph

ALREADY_ACYCLIC = "already-acyclic"
SINGLE_SOURCE = "single-source-of-cycles"
DISJOINT_CYCLES = "multiple-disjoint-cycles"


@dataclass(frozen=True)
class FeedbackResult:
    """Feedback edge ids of the input, and which case produced them."""

    kind: str
    edges: tuple[int, ...]

    def __contains__(self, e: int) -> bool:
        return e in self.edges

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TwoTipOrientation:
    """For an acyclic two-tip graph: the source tip and the signs ``(gamma, delta)``
    of the source and sink tips, so ``source gamma`` reaches ``sink delta``."""

    acyclic: bool
    source: Optional[str] = None
    sink: Optional[str] = None
    gamma: Optional[str] = None
    delta: Optional[str] = None


# directed core


def _out_lists(n: int, tails: list[int], heads: list[int]) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(n)]
    for i, u in enumerate(tails):
        out[u].append(i)
    return out


def _topo(n: int, tails: list[int], heads: list[int], out: list[list[int]]) -> Optional[list[int]]:
    indeg = [0] * n
    for v in heads:
        indeg[v] += 1
    order = [v for v in range(n) if indeg[v] == 0]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for i in out[v]:
            w = heads[i]
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
    return order if len(order) == n else None


def _scc(n: int, heads: list[int], out: list[list[int]]) -> tuple[list[int], int]:
    """Iterative Tarjan; returns ``(component id per vertex, component count)``."""
    index = [0] * n
    low = [0] * n
    comp = [-1] * n
    ptr = [0] * n
    stack: list[int] = []
    onstack = [False] * n
    clock = 0
    ncomp = 0
    for root in range(n):
        if index[root]:
            continue
        clock += 1
        index[root] = low[root] = clock
        stack.append(root)
        onstack[root] = True
        call = [root]
        while call:
            v = call[-1]
            ov = out[v]
            if ptr[v] < len(ov):
                w = heads[ov[ptr[v]]]
                ptr[v] += 1
                if not index[w]:
                    clock += 1
                    index[w] = low[w] = clock
                    stack.append(w)
                    onstack[w] = True
                    call.append(w)
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            call.pop()
            if call:
                p = call[-1]
                if low[v] < low[p]:
                    low[p] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp, ncomp


def _feedback_directed(n: int, tails: list[int], heads: list[int]) -> tuple[str, list[int]]:
    """Core routine over dense ids; parallel arcs are allowed, self-loops are not."""
    m = len(tails)
    out = _out_lists(n, tails, heads)
    if _topo(n, tails, heads, out) is not None:
        return ALREADY_ACYCLIC, list(range(m))
    comp, ncomp = _scc(n, heads, out)
    size = [0] * ncomp
    for c in comp:
        size[c] += 1
    big = [c for c in range(ncomp) if size[c] > 1]
    if len(big) > 1:
        return DISJOINT_CYCLES, []
    target = big[0]

    # a cycle inside the strongly connected component
    start = comp.index(target)
    pos_in_walk: dict[int, int] = {}
    walk: list[int] = []
    arcs: list[int] = []
    v = start
    while v not in pos_in_walk:
        pos_in_walk[v] = len(walk)
        walk.append(v)
        a = next(i for i in out[v] if comp[heads[i]] == target)
        arcs.append(a)
        v = heads[a]
    first = pos_in_walk[v]
    cyc = walk[first:]
    cyc_arcs = arcs[first:]
    k = len(cyc)
    pos = [-1] * n
    for p, x in enumerate(cyc):
        pos[x] = p
    on_cycle_arc = set(cyc_arcs)

    # off-cycle vertices of the component must be acyclic
    off = [x for x in range(n) if comp[x] == target and pos[x] < 0]
    indeg = [0] * n
    for x in off:
        for i in out[x]:
            w = heads[i]
            if comp[w] == target and pos[w] < 0:
                indeg[w] += 1
    order = [x for x in off if indeg[x] == 0]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for i in out[x]:
            w = heads[i]
            if comp[w] == target and pos[w] < 0:
                indeg[w] -= 1
                if indeg[w] == 0:
                    order.append(w)
    if len(order) != len(off):
        return SINGLE_SOURCE, []

    big_pos = k
    lo = [big_pos] * n
    hi = [-1] * n
    for x in reversed(order):
        lx, hx = big_pos, -1
        for i in out[x]:
            w = heads[i]
            if comp[w] != target:
                continue
            if pos[w] >= 0:
                a = b = pos[w]
            else:
                a, b = lo[w], hi[w]
            if a < lx:
                lx = a
            if b > hx:
                hx = b
        lo[x], hi[x] = lx, hx
    reach_in = [-1] * n  # largest cycle position reaching an off-cycle vertex
    for x in cyc:
        for i in out[x]:
            w = heads[i]
            if comp[w] == target and pos[w] < 0 and pos[x] > reach_in[w]:
                reach_in[w] = pos[x]
    for x in order:
        r = reach_in[x]
        for i in out[x]:
            w = heads[i]
            if comp[w] == target and pos[w] < 0 and r > reach_in[w]:
                reach_in[w] = r

    m1 = [big_pos] * k
    big1 = [-1] * k
    max_in = [-1] * k
    for x in cyc:
        a = pos[x]
        for i in out[x]:
            if i in on_cycle_arc:
                continue
            w = heads[i]
            if comp[w] != target:
                continue
            if pos[w] >= 0:
                lw = hw = pos[w]
                if a > max_in[pos[w]]:
                    max_in[pos[w]] = a
            else:
                lw, hw = lo[w], hi[w]
            if lw < m1[a]:
                m1[a] = lw
            if hw > big1[a]:
                big1[a] = hw
    for x in off:
        r = reach_in[x]
        for i in out[x]:
            w = heads[i]
            if pos[w] >= 0 and r > max_in[pos[w]]:
                max_in[pos[w]] = r

    covered = [False] * k
    reach = -1
    for a in range(k):
        if big1[a] > a and big1[a] - 1 > reach:
            reach = big1[a] - 1
        if reach >= a:
            covered[a] = True
    wrap_a = next((a for a in range(k) if m1[a] <= a), k)
    wrap_b = max((b for b in range(k) if max_in[b] >= b), default=-1)
    result = []
    for j in range(k):
        if covered[j] or j >= wrap_a or j < wrap_b:
            continue
        result.append(cyc_arcs[j])
    result.sort()
    return SINGLE_SOURCE, result


def feedback_arcs_directed(g: DirectedGraph) -> FeedbackResult:
    """Arcs lying on every directed cycle; every arc when ``g`` is acyclic."""
    kind, arcs = _feedback_directed(g.n, g.tails, g.heads)
    return FeedbackResult(kind, tuple(arcs))


# bidirected core


def _orient(n: int, eu: list[int], su: list[int], ev: list[int], sv: list[int],
            inc: list[list[int]], first: int = 0) -> Optional[list[int]]:
    """Flip bits making every edge sign-opposite on the component of ``first``,
    or ``None`` when a same-sign edge closes a cycle."""
    flip = [-1] * n
    flip[first] = 0
    todo = [first]
    while todo:
        x = todo.pop()
        fx = flip[x]
        for e in inc[x]:
            if eu[e] == x:
                s, y, t = su[e], ev[e], sv[e]
            else:
                s, y, t = sv[e], eu[e], su[e]
            want = s ^ fx ^ 1 ^ t  # flip of y that makes the edge sign-opposite
            if flip[y] < 0:
                flip[y] = want
                todo.append(y)
            elif flip[y] != want:
                return None
    return flip


def _incidence(n: int, eu: list[int], ev: list[int]) -> list[list[int]]:
    inc: list[list[int]] = [[] for _ in range(n)]
    for e in range(len(eu)):
        inc[eu[e]].append(e)
        inc[ev[e]].append(e)
    return inc


def _arcs_from_flips(eu, su, ev, sv, flip) -> tuple[list[int], list[int]]:
    tails: list[int] = []
    heads: list[int] = []
    for u, s, v, t in zip(eu, su, ev, sv):
        if s ^ flip[u] == PLUS:
            tails.append(u)
            heads.append(v)
        else:
            tails.append(v)
            heads.append(u)
    return tails, heads


def _feedback_tipless(n: int, eu: list[int], su: list[int], ev: list[int], sv: list[int],
                      inc: Optional[list[list[int]]] = None) -> tuple[str, list[int]]:
    """Ear-addition routine over dense ids; the caller guarantees there are no tips."""
    m = len(eu)
    if inc is None:
        inc = _incidence(n, eu, ev)

    def step(e: int, x: int) -> tuple[int, int, int]:
        """Leaving ``x`` along ``e``: (sign at x, next vertex, sign at next)."""
        if eu[e] == x:
            return su[e], ev[e], sv[e]
        return sv[e], eu[e], su[e]

    def leave(x: int, sign: int) -> int:
        for e in inc[x]:
            if (su[e] if eu[e] == x else sv[e]) == sign:
                return e
        raise ContractViolation("vertex is a tip", witness=x)

    # initial cycloid by a greedy alternating walk
    start = next((v for v in range(n) if inc[v]), -1)
    if start < 0:
        return ALREADY_ACYCLIC, []
    seen_at: dict[int, int] = {}
    walk: list[int] = []
    walk_edges: list[int] = []
    walk_sign: list[int] = []  # sign of the leaving edge at walk[i]
    x, sign = start, PLUS
    while x not in seen_at:
        seen_at[x] = len(walk)
        e = leave(x, sign)
        walk.append(x)
        walk_edges.append(e)
        walk_sign.append(sign)
        _, y, t = step(e, x)
        x, sign = y, t ^ 1
    p = seen_at[x]
    if walk_sign[p] != sign:
        return DISJOINT_CYCLES, []  # exceptional vertex
    flip = [-1] * n
    used = [False] * m
    for i in range(p, len(walk)):
        flip[walk[i]] = walk_sign[i] ^ PLUS  # leaving sign becomes +
        used[walk_edges[i]] = True

    for x in range(n):
        if flip[x] >= 0 or not inc[x]:
            continue
        paths = []
        mark = {x: 0}
        for tag, first_sign in ((1, PLUS), (2, MINUS)):
            verts = [x]
            edges: list[int] = []
            y, sign = x, first_sign
            while True:
                e = leave(y, sign)
                _, z, t = step(e, y)
                edges.append(e)
                if flip[z] >= 0:
                    end_sign = t
                    break
                if z in mark:
                    return DISJOINT_CYCLES, []
                mark[z] = tag
                verts.append(z)
                y, sign = z, t ^ 1
            paths.append((verts, edges, z, end_sign))
        (v1, e1, a, alpha), (v2, e2, b, beta) = paths
        if a == b:
            return DISJOINT_CYCLES, []
        if alpha ^ flip[a] == beta ^ flip[b]:
            return DISJOINT_CYCLES, []
        # walk the ear from the attachment whose effective sign is +
        interior = list(reversed(v1)) + v2[1:]
        ear_edges = list(reversed(e1)) + e2
        if alpha ^ flip[a] != PLUS:
            interior.reverse()
            ear_edges.reverse()
        for y, e in zip(interior, ear_edges):
            flip[y] = (su[e] if eu[e] == y else sv[e]) ^ MINUS
        for e in ear_edges:
            used[e] = True
    for e in range(m):
        if not used[e] and su[e] ^ flip[eu[e]] == sv[e] ^ flip[ev[e]]:
            return DISJOINT_CYCLES, []
    if any(flip[v] < 0 for v in range(n) if inc[v]):
        return DISJOINT_CYCLES, []  # a second component carrying cycloids
    tails, heads = _arcs_from_flips(eu, su, ev, sv, [max(f, 0) for f in flip])
    kind, arcs = _feedback_directed(n, tails, heads)
    return kind, arcs


def feedback_edges_tipless_bidirected(g: BidirectedGraph) -> FeedbackResult:
    """Edges lying on every cycloid of a tipless bidirected graph."""
    deg = g.sign_degrees()
    for v in range(g.n):
        if not deg[PLUS][v] or not deg[MINUS][v]:
            raise ContractViolation(f"vertex {g.names[v]!r} is a tip", witness=g.names[v])
    kind, edges = _feedback_tipless(g.n, g.eu, g.su, g.ev, g.sv, g.incidence())
    return FeedbackResult(kind, tuple(edges))


def _two_tip(n: int, eu: list[int], su: list[int], ev: list[int], sv: list[int],
             inc: list[list[int]], u: int) -> Optional[list[int]]:
    """Flip bits of an acyclic orientation, or ``None`` when a cycloid exists."""
    flip = _orient(n, eu, su, ev, sv, inc, u)
    if flip is None:
        return None
    flip = [max(f, 0) for f in flip]
    tails, heads = _arcs_from_flips(eu, su, ev, sv, flip)
    if _topo(n, tails, heads, _out_lists(n, tails, heads)) is None:
        return None
    return flip


def two_tip_acyclic(g: BidirectedGraph, u: str, v: str) -> TwoTipOrientation:
    """Decide cycloid-freeness of a connected graph whose only tips are ``u`` and ``v``."""
    iu, iv = g.vid(u), g.vid(v)
    tipset = {x for x in range(g.n) if g.tip_sign(x) is not None}
    if tipset != {iu, iv}:
        extra = sorted(g.names[x] for x in tipset ^ {iu, iv})
        raise ContractViolation(f"tips other than {u!r} and {v!r}: {extra}", witness=extra)
    inc = g.incidence()
    flip = _orient(g.n, g.eu, g.su, g.ev, g.sv, inc, iu)
    if flip is not None and min(flip) < 0:
        raise ContractViolation("graph is not connected",
                                witness=g.names[flip.index(-1)])
    flip = _two_tip(g.n, g.eu, g.su, g.ev, g.sv, inc, iu)
    if flip is None:
        return TwoTipOrientation(False)
    su_eff = g.tip_sign(iu) ^ flip[iu]
    src, snk = (iu, iv) if su_eff == PLUS else (iv, iu)
    return TwoTipOrientation(True, g.names[src], g.names[snk],
                             SIGN_CHARS[g.tip_sign(src)], SIGN_CHARS[g.tip_sign(snk)])

