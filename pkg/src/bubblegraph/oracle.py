"""Brute-force checkers that follow the definitions literally, plus instance generators.

Everything here is exponential or quadratic on purpose and is meant for graphs
with a handful of vertices.  The fast finders are tested against these.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import InputError, UsageError
from .graph import (MINUS, PLUS, SIGN_CHARS, BidirectedGraph, Cycloid, DirectedGraph, SidePair,
                    VertexSide, side_pair, split)

CYCLOID_GUARD = 14


# directed reachability helpers


def _succ(g: DirectedGraph) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in zip(g.tails, g.heads):
        out[u].append(v)
    return out


def _reach(out: list[list[int]], sources: Iterable[int], banned: int = -1) -> set[int]:
    seen = {s for s in sources if s != banned}
    todo = list(seen)
    while todo:
        x = todo.pop()
        for y in out[x]:
            if y != banned and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def _superbubbloid_set(g: DirectedGraph, out, rev, s: int, t: int) -> Optional[set[int]]:
    if s == t:
        return None
    x = _reach(out, [s], banned=t)
    x.add(t)
    if t not in _reach(out, [s]):
        return None  # condition 1 for t
    if not x <= _reach(rev, [t]):
        return None  # condition 2
    outside = [w for w in range(g.n) if w not in x]
    if _reach(out, outside, banned=s) & (x - {s}):
        return None  # condition 3
    if _reach(out, x - {t}, banned=t) - x:
        return None  # condition 4
    for u, v in zip(g.tails, g.heads):
        if u in x and v in x:
            if t not in (u, v) and u in _reach(out, [v], banned=t):
                return None  # condition 5, path avoiding t
            if s not in (u, v) and u in _reach(out, [v], banned=s):
                return None  # condition 5, path avoiding s
        if u == t and v == s:
            return None  # condition 6
    return x


def oracle_is_superbubbloid(g: DirectedGraph, s: str, t: str) -> Optional[frozenset[str]]:
    """Vertex set of the superbubbloid graph, or ``None`` when ``(s, t)`` is not one."""
    out = _succ(g)
    rev: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in zip(g.tails, g.heads):
        rev[v].append(u)
    x = _superbubbloid_set(g, out, rev, g.index[s], g.index[t])
    return None if x is None else frozenset(g.names[i] for i in x)


def oracle_is_superbubble(g: DirectedGraph, s: str, t: str) -> bool:
    x = oracle_is_superbubbloid(g, s, t)
    if x is None:
        return False
    return not any(oracle_is_superbubbloid(g, w, t) is not None for w in x if w != s)


def oracle_superbubbles(g: DirectedGraph) -> set[tuple[str, str]]:
    out = _succ(g)
    rev: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in zip(g.tails, g.heads):
        rev[v].append(u)
    found: dict[tuple[int, int], set[int]] = {}
    for s in range(g.n):
        for t in range(g.n):
            x = _superbubbloid_set(g, out, rev, s, t)
            if x is not None:
                found[(s, t)] = x
    res = set()
    for (s, t), x in found.items():
        if not any((w, t) in found for w in x if w != s):
            res.add((g.names[s], g.names[t]))
    return res


# bidirected definitions


def _components(g: BidirectedGraph) -> list[int]:
    parent = list(range(g.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in zip(g.eu, g.ev):
        parent[find(u)] = find(v)
    return [find(a) for a in range(g.n)]


def _separable(g: BidirectedGraph, a: VertexSide, b: VertexSide) -> Optional[BidirectedGraph]:
    if a.vertex == b.vertex:
        raise InputError("separability needs two distinct vertices")
    h, a2 = split(g, a)
    h, b2 = split(h, b)
    comp = _components(h)
    ca = comp[h.index[a.vertex]]
    if comp[h.index[b.vertex]] != ca or comp[h.index[a2]] == ca or comp[h.index[b2]] == ca:
        return None
    keep = [i for i in range(h.n) if comp[i] == ca]
    kept = set(keep)
    edges = [h.edge(e) for e in range(h.m) if h.eu[e] in kept]
    return BidirectedGraph([h.names[i] for i in keep], edges)


def oracle_is_separable(g: BidirectedGraph, a: VertexSide, b: VertexSide) -> Optional[BidirectedGraph]:
    """The component ``X`` left by splitting both sides, or ``None``."""
    return _separable(g, a, b)


def _minimal(g: BidirectedGraph, a: VertexSide, b: VertexSide, x: BidirectedGraph) -> bool:
    for z in x.names:
        if z in (a.vertex, b.vertex):
            continue
        for sgn in "+-":
            w = VertexSide(z, sgn)
            if _separable(g, a, w) is not None and _separable(g, w.opposite(), b) is not None:
                return False
    return True


def oracle_is_snarl(g: BidirectedGraph, a: VertexSide, b: VertexSide) -> bool:
    x = _separable(g, a, b)
    return x is not None and _minimal(g, a, b, x)


def oracle_is_ultrabubble(g: BidirectedGraph, a: VertexSide, b: VertexSide,
                          back_edge: bool = False) -> bool:
    """Ultrabubble check; ``back_edge`` adds the directed condition that
    ``{a^, b^}`` is not an edge of ``g``."""
    x = _separable(g, a, b)
    if x is None:
        return False
    for v in range(x.n):
        if x.names[v] not in (a.vertex, b.vertex) and x.tip_sign(v) is not None:
            return False
    if oracle_has_cycloid(x) is not None:
        return False
    if back_edge:
        ao, bo = a.opposite(), b.opposite()
        if g.has_edge(g.index[ao.vertex], "+-".index(ao.sign), g.index[bo.vertex], "+-".index(bo.sign)):
            return False
    return _minimal(g, a, b, x)


def _all_side_pairs(g: BidirectedGraph) -> Iterable[tuple[VertexSide, VertexSide]]:
    for u, v in itertools.combinations(g.names, 2):
        for s in "+-":
            for t in "+-":
                yield VertexSide(u, s), VertexSide(v, t)


def oracle_snarls(g: BidirectedGraph) -> set[SidePair]:
    return {side_pair(a, b) for a, b in _all_side_pairs(g) if oracle_is_snarl(g, a, b)}


def oracle_ultrabubbles(g: BidirectedGraph, back_edge: bool = False) -> set[SidePair]:
    return {side_pair(a, b) for a, b in _all_side_pairs(g)
            if oracle_is_ultrabubble(g, a, b, back_edge)}


def oracle_has_cycloid(g: BidirectedGraph) -> Optional[Cycloid]:
    """Some cycloid of ``g`` or ``None``, by exhaustive simple-path search."""
    if g.n > CYCLOID_GUARD:
        raise UsageError(f"cycloid oracle limited to {CYCLOID_GUARD} vertices, got {g.n}")
    inc = g.incidence()
    for s in range(g.n):
        for first in (PLUS, MINUS):
            # frames: (vertex, sign needed to leave, exceptions used, edges, vertices)
            stack = [(s, first, 0, (), (s,))]
            while stack:
                x, need, exc, edges, verts = stack.pop()
                for e in inc[x]:
                    if e in edges:
                        continue
                    if g.eu[e] == x:
                        sx, y, sy = g.su[e], g.ev[e], g.sv[e]
                    else:
                        sx, y, sy = g.sv[e], g.eu[e], g.su[e]
                    ex = exc
                    if sx != need:
                        if x == s and not edges:
                            continue
                        ex += 1
                    if ex > 1:
                        continue
                    if y == s:
                        if not edges:
                            continue
                        closing = ex + (1 if sy == first else 0)
                        if closing <= 1:
                            path = edges + (e,)
                            exceptional = _exceptional(g, path, verts + (s,))
                            return Cycloid(path, tuple(g.names[v] for v in verts + (s,)),
                                           exceptional)
                        continue
                    if y < s or y in verts:
                        continue
                    stack.append((y, sy ^ 1, ex, edges + (e,), verts + (y,)))
    return None


def _exceptional(g: BidirectedGraph, edges: tuple[int, ...], verts: tuple[int, ...]) -> Optional[str]:
    k = len(edges)
    for i in range(k):
        v = verts[i]
        e_in, e_out = edges[i - 1], edges[i]
        if g.side_at(e_in, v) == g.side_at(e_out, v):
            return g.names[v]
    return None


def _directed_acyclic(n: int, tails: list[int], heads: list[int]) -> bool:
    indeg = [0] * n
    out: list[list[int]] = [[] for _ in range(n)]
    for u, v in zip(tails, heads):
        indeg[v] += 1
        out[u].append(v)
    todo = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while todo:
        v = todo.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                todo.append(w)
    return seen == n


def oracle_feedback(g: Union[DirectedGraph, BidirectedGraph]) -> frozenset[int]:
    """Edge ids whose removal leaves no cycle (directed) or no cycloid (bidirected)."""
    if isinstance(g, DirectedGraph):
        out = set()
        for i in range(g.m):
            t = g.tails[:i] + g.tails[i + 1:]
            h = g.heads[:i] + g.heads[i + 1:]
            if _directed_acyclic(g.n, t, h):
                out.add(i)
        return frozenset(out)
    return frozenset(i for i in range(g.m) if oracle_has_cycloid(g.remove_edges([i])) is None)


# hardness construction


@dataclass(frozen=True)
class TripartiteGraph:
    a: frozenset[str]
    b: frozenset[str]
    c: frozenset[str]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        if self.a & self.b or self.a & self.c or self.b & self.c:
            raise InputError("tripartite sets must be disjoint")
        for u, v in self.edges:
            pu, pv = self.part(u), self.part(v)
            if pu == pv:
                raise InputError(f"edge {u}-{v} lies inside one part")

    def part(self, v: str) -> int:
        for i, s in enumerate((self.a, self.b, self.c)):
            if v in s:
                return i
        raise InputError(f"vertex {v!r} is in no part")

    def has_triangle(self) -> bool:
        adj = {v: set() for v in self.a | self.b | self.c}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return any(adj[x] & adj[y] & self.c for x in self.a for y in adj[x] & self.b)


def reduce_tripartite(g3: TripartiteGraph) -> BidirectedGraph:
    """Bidirected graph with a feedback edge exactly when ``g3`` has no triangle."""
    signs = {(0, 1): ("-", "+"), (0, 2): ("+", "-"), (1, 2): ("-", "-")}
    edges = []
    for u, v in g3.edges:
        pu, pv = g3.part(u), g3.part(v)
        if pu > pv:
            u, v, pu, pv = v, u, pv, pu
        su, sv = signs[(pu, pv)]
        edges.append((u, su, v, sv))
    aux = ["x", "y", "z"]
    while set(aux) & (g3.a | g3.b | g3.c):
        aux = [name + "_" for name in aux]
    x, y, z = aux
    edges += [(x, "+", y, "-"), (y, "+", z, "-"), (z, "+", x, "-")]
    verts = sorted(g3.a) + sorted(g3.b) + sorted(g3.c) + aux
    return BidirectedGraph(verts, edges)


def all_tripartite(max_part: int = 2) -> Iterable[TripartiteGraph]:
    """Every tripartite graph with parts of sizes ``1..max_part``, edges across parts."""
    for sizes in itertools.product(range(1, max_part + 1), repeat=3):
        a = frozenset(f"a{i}" for i in range(sizes[0]))
        b = frozenset(f"b{i}" for i in range(sizes[1]))
        c = frozenset(f"c{i}" for i in range(sizes[2]))
        slots = [(u, v) for p, q in ((a, b), (a, c), (b, c)) for u in sorted(p) for v in sorted(q)]
        for mask in range(1 << len(slots)):
            yield TripartiteGraph(a, b, c, tuple(s for i, s in enumerate(slots) if mask >> i & 1))


# generators


def _names(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def gen_random_bidirected(n: int, m: int, seed: int) -> BidirectedGraph:
    """``m`` distinct random signed edges on ``n`` vertices."""
    cap = 2 * n * (n - 1)
    if n < 0 or m < 0 or m > cap:
        raise InputError(f"cannot place {m} edges on {n} vertices")
    rng = random.Random(seed)
    chosen: set[tuple[int, int, int, int]] = set()
    if m > cap // 2:
        pool = [(u, s, v, t) for u in range(n) for v in range(u + 1, n) for s in (0, 1) for t in (0, 1)]
        chosen = set(rng.sample(pool, m))
    while len(chosen) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        if u > v:
            u, v = v, u
        chosen.add((u, rng.randrange(2), v, rng.randrange(2)))
    names = _names(n)
    return BidirectedGraph(names, [(names[u], SIGN_CHARS[s], names[v], SIGN_CHARS[t])
                                   for u, s, v, t in sorted(chosen)])


def gen_random_digraph(n: int, m: int, seed: int) -> DirectedGraph:
    """``m`` distinct random arcs on ``n`` vertices, cycles allowed."""
    if n < 0 or m < 0 or m > n * (n - 1):
        raise InputError(f"cannot place {m} arcs on {n} vertices")
    rng = random.Random(seed)
    chosen: set[tuple[int, int]] = set()
    if m > n * (n - 1) // 2:
        pool = [(u, v) for u in range(n) for v in range(n) if u != v]
        chosen = set(rng.sample(pool, m))
    while len(chosen) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            chosen.add((u, v))
    names = _names(n)
    return DirectedGraph(names, [(names[u], names[v]) for u, v in sorted(chosen)])


def gen_random_dag(n: int, m: int, seed: int) -> BidirectedGraph:
    """Random acyclic digraph (as a bidirected graph) under a hidden topological order."""
    if n < 0 or m < 0 or m > n * (n - 1) // 2:
        raise InputError(f"cannot place {m} acyclic arcs on {n} vertices")
    rng = random.Random(seed)
    rank = list(range(n))
    rng.shuffle(rank)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            chosen.add((u, v) if rank[u] < rank[v] else (v, u))
    names = _names(n)
    return DirectedGraph(names, [(names[u], names[v]) for u, v in sorted(chosen)]).to_bidirected()


def gen_tip_clique(m: int) -> BidirectedGraph:
    """``m`` vertices pairwise joined by all-minus edges; every vertex is a tip."""
    if m < 0:
        raise InputError("clique size must be non-negative")
    names = _names(m)
    return BidirectedGraph(names, [(names[i], "-", names[j], "-")
                                   for i in range(m) for j in range(i + 1, m)])


def gen_two_tip_connected(n: int, seed: int) -> BidirectedGraph:
    """Connected graph whose only tips are its first and last vertex.

    A random DAG over a Hamiltonian path, some vertices flipped, and a few
    random extra edges between inner vertices that may create cycloids.
    """
    if n < 2:
        raise InputError("two tips need at least two vertices")
    rng = random.Random(seed)
    arcs = {(i, i + 1) for i in range(n - 1)}
    for _ in range(rng.randrange(n + 1)):
        i, j = sorted(rng.sample(range(n), 2))
        arcs.add((i, j))
    flips = [rng.randrange(2) for _ in range(n)]
    edges = {(u, PLUS ^ flips[u], v, MINUS ^ flips[v]) for u, v in arcs}
    if n > 3:
        for _ in range(rng.randrange(3)):
            u, v = sorted(rng.sample(range(1, n - 1), 2))
            edges.add((u, rng.randrange(2), v, rng.randrange(2)))
    names = _names(n)
    return BidirectedGraph(names, [(names[u], SIGN_CHARS[s], names[v], SIGN_CHARS[t])
                                   for u, s, v, t in sorted(edges)])


_GADGETS = (
    ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3)),          # K4 minus the source-sink edge
    ((0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 3)),  # K4
    ((0, 1), (0, 2), (1, 3), (2, 3)),                  # diamond
    ((0, 1), (1, 2), (2, 3)),                          # chain
)


def gen_nested(n_max: int, seed: int, directed: bool = False) -> BidirectedGraph:
    """Random host graph whose edges are repeatedly replaced by small gadgets.

    A gadget is an acyclic four-vertex graph glued in by its source and sink,
    so nested bubbles appear in R-, P- and S-node positions.  Unless
    ``directed`` is set, inner vertices are flipped at random and an occasional
    extra edge may close a cycloid.
    """
    rng = random.Random(seed)
    n = rng.randint(3, 4)
    edges: set[tuple[int, int, int, int]] = set()
    for u in range(n):
        v = (u + 1) % n
        edges.add((u, PLUS, v, MINUS))
    for _ in range(rng.randrange(3)):
        u, v = rng.sample(range(n), 2)
        edges.add((u, PLUS, v, MINUS) if directed else (u, rng.randrange(2), v, rng.randrange(2)))
    while n + 2 <= n_max:
        u, s, v, t = rng.choice(sorted(edges))
        edges.discard((u, s, v, t))
        ids = [u, n, n + 1, v]
        n += 2
        flips = [0, 0, 0, 0] if directed else [0, rng.randrange(2), rng.randrange(2), 0]
        for a, b in rng.choice(_GADGETS):
            sa = s if a == 0 else PLUS ^ flips[a]
            sb = t if b == 3 else MINUS ^ flips[b]
            edges.add((ids[a], sa, ids[b], sb))
        if not directed and rng.random() < 0.2:
            a, b = rng.sample(ids[1:3] + [rng.randrange(n)], 2)
            if a != b:
                edges.add((a, rng.randrange(2), b, rng.randrange(2)))
    names = _names(n)
    canon = {(u, s, v, t) if (u, s) < (v, t) else (v, t, u, s) for u, s, v, t in edges}
    return BidirectedGraph(names, [(names[u], SIGN_CHARS[s], names[v], SIGN_CHARS[t])
                                   for u, s, v, t in sorted(canon)])


def all_digraphs(n: int) -> Iterable[DirectedGraph]:
    """Every digraph on ``n`` labelled vertices (no loops)."""
    names = _names(n)
    slots = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(slots)):
        yield DirectedGraph(names, [(names[u], names[v]) for i, (u, v) in enumerate(slots)
                                    if mask >> i & 1])
