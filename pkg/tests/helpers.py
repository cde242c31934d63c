"""Shared generators and brute-force checks for the test suite."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from bubblegraph.graph import (SIGN_CHARS, BidirectedGraph, UndirectedView, VertexSide,
                               side_pair)
from bubblegraph.io import read_graph

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name: str):
    return read_graph(str(FIXTURES / name))


def bidirected_fixtures() -> list[tuple[str, BidirectedGraph]]:
    out = []
    for p in sorted(FIXTURES.iterdir()):
        if p.suffix in (".bidir", ".gfa"):
            out.append((p.name, read_graph(str(p))))
    return out


def random_small_bidirected(seed: int, n_max: int = 5) -> BidirectedGraph:
    """n in 1..n_max with any admissible edge count and sign pattern."""
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    names = [f"v{i}" for i in range(n)]
    slots = [(u, s, v, t) for u, v in itertools.combinations(range(n), 2)
             for s in (0, 1) for t in (0, 1)]
    k = rng.randint(0, min(len(slots), 3 * n))
    chosen = rng.sample(slots, k)
    return BidirectedGraph(names, [(names[u], SIGN_CHARS[s], names[v], SIGN_CHARS[t])
                                   for u, s, v, t in chosen])


def random_tipless(seed: int, n_max: int = 10) -> BidirectedGraph:
    """Random graph topped up until every vertex carries both signs."""
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    edges: set[tuple[int, int, int, int]] = set()

    def add(u: int, s: int, v: int, t: int) -> None:
        edges.add((u, s, v, t) if u < v else (v, t, u, s))

    for _ in range(rng.randint(n // 2, n + 2)):
        u, v = rng.sample(range(n), 2)
        add(u, rng.randrange(2), v, rng.randrange(2))
    while True:
        have = [[False, False] for _ in range(n)]
        for u, s, v, t in edges:
            have[u][s] = have[v][t] = True
        missing = [(v, s) for v in range(n) for s in (0, 1) if not have[v][s]]
        if not missing:
            break
        v, s = missing[0]
        w = rng.choice([x for x in range(n) if x != v])
        add(v, s, w, rng.randrange(2))
    names = [f"v{i}" for i in range(n)]
    return BidirectedGraph(names, [(names[u], SIGN_CHARS[s], names[v], SIGN_CHARS[t])
                                   for u, s, v, t in sorted(edges)])


def random_biconnected(seed: int, n_max: int = 9) -> UndirectedView:
    """A cycle grown by random ears and chords; always 2-connected and simple."""
    rng = random.Random(seed)
    n = rng.randint(3, n_max)
    k = rng.randint(3, n)
    edges = {(i, (i + 1) % k) if i < (i + 1) % k else ((i + 1) % k, i) for i in range(k)}
    nxt = k
    while nxt < n:
        u, v = rng.sample(range(nxt), 2)
        length = rng.randint(1, n - nxt)
        path = [u] + list(range(nxt, nxt + length)) + [v]
        nxt += length
        for a, b in zip(path, path[1:]):
            edges.add((min(a, b), max(a, b)))
    for _ in range(rng.randint(0, n)):
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    es = sorted(edges)
    rng.shuffle(es)
    return UndirectedView(tuple(str(i) for i in range(n)), [a for a, _ in es], [b for _, b in es])


def _connected_without(v: UndirectedView, drop: set[int]) -> bool:
    keep = [x for x in range(v.n) if x not in drop]
    if not keep:
        return True
    adj: dict[int, list[int]] = {x: [] for x in keep}
    for a, b in zip(v.eu, v.ev):
        if a not in drop and b not in drop:
            adj[a].append(b)
            adj[b].append(a)
    seen = {keep[0]}
    todo = [keep[0]]
    while todo:
        x = todo.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == len(keep)


def brute_separation_pairs(v: UndirectedView) -> set[frozenset[str]]:
    return {frozenset((v.names[a], v.names[b])) for a, b in itertools.combinations(range(v.n), 2)
            if not _connected_without(v, {a, b})}


def ends(g, fs) -> set:
    """Engine tuples ``(u, a, v, b, provenance)`` as canonical side pairs."""
    nm = g.names
    return {side_pair(VertexSide(nm[u], SIGN_CHARS[a]), VertexSide(nm[v], SIGN_CHARS[b]))
            for u, a, v, b, *_ in fs}


def as_superbubble(pair) -> tuple[str, str]:
    """``{s+, t-}`` read as the superbubble ``(s, t)``."""
    a, b = pair
    return (a.vertex, b.vertex) if a.sign == "+" else (b.vertex, a.vertex)
