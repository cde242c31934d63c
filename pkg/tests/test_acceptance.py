"""Acceptance criteria 1-9.  Each test prints one PASS/FAIL line; conftest repeats them at the end.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time

import pytest

from bubblegraph.connectivity import spqr_tree
from bubblegraph.feedback import feedback_arcs_directed, feedback_edges_tipless_bidirected
from bubblegraph.graph import DirectedGraph, as_directed
from bubblegraph.oracle import (all_digraphs, all_tripartite, gen_random_bidirected,
                                gen_random_digraph, gen_tip_clique, oracle_feedback,
                                oracle_snarls, oracle_superbubbles, oracle_ultrabubbles,
                                reduce_tripartite)
from bubblegraph.snarls import expand_representation, find_snarl_representation
from bubblegraph.superbubbles import find_superbubbles
from bubblegraph.ultrabubbles import find_ultrabubbles

from helpers import (as_superbubble, bidirected_fixtures, brute_separation_pairs,
                     random_biconnected, random_small_bidirected, random_tipless)

RESULTS: list[str] = []


def report(no: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {no}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _superbubbles(d: DirectedGraph) -> set[tuple[str, str]]:
    return {(r.entry, r.exit) for r in find_superbubbles(d)}


def _grid_digraph(n: int, p: float, seed: int) -> DirectedGraph:
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(n)]
    return DirectedGraph(names, [(names[u], names[v]) for u in range(n) for v in range(n)
                                 if u != v and rng.random() < p])


def _snarl_family():
    for seed in range(2000):
        yield f"random seed {seed}", random_small_bidirected(seed, n_max=5)
    yield from bidirected_fixtures()


def test_criterion_1_superbubbles_match_oracle():
    start = time.perf_counter()
    graphs = [d for n in range(1, 5) for d in all_digraphs(n)]
    graphs += [_grid_digraph(n, p / 10, 1000 * n + 100 * p + s)
               for n in (5, 6) for p in range(1, 10) for s in range(30)]
    rng = random.Random(1)
    for seed in range(1000):
        n = rng.randint(1, 12)
        m = rng.randint(0, min(n * (n - 1), 3 * n))
        graphs.append(gen_random_digraph(n, m, seed))
    bad = [d for d in graphs if _superbubbles(d) != oracle_superbubbles(d)]
    took = time.perf_counter() - start
    report(1, not bad and took < 300,
           f"{len(graphs)} digraphs, {len(bad)} mismatches, {took:.1f}s (limit 300s)")


def test_criterion_2_snarls_match_oracle():
    start = time.perf_counter()
    bad, count = [], 0
    for name, g in _snarl_family():
        count += 1
        if set(expand_representation(find_snarl_representation(g))) != oracle_snarls(g):
            bad.append(name)
    took = time.perf_counter() - start
    report(2, not bad and took < 600,
           f"{count} graphs, {len(bad)} mismatches {bad[:3]}, {took:.1f}s (limit 600s)")


def test_criterion_3_ultrabubbles_match_oracle():
    bad, outside, count = [], [], 0
    for name, g in _snarl_family():
        count += 1
        got = {r.pair for r in find_ultrabubbles(g)}
        if got != oracle_ultrabubbles(g):
            bad.append(name)
        if not got <= set(expand_representation(find_snarl_representation(g))):
            outside.append(name)
    report(3, not bad and not outside,
           f"{count} graphs, {len(bad)} mismatches, {len(outside)} with ultrabubbles outside the snarls")


def test_criterion_4_tip_clique_representation():
    lines = []
    ok = True
    for m in (10, 100, 1000):
        rep = find_snarl_representation(gen_tip_clique(m))
        expanded = sum(1 for _ in expand_representation(rep))
        tips = sum(len(t) for t in rep.tip_sets)
        ok &= expanded == m * (m - 1) // 2 and tips == m and len(rep.pairs) == 0
        lines.append(f"m={m}: expanded={expanded} sum|T|={tips} |S|={len(rep.pairs)}")
    report(4, ok, "; ".join(lines))


def test_criterion_5_feedback_match_oracle():
    rng = random.Random(5)
    bad_d = 0
    for seed in range(500):
        n = rng.randint(2, 50)
        m = rng.randint(1, min(n * (n - 1), 2 * n))
        d = gen_random_digraph(n, m, seed)
        if set(feedback_arcs_directed(d).edges) != oracle_feedback(d):
            bad_d += 1
    bad_b = 0
    for seed in range(500):
        g = random_tipless(seed, n_max=10)
        if set(feedback_edges_tipless_bidirected(g).edges) != oracle_feedback(g):
            bad_b += 1
    report(5, bad_d == 0 and bad_b == 0,
           f"500 directed (n<=50): {bad_d} mismatches; 500 tipless bidirected (n<=10): {bad_b} mismatches")


def test_criterion_6_tripartite_reduction():
    count, bad = 0, 0
    for g3 in all_tripartite(2):
        count += 1
        if (not oracle_feedback(reduce_tripartite(g3))) != g3.has_triangle():
            bad += 1
    report(6, bad == 0, f"{count} tripartite graphs, {bad} violations")


def test_criterion_7_spqr_separation_pairs():
    bad = 0
    for seed in range(500):
        v = random_biconnected(seed, n_max=9)
        if spqr_tree(v).separation_pairs() != brute_separation_pairs(v):
            bad += 1
    report(7, bad == 0, f"500 2-connected graphs (n<=9), {bad} mismatches")


SCALING_SIZES = (250_000, 500_000, 1_000_000)

# One fresh interpreter per run, so that no run inherits the heap of another.
_SCALING_RUN = """
import sys, time
from bubblegraph.oracle import gen_random_bidirected, gen_random_digraph
from bubblegraph.snarls import find_snarl_representation
from bubblegraph.superbubbles import find_superbubbles
from bubblegraph.ultrabubbles import find_ultrabubbles
name, m = sys.argv[1], int(sys.argv[2])
if name == "superbubbles":
    g, fn = gen_random_digraph(m // 2, m, seed=8), find_superbubbles
else:
    g = gen_random_bidirected(m // 2, m, seed=8)
    fn = find_ultrabubbles if name == "ultrabubbles" else find_snarl_representation
start = time.perf_counter()
fn(g)
print(time.perf_counter() - start)
"""


def _timed(name: str, m: int) -> float:
    out = subprocess.run([sys.executable, "-c", _SCALING_RUN, name, str(m)],
                         check=True, capture_output=True, text=True)
    return float(out.stdout)


def test_criterion_8_linear_scaling():
    ok = True
    parts = []
    for name in ("superbubbles", "ultrabubbles", "snarls"):
        ts = [_timed(name, m) for m in SCALING_SIZES]
        ratios = [b / a for a, b in zip(ts, ts[1:])]
        ok &= max(ts) <= 60 and max(ratios) <= 3
        parts.append(f"{name} " + "/".join(f"{t:.1f}s" for t in ts)
                     + " ratios " + "/".join(f"{r:.2f}" for r in ratios))
    report(8, ok, "; ".join(parts) + " (limits 60s, 3x per doubling)")


def test_criterion_9_back_edge_consistency():
    rng = random.Random(9)
    bad = 0
    for seed in range(500):
        n = rng.randint(1, 10)
        m = rng.randint(0, min(n * (n - 1), 3 * n))
        g = gen_random_digraph(n, m, seed).to_bidirected()
        d = as_directed(g)
        ultra = {as_superbubble(r.pair) for r in find_ultrabubbles(g, back_edge=True)}
        if ultra != _superbubbles(d) or ultra != oracle_superbubbles(d):
            bad += 1
    report(9, bad == 0, f"500 digraphic graphs (n<=10), {bad} mismatches")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
