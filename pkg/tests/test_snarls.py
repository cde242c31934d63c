import random

import pytest

from bubblegraph.connectivity import blocks_of_graph
from bubblegraph.graph import BidirectedGraph, VertexSide, side_pair
from bubblegraph.oracle import (gen_nested, gen_random_bidirected, gen_tip_clique,
                                oracle_snarls, oracle_ultrabubbles)
from bubblegraph.snarls import (expand_representation, find_snarl_representation,
                                has_dangling, sign_cut_graphs)
from bubblegraph.ultrabubbles import find_ultrabubbles

from helpers import bidirected_fixtures, fixture


def expanded(g):
    return set(expand_representation(find_snarl_representation(g)))


def sp(a, b):
    return side_pair(VertexSide(a[:-1], a[-1]), VertexSide(b[:-1], b[-1]))


def test_tip_clique_of_four():
    rep = find_snarl_representation(gen_tip_clique(4))
    assert len(rep.tip_sets) == 1 and len(rep.tip_sets[0]) == 4 and not rep.pairs
    assert len(expanded(gen_tip_clique(4))) == 6


def test_representation_is_small_for_large_clique():
    rep = find_snarl_representation(gen_tip_clique(300))
    assert rep.size == 300
    assert sum(1 for _ in expand_representation(rep)) == 300 * 299 // 2


def test_bubble_gives_one_tip_set_and_inner_pairs():
    g = fixture("diamond.arcs").to_bidirected()
    rep = find_snarl_representation(g)
    assert rep.tip_sets == ((VertexSide("s", "+"), VertexSide("t", "-")),)
    assert expanded(g) == oracle_snarls(g)


def test_consistent_cutvertex_is_split():
    g = fixture("consistent_cut.bidir")
    dec = sign_cut_graphs(g)
    assert len(dec.homes["c"]) == 2
    assert len(dec.graphs) == 2
    assert sum(h.m for h in dec.graphs) == g.m


def test_mixed_cutvertex_is_not_split():
    g = fixture("dangling.bidir")
    dec = sign_cut_graphs(g)
    assert len(dec.graphs) == 1 and dec.homes["v"] == (0,)


def test_dangling_block_detection():
    g = fixture("dangling.bidir")
    bct = blocks_of_graph(g)
    v = g.vid("v")
    triangle = next(b for b in bct.blocks_of[v] if g.vid("s") in bct.block_vertices[b])
    loop = next(b for b in bct.blocks_of[v] if b != triangle)
    assert has_dangling(g, loop, "v")  # the triangle carries both signs at v
    assert not has_dangling(g, triangle, "v")  # the loop only uses v+


@pytest.mark.parametrize("name,g", bidirected_fixtures(), ids=lambda x: x if isinstance(x, str) else "")
def test_fixtures(name, g):
    assert expanded(g) == oracle_snarls(g)
    assert {r.pair for r in find_ultrabubbles(g)} == oracle_ultrabubbles(g)


def test_nested_family():
    for seed in range(300):
        g = gen_nested(11, seed)
        got = expanded(g)
        assert got == oracle_snarls(g)
        assert {r.pair for r in find_ultrabubbles(g)} <= got


@pytest.mark.parametrize("seed", range(300))
def test_random_bidirected(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    g = gen_random_bidirected(n, rng.randint(0, min(2 * n * (n - 1), 3 * n)), seed)
    assert expanded(g) == oracle_snarls(g)


def test_isolated_vertices_and_empty_graph():
    assert expanded(BidirectedGraph(["a", "b"])) == set()
    rep = find_snarl_representation(BidirectedGraph())
    assert rep.tip_sets == () and rep.pairs == ()


def test_output_is_sorted_and_stable():
    g = gen_nested(30, 7)
    a, b = find_snarl_representation(g), find_snarl_representation(g, threads=4)
    assert a == b and list(a.pairs) == sorted(a.pairs)
