import random

import pytest

from bubblegraph.graph import DirectedGraph, as_directed
from bubblegraph.oracle import gen_nested, gen_random_dag, gen_random_digraph, oracle_superbubbles
from bubblegraph.superbubbles import PNODE, RNODE, TRIVIAL, WHOLE, find_superbubbles

from helpers import fixture


def found(d):
    return {(r.entry, r.exit) for r in find_superbubbles(d)}


def test_diamond_fixture_is_one_whole_block_record():
    reports = find_superbubbles(fixture("diamond.arcs"))
    assert [(r.entry, r.exit, r.provenance) for r in reports] == [("s", "t", WHOLE)]


def test_single_arc_is_trivial():
    reports = find_superbubbles(DirectedGraph([], [("a", "b")]))
    assert [(r.entry, r.exit, r.provenance) for r in reports] == [("a", "b", TRIVIAL)]


def test_chain_of_bubbles_uses_p_node_grouping():
    arcs = [("s", "a"), ("s", "b"), ("a", "m"), ("b", "m"),
            ("m", "c"), ("m", "d"), ("c", "t"), ("d", "t"), ("t", "s")]
    reports = find_superbubbles(DirectedGraph([], arcs))
    assert [(r.entry, r.exit, r.provenance) for r in reports] == [
        ("t", "s", TRIVIAL), ("m", "t", PNODE), ("s", "m", PNODE)]


def test_every_arc_of_a_cycle_is_trivial():
    assert found(DirectedGraph([], [("a", "b"), ("b", "c"), ("c", "a")])) == {
        ("a", "b"), ("b", "c"), ("c", "a")}


def test_two_cycles_through_a_vertex():
    d = DirectedGraph([], [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")])
    assert found(d) == oracle_superbubbles(d)


def test_empty_graph():
    assert find_superbubbles(DirectedGraph(["a", "b"])) == []


def test_nested_bubbles_detected_in_rigid_components():
    provs = set()
    for seed in range(200):
        d = as_directed(gen_nested(12, seed, directed=True))
        reports = find_superbubbles(d)
        provs |= {r.provenance for r in reports}
        assert {(r.entry, r.exit) for r in reports} == oracle_superbubbles(d)
    assert provs == {TRIVIAL, PNODE, RNODE}


@pytest.mark.parametrize("seed", range(200))
def test_random_digraphs(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 12)
    d = gen_random_digraph(n, rng.randint(n - 1, min(n * (n - 1), 2 * n)), seed)
    assert found(d) == oracle_superbubbles(d)


@pytest.mark.parametrize("seed", range(100))
def test_random_dags(seed):
    d = as_directed(gen_random_dag(10, 14, seed))
    assert found(d) == oracle_superbubbles(d)


def test_threads_do_not_change_output():
    d = as_directed(gen_nested(40, 1, directed=True))
    assert find_superbubbles(d) == find_superbubbles(d, threads=4)
