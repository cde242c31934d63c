import itertools
import random

import pytest

from bubblegraph.connectivity import (ExpansionRef, bidirected_skeleton, block_cut_tree,
                                      check_tree, directed_skeleton, expansion_edges,
                                      expansion_vertices, spqr_tree)
from bubblegraph.errors import ContractViolation, InputError
from bubblegraph.graph import UndirectedView
from bubblegraph.oracle import oracle_has_cycloid

from helpers import _connected_without, brute_separation_pairs, random_biconnected


def view(n, edges):
    return UndirectedView(tuple(str(i) for i in range(n)), [a for a, _ in edges], [b for _, b in edges])


def test_path_has_two_bridges():
    b = block_cut_tree(view(3, [(0, 1), (1, 2)]))
    assert len(b.blocks) == 2 and b.cut_vertices == (1,)


def test_cycle_is_one_block():
    b = block_cut_tree(view(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert len(b.blocks) == 1 and not b.cut_vertices


def test_multi_bridge_block():
    b = block_cut_tree(view(3, [(0, 1), (0, 1), (1, 2)]))
    assert sorted(len(x) for x in b.blocks) == [1, 2]
    assert all(b.is_multi_bridge(i) for i in range(2))


def _brute_cutvertices(v):
    base = _components(v, set())
    return {x for x in range(v.n) if _components(v, {x}) > base - (1 if _isolated(v, x) else 0)}


def _isolated(v, x):
    return all(x not in (a, b) for a, b in zip(v.eu, v.ev))


def _components(v, drop):
    parent = {x: x for x in range(v.n) if x not in drop}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    for a, b in zip(v.eu, v.ev):
        if a not in drop and b not in drop:
            parent[find(a)] = find(b)
    return len({find(x) for x in parent})


@pytest.mark.parametrize("seed", range(200))
def test_block_cut_tree_matches_vertex_removal(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    edges = [tuple(rng.sample(range(n), 2)) for _ in range(rng.randint(0, 12))] if n > 1 else []
    v = view(n, edges)
    b = block_cut_tree(v)
    assert set(b.cut_vertices) == _brute_cutvertices(v)
    assert sorted(e for bl in b.blocks for e in bl) == list(range(len(edges)))
    for bl, vs in zip(b.blocks, b.block_vertices):
        if len(vs) > 2:
            sub = view(n, [edges[e] for e in bl])
            for x in vs:
                assert _connected_without(_restrict(sub, vs), {x})


def _restrict(v, vs):
    keep = sorted(vs)
    idx = {x: i for i, x in enumerate(keep)}
    return UndirectedView(tuple(str(x) for x in keep), [idx[a] for a in v.eu], [idx[b] for b in v.ev])


def test_k4_is_one_r_node():
    t = spqr_tree(view(4, list(itertools.combinations(range(4), 2))))
    assert [nd.kind for nd in t.nodes] == ["R"]


def test_three_paths_give_p_node_with_s_children():
    t = spqr_tree(view(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]))
    kinds = sorted(nd.kind for nd in t.nodes)
    assert kinds == ["P", "S", "S", "S"]
    check_tree(t)


def test_cycle_is_one_s_node():
    t = spqr_tree(view(5, [(i, (i + 1) % 5) for i in range(5)]))
    assert [nd.kind for nd in t.nodes] == ["S"]
    assert sorted(t.cycle(0)) == list(range(5))


def test_non_biconnected_rejected():
    with pytest.raises(ContractViolation):
        spqr_tree(view(3, [(0, 1), (1, 2)]))


@pytest.mark.parametrize("seed", range(150))
def test_spqr_invariants_and_expansions(seed):
    v = random_biconnected(seed)
    t = spqr_tree(v)
    check_tree(t)
    assert t.separation_pairs() == brute_separation_pairs(v)
    assert sum(len(nd.eu) for nd in t.nodes) <= 3 * v.m + 6
    for k, nd in enumerate(t.nodes):
        if nd.parent >= 0 and nd.kind != "R":
            assert t.nodes[nd.parent].kind != nd.kind
        for i, r in enumerate(nd.real):
            if r >= 0:
                continue
            a = expansion_edges(t, ExpansionRef(k, i))
            b = expansion_edges(t, ExpansionRef(*nd.twin[i]))
            assert sorted(a + b) == list(range(v.m))
            s, u = nd.eu[i], nd.ev[i]
            va = expansion_vertices(t, ExpansionRef(k, i))
            vb = expansion_vertices(t, ExpansionRef(*nd.twin[i]))
            assert va & vb == {s, u}
            # every expansion vertex other than s reaches u while avoiding s
            sub = view(v.n, [(v.eu[e], v.ev[e]) for e in a])
            outside = set(range(v.n)) - va
            assert _connected_without(sub, outside | {s})


def test_expansion_of_bad_ref():
    t = spqr_tree(view(3, [(0, 1), (1, 2), (2, 0)]))
    with pytest.raises(InputError):
        expansion_edges(t, ExpansionRef(0, 7))


def test_rerooting_keeps_the_tree():
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (3, 4), (4, 0)]
    shapes = set()
    for shift in range(len(edges)):
        rot = edges[shift:] + edges[:shift]
        t = spqr_tree(view(5, rot))
        shapes.add(tuple(sorted((nd.kind, len(nd.eu)) for nd in t.nodes)))
    assert len(shapes) == 1


def test_directed_skeleton_of_cycle():
    t = spqr_tree(view(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    nd = t.nodes[0]
    d = directed_skeleton(t, 0, [(True, False)] * len(nd.eu))
    assert sorted(d.arcs()) == sorted((str(a), str(b)) for a, b in zip(nd.eu, nd.ev))
    both = directed_skeleton(t, 0, [(True, True)] + [(False, False)] * (len(nd.eu) - 1))
    assert len(both.arcs()) == 2


def test_directed_skeleton_missing_flag():
    t = spqr_tree(view(3, [(0, 1), (1, 2), (2, 0)]))
    with pytest.raises(ContractViolation):
        directed_skeleton(t, 0, {0: (True, False)})


def test_bidirected_skeleton_single_flag():
    t = spqr_tree(view(3, [(0, 1), (1, 2), (2, 0)]))
    nd = t.nodes[0]
    none = ((False, False), (False, False))
    only = ((False, True), (False, False))  # s+ reaches t-
    g = bidirected_skeleton(t, 0, [only] + [none] * (len(nd.eu) - 1))
    assert g.m == 1
    (u, s, w, x), = g.edge_tuples()
    assert {(u, s), (w, x)} == {(str(nd.eu[0]), "+"), (str(nd.ev[0]), "-")}
    assert oracle_has_cycloid(g) is None
