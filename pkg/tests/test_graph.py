import pytest

from bubblegraph.errors import InputError
from bubblegraph.graph import (BidirectedEdge, BidirectedGraph, DirectedGraph, NotDigraphic,
                               VertexSide, as_bidirected, as_directed, flip_vertex, is_tip,
                               side_pair, split, tips)


def test_arc_is_plus_minus_edge():
    g = DirectedGraph(["a", "b"], [("a", "b")]).to_bidirected()
    assert g.edge_tuples() == [("a", "+", "b", "-")]


def test_duplicate_edges_are_merged():
    g = BidirectedGraph([], [("a", "+", "b", "-"), ("b", "-", "a", "+")])
    assert g.m == 1


def test_four_sign_patterns_between_two_vertices():
    g = BidirectedGraph([], [("a", s, "b", t) for s in "+-" for t in "+-"])
    assert g.m == 4


def test_self_loop_rejected():
    with pytest.raises(InputError):
        BidirectedGraph([], [("a", "+", "a", "-")])
    with pytest.raises(InputError):
        DirectedGraph([], [("a", "a")])


def test_bad_sign_rejected():
    with pytest.raises(InputError):
        BidirectedGraph([], [("a", "*", "b", "-")])


def test_tips_and_isolated_vertices():
    g = BidirectedGraph(["z"], [("a", "+", "b", "-"), ("b", "+", "c", "-")])
    assert tips(g) == [VertexSide("a", "+"), VertexSide("c", "-")]
    assert is_tip(g, "b") is None
    assert is_tip(g, "z") == "+"


def test_split_moves_opposite_ends():
    g = BidirectedGraph([], [("a", "+", "v", "-"), ("v", "+", "b", "-"), ("v", "-", "c", "+")])
    h, copy = split(g, VertexSide("v", "+"))
    assert copy == "v'"
    assert h.n == g.n + 1
    ends_at_v = {(e.a, e.b) for e in h.edges() if "v" in (e.a.vertex, e.b.vertex)}
    assert all(VertexSide("v", "-") not in pair for pair in ends_at_v)
    assert is_tip(h, "v") == "+"
    assert is_tip(h, "v'") == "-"


def test_split_on_unused_side_adds_isolated_copy():
    g = BidirectedGraph([], [("a", "+", "v", "+")])
    h, copy = split(g, VertexSide("v", "+"))
    assert h.m == 1 and h.n == 3 and not h.incidence()[h.vid(copy)]


def test_as_directed_witness():
    g = BidirectedGraph([], [("a", "+", "b", "-"), ("b", "+", "c", "+")])
    d = as_directed(g)
    assert isinstance(d, NotDigraphic) and not d
    assert d.witness == BidirectedEdge(VertexSide("b", "+"), VertexSide("c", "+"))


def test_as_directed_round_trip():
    d = DirectedGraph([], [("a", "b"), ("c", "b"), ("b", "d")])
    back = as_directed(as_bidirected(d))
    assert sorted(back.arcs()) == sorted(d.arcs())


def test_flip_vertex_swaps_signs():
    g = BidirectedGraph([], [("a", "+", "b", "-")])
    assert flip_vertex(g, "b").edge_tuples() == [("a", "+", "b", "+")]


def test_side_pair_is_canonical():
    a, b = VertexSide("b", "+"), VertexSide("a", "-")
    assert side_pair(a, b) == side_pair(b, a) == (b, a)


def test_unknown_vertex():
    g = BidirectedGraph(["a"])
    with pytest.raises(InputError):
        g.vid("nope")
