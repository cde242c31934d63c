"""Property-based checks: finders against oracles and invariance under relabelling."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from bubblegraph.graph import BidirectedGraph, DirectedGraph, VertexSide, flip_vertex, side_pair
from bubblegraph.io import parse_edge_lists, parse_gfa, write_bidirected, write_gfa
from bubblegraph.oracle import oracle_snarls, oracle_superbubbles, oracle_ultrabubbles
from bubblegraph.snarls import expand_representation, find_snarl_representation
from bubblegraph.superbubbles import find_superbubbles
from bubblegraph.ultrabubbles import find_ultrabubbles

SIGN = st.sampled_from("+-")


@st.composite
def bidirected(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    names = [f"x{i}" for i in range(n)]
    if n < 2:
        return BidirectedGraph(names)
    pairs = st.tuples(st.integers(0, n - 1), SIGN, st.integers(0, n - 1), SIGN)
    raw = draw(st.lists(pairs, max_size=3 * n))
    return BidirectedGraph(names, [(names[u], s, names[v], t) for u, s, v, t in raw if u != v])


@st.composite
def digraphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    names = [f"x{i}" for i in range(n)]
    raw = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    return DirectedGraph(names, [(names[u], names[v]) for u, v in raw if u != v])


FAST = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@FAST
@given(bidirected())
def test_snarls_match_oracle(g):
    assert set(expand_representation(find_snarl_representation(g))) == oracle_snarls(g)


@FAST
@given(bidirected())
def test_ultrabubbles_match_oracle_and_are_snarls(g):
    got = {r.pair for r in find_ultrabubbles(g)}
    assert got == oracle_ultrabubbles(g)
    assert got <= set(expand_representation(find_snarl_representation(g)))


@FAST
@given(digraphs())
def test_superbubbles_match_oracle(d):
    assert {(r.entry, r.exit) for r in find_superbubbles(d)} == oracle_superbubbles(d)


@FAST
@given(bidirected(), st.data())
def test_flipping_a_vertex_flips_its_sides(g, data):
    v = data.draw(st.sampled_from(g.names))
    flip = {"+": "-", "-": "+"}

    def moved(p):
        return side_pair(*(VertexSide(x.vertex, flip[x.sign]) if x.vertex == v else x for x in p))

    before = {moved(p) for p in expand_representation(find_snarl_representation(g))}
    after = set(expand_representation(find_snarl_representation(flip_vertex(g, v))))
    assert before == after


@FAST
@given(bidirected(max_n=9))
def test_text_round_trips(g):
    assert parse_edge_lists(write_bidirected(g)).same_as(g)
    assert parse_gfa(write_gfa(g)).same_as(g)


@FAST
@given(bidirected(max_n=9))
def test_representation_size_is_linear(g):
    rep = find_snarl_representation(g)
    assert sum(len(t) for t in rep.tip_sets) <= 2 * g.n
    assert len({x for t in rep.tip_sets for x in t}) == sum(len(t) for t in rep.tip_sets)
