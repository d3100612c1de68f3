import itertools
import json
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ktdist import (
    SimpleGraph,
    are_isomorphic,
    canonical_form,
    decode_graph6,
    encode_graph6,
    enumerate_cliques,
    from_trace,
)
from golden import SIX_VERTEX_TRIANGLES, six_vertex_2tree
from oracles import brute_isomorphic


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return SimpleGraph(n, frozenset(chosen))


def test_graph_validation():
    with pytest.raises(ValueError):
        SimpleGraph(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        SimpleGraph(3, frozenset({(0, 3)}))
    with pytest.raises(ValueError):
        SimpleGraph.from_edges(3, [(0, 1), (1, 0)])
    assert SimpleGraph(3, frozenset({(2, 0)})).edges == {(0, 2)}


def test_cliques_of_triangle():
    assert enumerate_cliques(SimpleGraph.complete(3), 2) == [(0, 1), (0, 2), (1, 2)]


def test_cliques_of_six_vertex_2tree():
    g = six_vertex_2tree()
    edges = [(0, 1), (0, 3), (0, 4), (0, 5), (1, 3), (2, 3), (2, 5), (3, 4), (3, 5)]
    assert enumerate_cliques(g, 2) == edges
    assert enumerate_cliques(g, 3) == SIX_VERTEX_TRIANGLES
    assert enumerate_cliques(g, 4) == []


@pytest.mark.parametrize("d", [0, 7])
def test_clique_size_out_of_range(d):
    with pytest.raises(ValueError):
        enumerate_cliques(six_vertex_2tree(), d)


@pytest.mark.parametrize("m", range(1, 9))
def test_complete_graph_clique_counts(m):
    g = SimpleGraph.complete(m)
    for d in range(1, m + 1):
        assert len(enumerate_cliques(g, d)) == math.comb(m, d)


@settings(max_examples=150, deadline=None)
@given(graphs(), st.integers(1, 5))
def test_cliques_sorted_complete_and_valid(g, d):
    if d > g.n:
        return
    found = enumerate_cliques(g, d)
    assert found == sorted(set(found))
    assert all(g.is_clique(c) for c in found)
    brute = [c for c in itertools.combinations(range(g.n), d) if g.is_clique(c)]
    assert found == brute


def test_canonical_form_separates_path_and_star():
    assert canonical_form(SimpleGraph.path(4)) != canonical_form(SimpleGraph.star(4))


def test_relabelled_drawings_share_form():
    # the same 2-tree with vertices renamed, as in two drawings of one graph
    t = from_trace(2, [1])
    swapped = t.graph.relabel([3, 2, 1, 0])
    assert canonical_form(t.graph) == canonical_form(swapped)


def test_random_relabelings_preserve_form():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 10)
        g = SimpleGraph(n, frozenset(e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4))
        form = canonical_form(g)
        for _ in range(5):
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_form(g.relabel(perm)) == form


def test_symmetric_graphs_finish_quickly():
    for g in [SimpleGraph.star(16), SimpleGraph.complete(14), SimpleGraph(14), SimpleGraph.cycle(16)]:
        perm = list(range(g.n))[::-1]
        assert canonical_form(g) == canonical_form(g.relabel(perm))


def test_isomorphism_small_cases():
    assert are_isomorphic(SimpleGraph.complete(4), SimpleGraph.complete(4))
    assert not are_isomorphic(SimpleGraph.complete(4), SimpleGraph.cycle(4))
    fan = from_trace(2, [1, 2]).graph
    book = from_trace(2, [1, 1]).graph
    assert not brute_isomorphic(fan, book)
    assert not are_isomorphic(fan, book)


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphism_matches_brute_force(g1, g2):
    if g1.n != g2.n:
        g2 = SimpleGraph(g1.n, frozenset(e for e in g2.edges if max(e) < g1.n))
    assert are_isomorphic(g1, g2) == brute_isomorphic(g1, g2)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_isomorphic_copies_detected(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert are_isomorphic(g, g.relabel(perm))


def test_regular_graphs_against_vf2():
    for seed in range(40):
        a = nx.random_regular_graph(3, 10, seed=seed)
        b = nx.random_regular_graph(3, 10, seed=seed + 500)
        ga, gb = SimpleGraph(10, frozenset(a.edges)), SimpleGraph(10, frozenset(b.edges))
        assert are_isomorphic(ga, gb) == nx.is_isomorphic(a, b)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=12))
def test_graph6_round_trip(g):
    text = encode_graph6(g)
    assert decode_graph6(text) == g
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    if g.n:
        assert nx.to_graph6_bytes(h, header=False).decode().strip() == text


def test_graph6_known_strings():
    assert encode_graph6(SimpleGraph.path(5)) == "DhC"
    assert decode_graph6(">>graph6<<DhC\n") == SimpleGraph.path(5)
    assert encode_graph6(SimpleGraph(0)) == "?"


def test_graph6_large_n_header():
    g = SimpleGraph.path(70)
    text = encode_graph6(g)
    assert text.startswith("~")
    assert decode_graph6(text) == g


@pytest.mark.parametrize("bad", ["", "D", "D!!", "Dh"])
def test_graph6_rejects_garbage(bad):
    with pytest.raises(ValueError):
        decode_graph6(bad)


def test_json_round_trip():
    g = six_vertex_2tree()
    obj = g.to_json()
    assert obj["edges"] == sorted(obj["edges"])
    assert all(u < v for u, v in obj["edges"])
    assert SimpleGraph.from_json(json.dumps(obj)) == g
