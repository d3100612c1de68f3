import random

import pytest

from ktdist import (
    SimpleGraph,
    base_ktree,
    d_clique_graph,
    d_distance_matrix,
    extend_by_attachment,
    from_trace,
    generate_all,
    ktree_distance_matrix,
    permutation_conjugate,
    recursive_distance_matrix,
    snf,
)
from ktdist.linalg import matmul, ones_minus_identity
from ktdist.metric import (
    DistanceMatrix,
    NotConnectedError,
    check_distance_axioms,
    clique_label,
    permutation_matrix,
)
from golden import (
    RELABEL_LEFT,
    RELABEL_P,
    RELABEL_P_INV,
    RELABEL_RHO,
    RELABEL_RIGHT,
    SIX_VERTEX_D1,
    SIX_VERTEX_D2,
    SIX_VERTEX_D2_LABELS,
    SIX_VERTEX_TRIANGLES,
    six_vertex_2tree,
)
from oracles import graph_distances


def test_clique_graph_of_triangle_vertices():
    cg = d_clique_graph(SimpleGraph.complete(3), 1)
    assert cg.nodes == ((0,), (1,), (2,))
    assert cg.neighbors == ((1, 2), (0, 2), (0, 1))


def test_edge_23_touches_only_25_and_35():
    g = six_vertex_2tree()
    cg = d_clique_graph(g, 2)
    idx = cg.nodes.index((2, 3))
    assert [cg.nodes[j] for j in cg.neighbors[idx]] == [(2, 5), (3, 5)]
    # subset-of-a-common-triangle oracle
    for i, a in enumerate(cg.nodes):
        for j, b in enumerate(cg.nodes):
            common = i != j and any(set(a) <= set(t) and set(b) <= set(t) for t in SIX_VERTEX_TRIANGLES)
            assert cg.is_adjacent(i, j) == common


def test_vertex_clique_graph_is_the_graph():
    g = six_vertex_2tree()
    cg = d_clique_graph(g, 1)
    for v in range(g.n):
        assert list(cg.neighbors[v]) == g.neighbors(v)


def test_six_vertex_d1_matches_print():
    D = d_distance_matrix(six_vertex_2tree(), 1)
    assert D.rows() == SIX_VERTEX_D1
    assert D.rows() == graph_distances(six_vertex_2tree())


def test_six_vertex_d2_matches_print():
    D = d_distance_matrix(six_vertex_2tree(), 2)
    assert D.rows() == SIX_VERTEX_D2
    assert [clique_label(c) for c in D.labels] == SIX_VERTEX_D2_LABELS


def test_base_matrix_is_ones_minus_identity():
    g = SimpleGraph.complete(4)
    assert d_distance_matrix(g, 3).rows() == ones_minus_identity(4)


def test_disconnected_clique_graph_raises():
    # two triangles sharing only a vertex: their edges never share a triangle
    g = SimpleGraph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    with pytest.raises(NotConnectedError):
        d_distance_matrix(g, 2)
    with pytest.raises(NotConnectedError):
        d_distance_matrix(SimpleGraph(2), 1)


def test_custom_node_order_must_be_a_permutation():
    g = SimpleGraph.complete(3)
    with pytest.raises(ValueError):
        d_clique_graph(g, 2, [(0, 1), (0, 2)])


def test_extend_triangle_gives_relabel_right_matrix():
    D = extend_by_attachment(DistanceMatrix.from_rows(ones_minus_identity(3)), 1, 2)
    assert D.rows() == RELABEL_RIGHT
    assert recursive_distance_matrix(from_trace(2, [1])).rows() == RELABEL_RIGHT
    assert ktree_distance_matrix(from_trace(2, [1])).rows() == RELABEL_RIGHT


def test_extend_edge_gives_path():
    D = extend_by_attachment([[0, 1], [1, 0]], 1, 1)
    assert D.rows() == [[0, 1, 1], [1, 0, 2], [1, 2, 0]]
    # same as the path 1-0-2 relabelled
    assert permutation_conjugate(D, [2, 1, 3]).rows() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


def test_extend_shape_and_errors():
    D = extend_by_attachment(ones_minus_identity(4), 2, 3)
    assert D.order == 7
    block = [row[4:] for row in D.rows()[4:]]
    assert block == ones_minus_identity(3)
    with pytest.raises(ValueError):
        extend_by_attachment(ones_minus_identity(4), 5, 3)


def test_recursion_on_base_tree():
    for k in (1, 2, 3, 4):
        assert recursive_distance_matrix(base_ktree(k)).rows() == ones_minus_identity(k + 1)


def test_recursion_equals_bfs_for_all_small_ktrees():
    for k, nmax in [(1, 8), (2, 8), (3, 7), (4, 8)]:
        for level in generate_all(k, nmax)[1:]:
            for t in level:
                D = ktree_distance_matrix(t)
                assert recursive_distance_matrix(t).entries == D.entries
                assert D.order == k * (t.n - k) + 1


def test_relabel_example():
    right = DistanceMatrix.from_rows(RELABEL_RIGHT)
    assert permutation_matrix(RELABEL_RHO) == RELABEL_P
    assert matmul(RELABEL_P, RELABEL_P_INV) == [[int(i == j) for j in range(5)] for i in range(5)]
    assert permutation_conjugate(right, RELABEL_RHO).rows() == RELABEL_LEFT
    assert matmul(matmul(RELABEL_P, RELABEL_RIGHT), RELABEL_P_INV) == RELABEL_LEFT


def test_conjugation_basics():
    D = DistanceMatrix.from_rows(SIX_VERTEX_D2)
    assert permutation_conjugate(D, list(range(1, 10))).rows() == SIX_VERTEX_D2
    with pytest.raises(ValueError):
        permutation_conjugate(D, [1, 1, 2, 3, 4, 5, 6, 7, 8])
    rng = random.Random(5)
    for _ in range(50):
        rho = list(range(1, 10))
        rng.shuffle(rho)
        C = permutation_conjugate(D, rho)
        assert not check_distance_axioms(C)
        assert snf(C.rows()).factors == snf(SIX_VERTEX_D2).factors
        # entry (i, j) = D[rho^-1(i)][rho^-1(j)]
        inv = {r: i + 1 for i, r in enumerate(rho)}
        assert all(C[i - 1, j - 1] == D[inv[i] - 1, inv[j] - 1] for i in range(1, 10) for j in range(1, 10))


def test_distance_axioms_on_generated_trees():
    for k in (1, 2, 3):
        for level in generate_all(k, k + 5):
            for t in level:
                for d in range(1, k + 1):
                    assert not check_distance_axioms(d_distance_matrix(t.graph, d))


def test_axiom_checker_flags_problems():
    bad = DistanceMatrix.from_rows([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert any("triangle" in p for p in check_distance_axioms(bad))
    assert check_distance_axioms(DistanceMatrix.from_rows([[1, 0], [2, 0]]))
