"""Matrices printed alongside the worked examples, copied verbatim."""

from ktdist import SimpleGraph

# 2-tree on v0..v5 built from the triangles 013, 034, 035, 235
SIX_VERTEX_EDGES = [(0, 1), (0, 3), (0, 4), (0, 5), (1, 3), (2, 3), (2, 5), (3, 4), (3, 5)]
SIX_VERTEX_TRIANGLES = [(0, 1, 3), (0, 3, 4), (0, 3, 5), (2, 3, 5)]


def six_vertex_2tree() -> SimpleGraph:
    return SimpleGraph.from_edges(6, SIX_VERTEX_EDGES)


SIX_VERTEX_D1 = [
    [0, 1, 2, 1, 1, 1],
    [1, 0, 2, 1, 2, 2],
    [2, 2, 0, 1, 2, 1],
    [1, 1, 1, 0, 1, 1],
    [1, 2, 2, 1, 0, 2],
    [1, 2, 1, 1, 2, 0],
]

SIX_VERTEX_D2_LABELS = ["01", "03", "04", "05", "13", "23", "25", "34", "35"]
SIX_VERTEX_D2 = [
    [0, 1, 2, 2, 1, 3, 3, 2, 2],
    [1, 0, 1, 1, 1, 2, 2, 1, 1],
    [2, 1, 0, 2, 2, 3, 3, 1, 2],
    [2, 1, 2, 0, 2, 2, 2, 2, 1],
    [1, 1, 2, 2, 0, 3, 3, 2, 2],
    [3, 2, 3, 2, 3, 0, 1, 3, 1],
    [3, 2, 3, 2, 3, 1, 0, 3, 1],
    [2, 1, 1, 2, 2, 3, 3, 0, 2],
    [2, 1, 2, 1, 2, 1, 1, 2, 0],
]

# Two labellings of the 2-cliques of the 5-vertex 2-tree A, B, C, D
# (triangles ABC and ABD).  Right: AB=1 AC=2 BC=3 AD=4 BD=5.
# Left:  AB=4 BC=5 CA=1 AD=3 BD=2.  rho sends right labels to left labels.
RELABEL_RHO = [4, 1, 5, 3, 2]
RELABEL_LEFT = [
    [0, 2, 2, 1, 1],
    [2, 0, 1, 1, 2],
    [2, 1, 0, 1, 2],
    [1, 1, 1, 0, 1],
    [1, 2, 2, 1, 0],
]
RELABEL_P = [
    [0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0],
    [1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0],
]
RELABEL_RIGHT = [
    [0, 1, 1, 1, 1],
    [1, 0, 1, 2, 2],
    [1, 1, 0, 2, 2],
    [1, 2, 2, 0, 1],
    [1, 2, 2, 1, 0],
]
RELABEL_P_INV = [
    [0, 0, 0, 1, 0],
    [1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0],
]

# Unlabeled 2-trees on n = 2..10 vertices (OEIS A054581).
TWO_TREE_COUNTS = {2: 1, 3: 1, 4: 1, 5: 2, 6: 5, 7: 12, 8: 39, 9: 136, 10: 529}
# Unlabeled trees on n = 1..10 vertices.
TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}
