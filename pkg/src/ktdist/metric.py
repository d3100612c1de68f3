"""d-clique adjacency graphs and d-distance matrices of k-trees."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph import Clique, SimpleGraph, enumerate_cliques
from .ktree import KTree
from .linalg import IntMatrix, ones_minus_identity


class NotConnectedError(ValueError):
    """The d-clique graph has more than one component."""


@dataclass(frozen=True)
class DCliqueGraph:
    d: int
    nodes: tuple[Clique, ...]
    neighbors: tuple[tuple[int, ...], ...]

    def is_adjacent(self, i: int, j: int) -> bool:
        return j in self.neighbors[i]


@dataclass(frozen=True)
class DistanceMatrix:
    entries: tuple[tuple[int, ...], ...]
    labels: tuple[Clique, ...] | None = None

    @property
    def order(self) -> int:
        return len(self.entries)

    def rows(self) -> IntMatrix:
        return [list(r) for r in self.entries]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], labels=None) -> "DistanceMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows),
                   tuple(labels) if labels is not None else None)


def clique_label(c: Clique) -> str:
    """Concatenated vertex ids, e.g. (0, 3) -> "03"."""
    return "".join(str(v) for v in c)


def d_clique_graph(g: SimpleGraph, d: int, nodes: Sequence[Clique] | None = None) -> DCliqueGraph:
    """Two d-cliques are adjacent when both lie in a common (d+1)-clique.

    ``nodes`` overrides the default lexicographic node order; it must list
    every d-clique of ``g`` exactly once.
    """
    lex = enumerate_cliques(g, d)
    if nodes is None:
        nodes = lex
    else:
        nodes = [tuple(sorted(c)) for c in nodes]
        if sorted(nodes) != lex:
            raise ValueError(f"node list is not a permutation of the {d}-cliques of the graph")
    index = {c: i for i, c in enumerate(nodes)}
    nbrs: list[set[int]] = [set() for _ in nodes]
    if d + 1 <= g.n:
        for big in enumerate_cliques(g, d + 1):
            faces = [index[f] for f in itertools.combinations(big, d)]
            for a, b in itertools.combinations(faces, 2):
                nbrs[a].add(b)
                nbrs[b].add(a)
    return DCliqueGraph(d, tuple(nodes), tuple(tuple(sorted(s)) for s in nbrs))


def _bfs_row(cg: DCliqueGraph, src: int) -> list[int]:
    dist = [-1] * len(cg.nodes)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in cg.neighbors[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def d_distance_matrix(g: SimpleGraph, d: int, nodes: Sequence[Clique] | None = None) -> DistanceMatrix:
    """Shortest d-walk lengths between all pairs of d-cliques (BFS per row)."""
    cg = d_clique_graph(g, d, nodes)
    rows = []
    for i in range(len(cg.nodes)):
        row = _bfs_row(cg, i)
        if -1 in row:
            j = row.index(-1)
            raise NotConnectedError(
                f"{d}-cliques {clique_label(cg.nodes[i])} and {clique_label(cg.nodes[j])} "
                f"are not joined by any {d}-walk"
            )
        rows.append(row)
    return DistanceMatrix.from_rows(rows, cg.nodes)


def ktree_distance_matrix(t: KTree) -> DistanceMatrix:
    """D^k of a k-tree indexed by its registry labels."""
    return d_distance_matrix(t.graph, t.k, t.registry)


def extend_by_attachment(D: DistanceMatrix | Sequence[Sequence[int]], i: int, k: int) -> DistanceMatrix:
    """Border D with k copies of (column i + 1) and a J_k - I_k corner block."""
    rows = D.rows() if isinstance(D, DistanceMatrix) else [list(r) for r in D]
    s = len(rows)
    if not 1 <= i <= s:
        raise ValueError(f"attachment index {i} outside 1..{s}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    col = [rows[r][i - 1] + 1 for r in range(s)]
    out = [row + [col[r]] * k for r, row in enumerate(rows)]
    for a in range(k):
        out.append(col + [int(a != b) for b in range(k)])
    return DistanceMatrix.from_rows(out)


def recursive_distance_matrix(t: KTree) -> DistanceMatrix:
    """Fold ``extend_by_attachment`` over the trace, starting at J_{k+1} - I_{k+1}."""
    if t.n < t.k + 1:
        raise ValueError("the recursion starts at K_{k+1}")
    D = DistanceMatrix.from_rows(ones_minus_identity(t.k + 1))
    for i in t.trace:
        D = extend_by_attachment(D, i, t.k)
    return DistanceMatrix(D.entries, t.registry)


def _check_permutation(rho: Sequence[int], size: int) -> None:
    if sorted(rho) != list(range(1, size + 1)):
        raise ValueError(f"rho must be a bijection on 1..{size}, got {list(rho)}")


def permutation_matrix(rho: Sequence[int]) -> IntMatrix:
    """P with P[i][j] = 1 iff rho^{-1}(i) = j (1-based labels)."""
    _check_permutation(rho, len(rho))
    inv = _inverse(rho)
    s = len(rho)
    return [[int(inv[i] == j) for j in range(1, s + 1)] for i in range(1, s + 1)]


def _inverse(rho: Sequence[int]) -> dict[int, int]:
    return {r: idx + 1 for idx, r in enumerate(rho)}


def permutation_conjugate(D: DistanceMatrix | Sequence[Sequence[int]], rho: Sequence[int]) -> DistanceMatrix:
    """P D P^{-1}: entry (i, j) of the result is D[rho^{-1}(i)][rho^{-1}(j)].

    ``rho[l - 1]`` is the new label of the clique labelled ``l``.
    """
    rows = D.rows() if isinstance(D, DistanceMatrix) else [list(r) for r in D]
    s = len(rows)
    _check_permutation(rho, s)
    inv = _inverse(rho)
    out = [[rows[inv[i] - 1][inv[j] - 1] for j in range(1, s + 1)] for i in range(1, s + 1)]
    labels = None
    if isinstance(D, DistanceMatrix) and D.labels is not None:
        labels = [D.labels[inv[i] - 1] for i in range(1, s + 1)]
    return DistanceMatrix.from_rows(out, labels)


def check_distance_axioms(D: DistanceMatrix) -> list[str]:
    """Violations of symmetry, zero diagonal, positivity and the triangle inequality."""
    e = D.entries
    s = D.order
    problems = []
    for i in range(s):
        if e[i][i] != 0:
            problems.append(f"diagonal ({i},{i}) = {e[i][i]}")
        for j in range(s):
            if e[i][j] != e[j][i]:
                problems.append(f"asymmetric at ({i},{j})")
            if i != j and e[i][j] < 1:
                problems.append(f"off-diagonal ({i},{j}) = {e[i][j]}")
    for a in range(s):
        for b in range(s):
            ab = e[a][b]
            for c in range(s):
                if e[a][c] > ab + e[b][c]:
                    problems.append(f"triangle inequality fails at ({a},{b},{c})")
    return problems
