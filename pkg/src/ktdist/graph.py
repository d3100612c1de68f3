"""Undirected simple graphs, fixed-size clique listing and canonical forms.

Vertices are the integers ``0..n-1``.  Adjacency is kept as Python-int
bitsets, which keeps refinement and clique extension cheap at the sizes
we care about (a few dozen vertices at most).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Clique = tuple[int, ...]
CanonicalForm = bytes


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        normalized = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        pairs = [tuple(e) for e in edges]
        seen = set()
        for u, v in pairs:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(pairs))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def star(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset((0, i) for i in range(1, n)))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitsets, one per vertex."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_clique(self, members: Iterable[int]) -> bool:
        members = list(members)
        return all(self.has_edge(u, v) for u, v in itertools.combinations(members, 2))

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabeling must be a permutation of 0..n-1")
        return SimpleGraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def add_vertex(self, neighbors: Iterable[int]) -> "SimpleGraph":
        v = self.n
        return SimpleGraph(self.n + 1, self.edges | {(u, v) for u in neighbors})

    def remove_vertex(self, v: int) -> "SimpleGraph":
        """Delete ``v`` and shift the higher labels down by one."""
        def shift(u):
            return u - 1 if u > v else u
        return SimpleGraph(
            self.n - 1,
            frozenset((shift(a), shift(b)) for a, b in self.edges if v not in (a, b)),
        )

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "SimpleGraph":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls.from_edges(int(obj["n"]), obj["edges"])


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _popcount(mask: int) -> int:
    return mask.bit_count()


def enumerate_cliques(g: SimpleGraph, d: int) -> list[Clique]:
    """All cliques with exactly ``d`` vertices, in lexicographic order."""
    if d < 1 or d > g.n:
        raise ValueError(f"clique size must satisfy 1 <= d <= n={g.n}, got {d}")
    adj = g.adj
    out: list[Clique] = []

    def extend(members: list[int], candidates: int) -> None:
        if len(members) == d:
            out.append(tuple(members))
            return
        need = d - len(members)
        while candidates and _popcount(candidates) >= need:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            # only higher-numbered neighbours keep the output sorted
            members.append(v)
            extend(members, candidates & adj[v])
            members.pop()

    extend([], (1 << g.n) - 1)
    return out


# ---------------------------------------------------------------------------
# Canonical labelling: equitable refinement + individualisation search with
# automorphism pruning.  The certificate at a leaf is the graph6 string of the
# graph relabelled by the leaf's vertex order; the canonical form is the
# smallest certificate over the (pruned) search tree.


def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Refine an ordered partition (list of vertex bitsets) until equitable."""
    cells = list(cells)
    changed = True
    while changed:
        changed = False
        new_cells = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], int] = {}
            for v in _bits(cell):
                sig = tuple(_popcount(adj[v] & c) for c in cells)
                groups[sig] = groups.get(sig, 0) | (1 << v)
            if len(groups) > 1:
                changed = True
                new_cells.extend(groups[s] for s in sorted(groups))
            else:
                new_cells.append(cell)
        cells = new_cells
    return cells


def _certificate(g: SimpleGraph, order: Sequence[int]) -> bytes:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return encode_graph6(g.relabel(pos)).encode("ascii")


def _orbit_rep(v: int, gens: list[tuple[int, ...]]) -> int:
    """Smallest member of the orbit of ``v`` under ``gens`` (closure)."""
    orbit = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for p in gens:
            w = p[u]
            if w not in orbit:
                orbit.add(w)
                stack.append(w)
    return min(orbit)


def canonical_labeling(g: SimpleGraph) -> tuple[CanonicalForm, tuple[int, ...]]:
    """Return ``(form, order)``: ``order[i]`` is the vertex placed at position ``i``."""
    n = g.n
    if n == 0:
        return encode_graph6(g).encode("ascii"), ()
    adj = g.adj
    root = _refine(adj, [(1 << n) - 1])

    best_cert: bytes | None = None
    best_order: tuple[int, ...] = ()
    first_order: tuple[int, ...] | None = None
    first_cert: bytes | None = None
    automorphisms: list[tuple[int, ...]] = []

    def perm_between(src: Sequence[int], dst: Sequence[int]) -> tuple[int, ...]:
        p = [0] * n
        for a, b in zip(src, dst):
            p[a] = b
        return tuple(p)

    def search(cells: list[int], prefix: list[int]) -> int | None:
        """DFS; returns a level to unwind to after an automorphism with the first leaf."""
        nonlocal best_cert, best_order, first_order, first_cert
        target = next((c for c in cells if c & (c - 1)), None)
        if target is None:
            order = tuple(c.bit_length() - 1 for c in cells)
            cert = _certificate(g, order)
            if first_order is None:
                first_order, first_cert = order, cert
                best_order, best_cert = order, cert
                return None
            if cert == first_cert:
                automorphisms.append(perm_between(first_order, order))
                # whole subtree since divergence from the first path is equivalent
                for level, (a, b) in enumerate(zip(prefix, first_path)):
                    if a != b:
                        return level
                return None
            if cert == best_cert:
                automorphisms.append(perm_between(best_order, order))
            elif cert < best_cert:
                best_order, best_cert = order, cert
            return None

        idx = cells.index(target)
        tried: list[int] = []
        for v in _bits(target):
            fixing = [p for p in automorphisms if all(p[u] == u for u in prefix)]
            if fixing and _orbit_rep(v, fixing) in {_orbit_rep(t, fixing) for t in tried}:
                continue
            tried.append(v)
            child = cells[:idx] + [1 << v, target & ~(1 << v)] + cells[idx + 1:]
            prefix.append(v)
            if first_order is None:
                first_path.append(v)
            jump = search(_refine(adj, child), prefix)
            prefix.pop()
            if jump is not None and jump < len(prefix):
                return jump
        return None

    first_path: list[int] = []
    search(root, [])
    return best_cert, best_order


def canonical_form(g: SimpleGraph) -> CanonicalForm:
    """Relabeling-invariant encoding (graph6 of the canonically relabeled graph)."""
    return canonical_labeling(g)[0]


def are_isomorphic(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    return canonical_form(g1) == canonical_form(g2)


# ---------------------------------------------------------------------------
# graph6


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def encode_graph6(g: SimpleGraph) -> str:
    """graph6 text (no header, no newline)."""
    bits = []
    for j in range(1, g.n):
        mask = g.adj[j]
        for i in range(j):
            bits.append(mask >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    chunks = []
    for start in range(0, len(bits), 6):
        val = 0
        for b in bits[start:start + 6]:
            val = (val << 1) | b
        chunks.append(chr(val + 63))
    return _encode_n(g.n) + "".join(chunks)


def decode_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(x < 0 or x > 63 for x in data):
        raise ValueError("graph6 string contains characters outside '?'..'~'")
    if data[0] != 63:
        n, rest = data[0], data[1:]
    elif len(data) > 1 and data[1] == 63:
        if len(data) < 8:
            raise ValueError("truncated graph6 size field")
        n = 0
        for x in data[2:8]:
            n = (n << 6) | x
        rest = data[8:]
    else:
        if len(data) < 4:
            raise ValueError("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    need = n * (n - 1) // 2
    if len(rest) != (need + 5) // 6:
        raise ValueError(f"graph6 body has {len(rest)} bytes, expected {(need + 5) // 6} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if rest[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return SimpleGraph(n, frozenset(edges))
