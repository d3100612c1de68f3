"""Building k-trees by clique attachment, and enumerating them up to isomorphism."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graph import CanonicalForm, Clique, SimpleGraph, canonical_form

Mapper = Callable[[Callable, Iterable], Iterable]


@dataclass(frozen=True)
class KTree:
    """A k-tree together with its labelled k-clique registry.

    ``registry[i - 1]`` is the k-clique carrying label ``i``.  ``trace`` lists
    the 1-based labels used for each attachment, starting from K_{k+1}.
    The n = k tree (a bare K_k) has a one-entry registry and no trace.
    """

    k: int
    graph: SimpleGraph
    registry: tuple[Clique, ...]
    trace: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.graph.n

    def to_json(self) -> dict:
        return {"k": self.k, "trace": list(self.trace)}

    @classmethod
    def from_json(cls, obj: dict | str) -> "KTree":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return from_trace(int(obj["k"]), [int(i) for i in obj["trace"]])


def registry_size(k: int, n: int) -> int:
    """s(n) = k(n-k)+1 for n >= k+1; a bare K_k has a single clique."""
    return k * (n - k) + 1


def trivial_ktree(k: int) -> KTree:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return KTree(k, SimpleGraph.complete(k), (tuple(range(k)),))


def base_ktree(k: int) -> KTree:
    """K_{k+1} with its k+1 k-cliques labelled in lexicographic order."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    registry = tuple(itertools.combinations(range(k + 1), k))
    return KTree(k, SimpleGraph.complete(k + 1), registry)


def attach(t: KTree, i: int) -> KTree:
    """Glue a new vertex onto the k-clique labelled ``i`` (1-based)."""
    if not 1 <= i <= len(t.registry):
        raise ValueError(f"attachment index {i} outside 1..{len(t.registry)}")
    if t.n == t.k:
        raise ValueError("attach starts from K_{k+1}; use base_ktree")
    target = t.registry[i - 1]
    v = t.n
    new = sorted(
        tuple(sorted(target[:j] + target[j + 1:] + (v,))) for j in range(t.k)
    )
    return KTree(t.k, t.graph.add_vertex(target), t.registry + tuple(new), t.trace + (i,))


def from_trace(k: int, steps: Sequence[int]) -> KTree:
    t = base_ktree(k)
    for pos, i in enumerate(steps):
        if not 1 <= i <= len(t.registry):
            raise ValueError(
                f"trace position {pos}: index {i} outside 1..{len(t.registry)}"
            )
        t = attach(t, i)
    return t


def generate_all(k: int, nmax: int, mapper: Mapper = map) -> list[list[KTree]]:
    """One representative per isomorphism class for each order n = k..nmax.

    Level by level: every representative of order n is extended through each of
    its registered k-cliques and the results are deduplicated by canonical form.
    ``mapper`` lets the caller fan the canonical-form computation out to a pool;
    the merge is sequential so the output does not depend on scheduling.
    Each level is sorted by canonical form.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if nmax < k:
        raise ValueError(f"nmax={nmax} must be at least k={k}")
    levels = [[trivial_ktree(k)]]
    if nmax == k:
        return levels
    levels.append([base_ktree(k)])
    for _ in range(k + 2, nmax + 1):
        candidates = [
            attach(t, i) for t in levels[-1] for i in range(1, len(t.registry) + 1)
        ]
        forms = list(mapper(_form_of, candidates))
        seen: dict[CanonicalForm, KTree] = {}
        for form, cand in zip(forms, candidates):
            seen.setdefault(form, cand)
        levels.append([seen[f] for f in sorted(seen)])
    return levels


def _form_of(t: KTree) -> CanonicalForm:
    return canonical_form(t.graph)


def is_ktree(g: SimpleGraph, k: int, rng: random.Random | None = None) -> bool:
    """Recognise a k-tree by peeling simplicial vertices of degree k.

    With ``rng`` the peelable vertex is chosen at random; otherwise the
    lowest-numbered one is taken.
    """
    if k < 1 or g.n < k:
        return False
    adj = list(g.adj)
    alive = (1 << g.n) - 1
    remaining = g.n
    while remaining > k:
        options = []
        for v in range(g.n):
            if not alive >> v & 1:
                continue
            nbrs = adj[v] & alive
            if nbrs.bit_count() != k:
                continue
            if all((adj[u] & nbrs) | (1 << u) == nbrs for u in _members(nbrs)):
                options.append(v)
                if rng is None:
                    break
        if not options:
            return False
        v = rng.choice(options) if rng is not None else options[0]
        alive &= ~(1 << v)
        remaining -= 1
    return all((adj[u] & alive) | (1 << u) == alive for u in _members(alive))


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
