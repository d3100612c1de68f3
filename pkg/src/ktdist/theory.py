"""Closed forms for D^k of k-trees and exhaustive checks against them.

The predicted invariants: for n >= k+2 the k-distance matrix of any k-tree
on n vertices has invariant factors

    1 (x (k-1)(n-k)+2),  k+1 (x n-k-2),  k(k+1)(n-k)

and determinant (-1)^{k(n-k)} k (k+1)^{n-k-1} (n-k).
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Callable, Iterable

from . import linalg
from .graph import encode_graph6
from .ktree import KTree, generate_all, registry_size
from .linalg import IntMatrix
from .metric import (
    DistanceMatrix,
    d_distance_matrix,
    ktree_distance_matrix,
    permutation_conjugate,
    recursive_distance_matrix,
)

Mapper = Callable[[Callable, Iterable], Iterable]


class ContractError(ValueError):
    """Inputs that violate an operation's documented relationship."""


@dataclass(frozen=True)
class PredictedSpectrum:
    k: int
    n: int
    factors: tuple[int, ...]


def predicted_snf(k: int, n: int) -> PredictedSpectrum:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if n < k:
        raise ValueError(f"n={n} is smaller than k={k}")
    if n == k:
        factors: tuple[int, ...] = ()
    elif n == k + 1:
        factors = (1,) * k + (k,)
    else:
        m = n - k
        factors = (1,) * ((k - 1) * m + 2) + (k + 1,) * (m - 2) + (k * (k + 1) * m,)
    return PredictedSpectrum(k, n, factors)


def predicted_det(k: int, n: int) -> int:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if n <= k:
        raise ValueError(f"determinant formula needs n >= k+1, got k={k}, n={n}")
    m = n - k
    return (-1) ** (k * m) * k * (k + 1) ** (m - 1) * m


def mk_matrix(k: int) -> IntMatrix:
    """-J_k - I_k: -2 on the diagonal, -1 elsewhere."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return [[-2 if i == j else -1 for j in range(k)] for i in range(k)]


def mk_snf(k: int) -> tuple[int, ...]:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return (1,) * (k - 1) + (k + 1,)


def pm_qm_matrices(k: int) -> tuple[IntMatrix, IntMatrix]:
    """Unimodular P, Q with P (-J_k - I_k) Q = diag(1, ..., 1, k+1)."""
    if k < 2:
        raise ValueError(f"witness matrices are defined for k >= 2, got {k}")
    P = linalg.identity(k)
    P[k - 1] = [-k] * (k - 1) + [1]
    Q = [[int(i != j) for j in range(k)] for i in range(k - 1)]
    for row in Q:
        row[k - 1] = 1
    Q.append([-(k - 1)] * (k - 1) + [-k])
    return P, Q


def bordered_matrix(a: int, b: int, c: int, m: int) -> IntMatrix:
    """[[c, b 1^T], [b 1, a I_m]] of order m+1."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    out = [[c] + [b] * m]
    for i in range(m):
        out.append([b] + [a if j == i else 0 for j in range(m)])
    return out


def bordered_snf(a: int, b: int, c: int, m: int) -> tuple[int, ...]:
    """Invariant factors of ``bordered_matrix(a, b, c, m)`` in closed form.

    diag(g1, g2/g1, a, ..., a, a(ac - m b^2)/g2) with g1 = gcd(a, b, c) and
    g2 = gcd(a^2, b^2, ca, ba); the last entry is what makes the product
    equal |det| = |a^{m-1}(ac - m b^2)|.  A zero last entry (singular input)
    is dropped, and the diagonal is normalised into a divisibility chain.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    if m < 2:
        raise ValueError(f"m must be at least 2, got {m}")
    g1 = math.gcd(a, b, c)
    g2 = math.gcd(a * a, b * b, c * a, b * a)
    last = abs(a * (a * c - m * b * b)) // g2
    return linalg.diagonal_invariant_factors([g1, g2 // g1] + [a] * (m - 2) + [last])


def bordered_last_factor_unscaled(a: int, b: int, c: int, m: int) -> int:
    """(ac - m b^2) / gcd(a, b, c): NOT the last invariant factor in general.

    Kept to show the discrepancy; e.g. (3, 1, 4, 4) gives 8 where the matrix
    has last factor 24.
    """
    return (a * c - m * b * b) // math.gcd(a, b, c)


def arrow_matrix(k: int, n: int) -> IntMatrix:
    """Zero corner, all-ones border, and n-k diagonal copies of -J_k - I_k."""
    if k < 1 or n < k + 2:
        raise ValueError(f"arrow matrix needs k >= 1 and n >= k+2, got k={k}, n={n}")
    size = registry_size(k, n)
    blocks = linalg.block_diag(*[mk_matrix(k)] * (n - k))
    out = [[0] + [1] * (size - 1)]
    for row in blocks:
        out.append([1] + row)
    return out


@dataclass(frozen=True)
class ArrowReduction:
    matrix: IntMatrix
    # (axis, target, source, multiplier): axis[target] += multiplier * axis[source], 1-based
    operations: tuple[tuple[str, int, int, int], ...]
    permutation: tuple[int, ...] | None  # maps result index -> arrow index; None if no match

    @property
    def matches_arrow(self) -> bool:
        return self.permutation is not None


def reduce_to_arrow(D: DistanceMatrix | IntMatrix, t: KTree) -> ArrowReduction:
    """Replay the unimodular row/column subtractions that take D^k(t) to arrow form.

    Walking the trace backwards, the target clique's row and column are
    subtracted from the k rows and columns added by that attachment; finally
    the first row and column are subtracted from rows and columns 2..k+1.
    """
    k, n = t.k, t.n
    if n < k + 2:
        raise ValueError(f"reduction needs n >= k+2, got k={k}, n={n}")
    rows = D.rows() if isinstance(D, DistanceMatrix) else linalg.copy(D)
    expected = recursive_distance_matrix(t).rows()
    if rows != expected:
        raise ContractError("matrix is not the k-distance matrix of the tree in registry order")

    ops: list[tuple[str, int, int, int]] = []

    def sub_row(target: int, source: int) -> None:
        rt, rs = rows[target - 1], rows[source - 1]
        for j in range(len(rt)):
            rt[j] -= rs[j]
        ops.append(("row", target, source, -1))

    def sub_col(target: int, source: int) -> None:
        for r in rows:
            r[target - 1] -= r[source - 1]
        ops.append(("col", target, source, -1))

    for step in range(len(t.trace) - 1, -1, -1):
        i = t.trace[step]
        first_new = registry_size(k, k + 1 + step) + 1
        block = range(first_new, first_new + k)
        for r in block:
            sub_row(r, i)
        for c in block:
            sub_col(c, i)
    for r in range(2, k + 2):
        sub_row(r, 1)
    for c in range(2, k + 2):
        sub_col(c, 1)

    target = arrow_matrix(k, n)
    perm = tuple(range(len(rows))) if rows == target else _find_symmetric_permutation(rows, target)
    return ArrowReduction(rows, tuple(ops), perm)


def _find_symmetric_permutation(a: IntMatrix, b: IntMatrix) -> tuple[int, ...] | None:
    """Backtracking search for p with a[i][j] == b[p[i]][p[j]]."""
    size = len(a)
    if size != len(b):
        return None
    sig_a = [sorted(r) for r in a]
    sig_b = [sorted(r) for r in b]
    p: list[int] = []
    used = [False] * size

    def extend() -> bool:
        i = len(p)
        if i == size:
            return True
        for cand in range(size):
            if used[cand] or sig_a[i] != sig_b[cand] or a[i][i] != b[cand][cand]:
                continue
            if all(a[i][j] == b[cand][p[j]] and a[j][i] == b[p[j]][cand] for j in range(i)):
                used[cand] = True
                p.append(cand)
                if extend():
                    return True
                p.pop()
                used[cand] = False
        return False

    return tuple(p) if extend() else None


# ---------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class ClassResult:
    k: int
    n: int
    d: int
    trace: tuple[int, ...]
    graph6: str
    factors: tuple[int, ...]
    det: int
    recursion_ok: bool | None = None
    arrow_ok: bool | None = None
    arrow_snf_ok: bool | None = None
    relabel_ok: bool | None = None
    matrix: IntMatrix | None = None


def evaluate_class(
    t: KTree, d: int | None = None, keep_matrix: bool = False, relabel_seed: int | None = None
) -> ClassResult:
    """Distance matrix, SNF, determinant, and (for d = k) the structural checks.

    With ``relabel_seed`` the SNF is also recomputed after conjugating by a
    random relabelling of the cliques (seeded per class from the trace).
    """
    d = t.k if d is None else d
    if d == t.k:
        D = ktree_distance_matrix(t)
    else:
        D = d_distance_matrix(t.graph, d)
    rows = D.rows()
    res = linalg.snf(rows)
    det = linalg.determinant(rows)
    recursion_ok = arrow_ok = arrow_snf_ok = None
    if d == t.k and t.n >= t.k + 1:
        recursion_ok = recursive_distance_matrix(t).entries == D.entries
    if d == t.k and t.n >= t.k + 2 and recursion_ok:
        red = reduce_to_arrow(D, t)
        arrow_ok = red.matches_arrow
        arrow_snf_ok = linalg.snf(red.matrix).factors == res.factors
    relabel_ok = None
    if relabel_seed is not None:
        rng = random.Random(f"{relabel_seed}:{t.k}:{list(t.trace)}")
        rho = list(range(1, D.order + 1))
        rng.shuffle(rho)
        relabel_ok = linalg.snf(permutation_conjugate(D, rho).rows()).factors == res.factors
    return ClassResult(
        t.k, t.n, d, t.trace, encode_graph6(t.graph), res.factors, det,
        recursion_ok, arrow_ok, arrow_snf_ok, relabel_ok, rows if keep_matrix else None,
    )


@dataclass
class OrderReport:
    n: int
    classes: int
    predicted_factors: tuple[int, ...]
    predicted_det: int | None
    snf_pass: int = 0
    det_pass: int = 0
    recursion_pass: int = 0
    arrow_pass: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


@dataclass
class VerificationReport:
    kind: str
    k: int
    d: int
    nmin: int
    nmax: int
    orders: list[OrderReport]

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.orders)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind, "k": self.k, "d": self.d,
            "nmin": self.nmin, "nmax": self.nmax, "passed": self.passed,
            "orders": [],
        }
        for o in self.orders:
            entry = asdict(o)
            entry["predicted_factors"] = list(o.predicted_factors)
            entry["passed"] = o.passed
            out["orders"].append(entry)
        return out

    def to_text(self) -> str:
        lines = [f"{self.kind} check, k={self.k}, d={self.d}, n={self.nmin}..{self.nmax}"]
        lines.append(f"{'n':>4} {'classes':>8} {'snf':>6} {'det':>6} {'recur':>6} {'arrow':>6}  status")
        for o in self.orders:
            lines.append(
                f"{o.n:>4} {o.classes:>8} {o.snf_pass:>6} {o.det_pass:>6} "
                f"{o.recursion_pass:>6} {o.arrow_pass:>6}  {'PASS' if o.passed else 'FAIL'}"
            )
            for mm in o.mismatches:
                lines.append(f"      mismatch trace={mm['trace']}: {mm['reason']}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def verify_theorem(k: int, nmax: int, d: int | None = None, mapper: Mapper = map) -> VerificationReport:
    """Compare SNF and determinant of every class against the closed forms.

    Orders k+1..nmax are covered; n = k+1 is the single K_{k+1}.  Predictions
    are only compared when d = k; for other d the report just records values.
    """
    d = k if d is None else d
    if nmax < k + 2:
        raise ValueError(f"nmax must be at least k+2={k + 2}, got {nmax}")
    if not 1 <= d <= k:
        raise ValueError(f"d must lie in 1..{k}, got {d}")
    levels = generate_all(k, nmax, mapper)
    orders = []
    for trees in levels[1:]:
        n = trees[0].n
        results = list(mapper(partial(evaluate_class, d=d), trees))
        pf = predicted_snf(k, n).factors
        pdet = predicted_det(k, n)
        rep = OrderReport(n, len(trees), pf, pdet)
        for r in results:
            reasons = []
            if d == k:
                if r.factors == pf:
                    rep.snf_pass += 1
                else:
                    reasons.append(f"snf {list(r.factors)} != predicted {list(pf)}")
                if r.det == pdet:
                    rep.det_pass += 1
                else:
                    reasons.append(f"det {r.det} != predicted {pdet}")
                if r.recursion_ok:
                    rep.recursion_pass += 1
                else:
                    reasons.append("recursive matrix differs from BFS matrix")
                if r.arrow_ok is not None:
                    if r.arrow_ok and r.arrow_snf_ok:
                        rep.arrow_pass += 1
                    else:
                        reasons.append("arrow reduction mismatch")
            if reasons:
                rep.mismatches.append({
                    "trace": list(r.trace), "graph6": r.graph6,
                    "factors": list(r.factors), "det": r.det,
                    "reason": "; ".join(reasons),
                })
        orders.append(rep)
    return VerificationReport("theorem", k, d, k + 1, nmax, orders)


def verify_equivalence(
    k: int, nmax: int, mapper: Mapper = map, seed: int | None = None
) -> VerificationReport:
    """Every class of each order reduces to the same arrow matrix and shares one SNF.

    A ``seed`` adds a random clique relabelling per class, whose SNF must not move.
    """
    if nmax < k + 2:
        raise ValueError(f"nmax must be at least k+2={k + 2}, got {nmax}")
    levels = generate_all(k, nmax, mapper)
    orders = []
    for trees in levels[2:]:
        n = trees[0].n
        results = list(mapper(partial(evaluate_class, relabel_seed=seed), trees))
        arrow_factors = linalg.snf(arrow_matrix(k, n)).factors
        rep = OrderReport(n, len(trees), arrow_factors, None)
        for r in results:
            reasons = []
            if r.factors == arrow_factors:
                rep.snf_pass += 1
            else:
                reasons.append(f"snf {list(r.factors)} differs from arrow matrix {list(arrow_factors)}")
            if r.recursion_ok:
                rep.recursion_pass += 1
            else:
                reasons.append("recursive matrix differs from BFS matrix")
            if r.arrow_ok and r.arrow_snf_ok:
                rep.arrow_pass += 1
            else:
                reasons.append("reduction does not reach the arrow matrix")
            if r.relabel_ok is False:
                reasons.append("SNF changed under clique relabelling")
            if reasons:
                rep.mismatches.append({
                    "trace": list(r.trace), "graph6": r.graph6,
                    "factors": list(r.factors), "det": r.det,
                    "reason": "; ".join(reasons),
                })
        orders.append(rep)
    return VerificationReport("equivalence", k, k, k + 2, nmax, orders)


@dataclass
class SurveyOrder:
    n: int
    classes: int
    # (factors, det) -> number of classes
    groups: dict[tuple[tuple[int, ...], int], int]
    witnesses: list[dict] = field(default_factory=list)

    @property
    def constant(self) -> bool:
        return len(self.groups) <= 1


@dataclass
class SurveyReport:
    k: int
    d: int
    nmax: int
    orders: list[SurveyOrder]

    @property
    def nonconstant_orders(self) -> list[int]:
        return [o.n for o in self.orders if not o.constant]

    def to_json(self) -> dict:
        return {
            "k": self.k, "d": self.d, "nmax": self.nmax,
            "nonconstant_orders": self.nonconstant_orders,
            "orders": [
                {
                    "n": o.n, "classes": o.classes, "constant": o.constant,
                    "groups": [
                        {"factors": list(f), "det": det, "count": cnt}
                        for (f, det), cnt in sorted(o.groups.items())
                    ],
                    "witnesses": o.witnesses,
                }
                for o in self.orders
            ],
        }

    def to_text(self) -> str:
        lines = [f"survey of D^{self.d} over {self.k}-trees, n <= {self.nmax}"]
        for o in self.orders:
            tag = "constant" if o.constant else "NON-CONSTANT"
            lines.append(f"n={o.n} classes={o.classes} distinct={len(o.groups)} {tag}")
            for (f, det), cnt in sorted(o.groups.items()):
                lines.append(f"    x{cnt}: snf={' '.join(map(str, f))} det={det}")
            for w in o.witnesses:
                lines.append(f"    witness trace={w['trace']} graph6={w['graph6']}")
                lines.extend("      " + " ".join(map(str, row)) for row in w["matrix"])
        return "\n".join(lines)


def survey_snf(k: int, d: int, nmax: int, mapper: Mapper = map) -> SurveyReport:
    """Group the (SNF, det) pairs of D^d over all classes of each order.

    Orders where the pair is not constant get two witnesses with different
    invariants, including their matrices.
    """
    if not 1 <= d <= k:
        raise ValueError(f"d must lie in 1..{k}, got {d}")
    levels = generate_all(k, nmax, mapper)
    orders = []
    for trees in levels:
        n = trees[0].n
        results = list(mapper(partial(evaluate_class, d=d, keep_matrix=True), trees))
        groups: dict[tuple[tuple[int, ...], int], int] = defaultdict(int)
        first: dict[tuple[tuple[int, ...], int], ClassResult] = {}
        for r in results:
            key = (r.factors, r.det)
            groups[key] += 1
            first.setdefault(key, r)
        so = SurveyOrder(n, len(trees), dict(groups))
        if len(groups) > 1:
            for key in sorted(first)[:2]:
                r = first[key]
                so.witnesses.append({
                    "trace": list(r.trace), "graph6": r.graph6,
                    "factors": list(r.factors), "det": r.det, "matrix": r.matrix,
                })
        orders.append(so)
    return SurveyReport(k, d, nmax, orders)
