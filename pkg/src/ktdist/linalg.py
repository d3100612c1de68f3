"""Exact integer linear algebra: Smith normal form, determinants, minors.

Matrices are plain lists of row lists holding Python ints, so entry growth
during elimination never overflows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

IntMatrix = list[list[int]]


class MatrixShapeError(ValueError):
    pass


@dataclass(frozen=True)
class SnfResult:
    factors: tuple[int, ...]
    rank: int
    det_sign: int | None = None  # None for non-square input

    def to_json(self) -> dict:
        return {"factors": list(self.factors), "rank": self.rank, "det_sign": self.det_sign}

    @classmethod
    def from_json(cls, obj: dict) -> "SnfResult":
        return cls(tuple(obj["factors"]), obj["rank"], obj.get("det_sign"))


def shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(r) != cols for r in m):
        raise MatrixShapeError("ragged matrix: rows have different lengths")
    return rows, cols


def copy(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(r) for r in m]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def diag(entries: Sequence[int]) -> IntMatrix:
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def ones_minus_identity(n: int) -> IntMatrix:
    """J_n - I_n."""
    return [[int(i != j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(c) for c in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if shape(a)[1] != shape(b)[0]:
        raise MatrixShapeError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def block_diag(*blocks: Sequence[Sequence[int]]) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[off + i][off:off + len(row)] = list(row)
        off += len(b)
    return out


def _require_square(m: Sequence[Sequence[int]]) -> int:
    rows, cols = shape(m)
    if rows != cols:
        raise MatrixShapeError(f"square matrix required, got {rows}x{cols}")
    return rows


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = _require_square(m)
    if n == 0:
        return 1
    a = copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return abs(determinant(m)) == 1


def snf(m: Sequence[Sequence[int]]) -> SnfResult:
    """Invariant factors of an integer matrix.

    Elimination with a minimum-magnitude pivot.  Once the pivot row and column
    are cleared, any remaining entry the pivot fails to divide is folded into
    the pivot row and the step repeats, so factors come out already forming
    a divisibility chain.
    """
    rows, cols = shape(m)
    a = copy(m)
    factors: list[int] = []
    t = 0
    while t < min(rows, cols):
        pos = _min_nonzero(a, t, rows, cols)
        if pos is None:
            break
        _move_to(a, pos, t)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, cols):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, rows):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than |p| is left in row/col t
                best = min(
                    [(abs(a[i][t]), (i, t)) for i in range(t, rows) if a[i][t]]
                    + [(abs(a[t][j]), (t, j)) for j in range(t, cols) if a[t][j]]
                )
                _move_to(a, best[1], t)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for j in range(t, cols):
                rt[j] += rb[j]
        factors.append(abs(a[t][t]))
        t += 1
    det_sign = None
    if rows == cols:
        d = determinant(m)
        det_sign = (d > 0) - (d < 0)
    return SnfResult(tuple(factors), len(factors), det_sign)


def _min_nonzero(a: IntMatrix, t: int, rows: int, cols: int) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i in range(t, rows):
        row = a[i]
        for j in range(t, cols):
            v = row[j]
            if v and (best is None or abs(v) < best_val):
                best, best_val = (i, j), abs(v)
                if best_val == 1:
                    return best
    return best


def _move_to(a: IntMatrix, pos: tuple[int, int], t: int) -> None:
    i, j = pos
    if i != t:
        a[i], a[t] = a[t], a[i]
    if j != t:
        for row in a:
            row[j], row[t] = row[t], row[j]


def diagonal_invariant_factors(entries: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of diag(entries): pairwise (gcd, lcm) until chained."""
    vals = sorted(abs(e) for e in entries if e)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            g = math.gcd(vals[i], vals[j])
            vals[i], vals[j] = g, vals[i] // g * vals[j]
    return tuple(vals)


# ---------------------------------------------------------------------------
# Independent oracle: determinantal divisors.

MAX_MINORS = 400_000


def _fraction_det(rows: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return int(det)


def gcd_of_minors_snf(m: Sequence[Sequence[int]]) -> SnfResult:
    """Invariant factors via d_i = gcd of all i x i minors, f_i = d_i / d_{i-1}.

    Slow by design and only meant as a cross-check for small inputs.
    """
    rows, cols = shape(m)
    total = sum(math.comb(rows, i) * math.comb(cols, i) for i in range(1, min(rows, cols) + 1))
    if total > MAX_MINORS:
        raise MatrixShapeError(f"{rows}x{cols} has {total} minors; oracle limit is {MAX_MINORS}")
    divisors = [1]
    factors: list[int] = []
    for size in range(1, min(rows, cols) + 1):
        # d_size is a multiple of d_{size-1} * f_{size-1}; stop scanning once reached
        floor = divisors[-1] * (factors[-1] if factors else 1)
        g = 0
        for rs in itertools.combinations(range(rows), size):
            sub_rows = [m[r] for r in rs]
            for cs in itertools.combinations(range(cols), size):
                g = math.gcd(g, _fraction_det([[row[c] for c in cs] for row in sub_rows]))
                if g == floor:
                    break
            if g == floor:
                break
        if g == 0:
            break
        factors.append(g // divisors[-1])
        divisors.append(g)
    det_sign = None
    if rows == cols:
        d = _fraction_det(m) if rows else 1
        det_sign = (d > 0) - (d < 0)
    return SnfResult(tuple(factors), len(factors), det_sign)
