"""Exact integer linear algebra on small dense matrices.

Everything here works on Python ints, so entries of any size are handled
exactly. The routines are sized for matrices of a dozen or so rows: the
Smith normal form and determinant are polynomial, while the minor-gcd
routines enumerate every minor and serve as independent oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SnfResult",
    "Rational",
    "snf",
    "det",
    "det_cofactor",
    "minors_gcd",
    "all_minors_gcds",
    "rational_sum",
]

# Reduced fractions with a positive denominator; the stdlib type already
# maintains exactly that invariant.
Rational = Fraction


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.diagonal([1] * n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a, b = self.to_rows(), other.to_rows()
        cols_b = list(zip(*b)) if b else []
        return IntMatrix.from_rows(
            [[sum(x * y for x, y in zip(row, col)) for col in cols_b] for row in a]
        )

    def matvec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(x * y for x, y in zip(row, v)) for row in self.to_rows())

    def direct_sum(self, other: "IntMatrix") -> "IntMatrix":
        """Block-diagonal matrix with self in the top left."""
        top = [row + [0] * other.cols for row in self.to_rows()]
        bottom = [[0] * self.cols + row for row in other.to_rows()]
        return IntMatrix.from_rows(top + bottom)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "IntMatrix":
        cols = list(cols)
        return IntMatrix.from_rows([[self[i, j] for j in cols] for i in rows])


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form diagonal (invariant factors, then zeros) and rank."""

    diagonal: tuple[int, ...]
    rank: int

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.diagonal[: self.rank]


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form diagonal of an integer matrix.

    Elimination pivoting on the smallest nonzero entry in absolute value;
    once the pivot row and column are clear, any remaining entry not
    divisible by the pivot is folded into the pivot row and elimination
    resumes. Transform matrices are not tracked.
    """
    if m.rows == 0 or m.cols == 0:
        raise ValueError("snf of an empty matrix")
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    diag: list[int] = []
    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                row = a[i]
                for j in range(t, nc):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            pivot_row = a[t]
            dirty = False
            for i in range(t + 1, nr):
                x = a[i][t]
                if x:
                    q = x // p
                    row = a[i]
                    for j in range(t, nc):
                        row[j] -= q * pivot_row[j]
                    if row[t]:
                        dirty = True
            for j in range(t + 1, nc):
                x = pivot_row[j]
                if x:
                    q = x // p
                    for row in a[t:]:
                        row[j] -= q * row[t]
                    if pivot_row[j]:
                        dirty = True
            if dirty:
                continue
            # Pivot row and column are clear; enforce divisibility.
            bad = next(
                (i for i in range(t + 1, nr) if any(a[i][j] % p for j in range(t + 1, nc))),
                None,
            )
            if bad is None:
                break
            for j in range(t, nc):
                pivot_row[j] += a[bad][j]
        if best is None:
            break
        diag.append(abs(a[t][t]))
    rank = len(diag)
    diag.extend([0] * (min(nr, nc) - rank))
    return SnfResult(tuple(diag), rank)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_cofactor(m: IntMatrix) -> int:
    """Determinant by Laplace expansion along the first row (small inputs)."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")

    def expand(rows: list[list[int]]) -> int:
        if not rows:
            return 1
        if len(rows) == 1:
            return rows[0][0]
        total = 0
        for j, x in enumerate(rows[0]):
            if x:
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                total += (-1) ** j * x * expand(minor)
        return total

    return expand(m.to_rows())


def _minor_levels(m: IntMatrix, kmax: int):
    """Yield (k, minors) for k = 1..kmax.

    ``minors`` maps (row subset, column subset) to the minor's value, with
    subsets as sorted index tuples; zero minors are omitted. Level k is
    built from level k-1 by Laplace expansion along the last chosen row.
    Every minor of every size up to kmax is computed explicitly.
    """
    a = m.to_rows()
    level: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {((), ()): 1}
    for k in range(1, kmax + 1):
        nxt: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        for rows in combinations(range(m.rows), k):
            last = rows[-1]
            head = rows[:-1]
            arow = a[last]
            for cols in combinations(range(m.cols), k):
                total = 0
                for pos, j in enumerate(cols):
                    x = arow[j]
                    if x:
                        sub = level.get((head, cols[:pos] + cols[pos + 1:]))
                        if sub:
                            term = x * sub
                            total += term if (k - 1 + pos) % 2 == 0 else -term
                if total:
                    nxt[(rows, cols)] = total
        level = nxt
        yield k, level


def minors_gcd(m: IntMatrix, k: int) -> int:
    """gcd of all k x k minors (D_0 = 1; 0 when every k x k minor vanishes).

    Exhaustive over row and column subsets, intended as a test oracle for
    matrices up to about 12 x 12.
    """
    if not 0 <= k <= min(m.rows, m.cols):
        raise ValueError(f"minor size {k} out of range for {m.rows}x{m.cols}")
    if k == 0:
        return 1
    if any(abs(x) == 1 for x in m.entries) and k == 1:
        return 1
    for size, minors in _minor_levels(m, k):
        if size == k:
            g = 0
            for v in minors.values():
                g = gcd(g, v)
                if g == 1:
                    break
            return g
    raise AssertionError("unreachable")


def all_minors_gcds(m: IntMatrix) -> tuple[int, ...]:
    """(D_0, D_1, ..., D_min(rows, cols)) from one exhaustive pass."""
    out = [1]
    for _, minors in _minor_levels(m, min(m.rows, m.cols)):
        g = 0
        for v in minors.values():
            g = gcd(g, v)
            if g == 1:
                break
        out.append(g)
    return tuple(out)


def rational_sum(terms: Iterable[Fraction]) -> Fraction:
    return sum(terms, Fraction(0))
