"""Exact recognition of sum and weak sum structure, with certificates.

A matrix h is a sum matrix when h(i,j) = a(i) + b(j) for some vectors a, b;
a symmetric square matrix is a weak sum matrix when the relation holds off
the diagonal with a(i) = b(i) = w(i). Both recognizers are zero-tolerance
decision procedures: success returns a canonical certificate, failure
returns index-level counterevidence a human can re-check by hand.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotSymmetric
from .graphs import ComponentDecomposition
from .rationals import Rat, RatLike

Row = Sequence[RatLike]
Matrix = Sequence[Row]


@dataclass(frozen=True)
class CostMatrix:
    """Dense m x m quadratic cost: entry (e,f) is the cost of edge pair (e,f)."""

    rows: tuple[tuple[Rat, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, e: int, f: int) -> Rat:
        """Entry for 1-based edge ids."""
        return self.rows[e - 1][f - 1]

    def is_symmetric(self) -> bool:
        m = self.size
        return all(
            self.rows[i][j] == self.rows[j][i] for i in range(m) for j in range(i)
        )


def cost_matrix(values: Matrix) -> CostMatrix:
    rows = tuple(tuple(Fraction(x) for x in row) for row in values)
    m = len(rows)
    for i, row in enumerate(rows):
        if len(row) != m:
            raise DimensionMismatch(
                f"row {i + 1} has {len(row)} entries, expected {m}", row=i + 1
            )
    return CostMatrix(rows)


def symmetrize(q: CostMatrix) -> CostMatrix:
    """Return (Q + Q^T)/2 with exact halving."""
    m = q.size
    half = Fraction(1, 2)
    return CostMatrix(
        tuple(
            tuple((q.rows[i][j] + q.rows[j][i]) * half for j in range(m))
            for i in range(m)
        )
    )


@dataclass(frozen=True)
class SumCertificate:
    """h(i,j) = a(i) + b(j); normalized so a(1) = 0."""

    a: tuple[Rat, ...]
    b: tuple[Rat, ...]


@dataclass(frozen=True)
class SumFailure:
    """2x2 counterevidence: h(r1,c1) + h(r2,c2) != h(r1,c2) + h(r2,c1).

    Indices are 1-based within the checked block.
    """

    rows: tuple[int, int]
    cols: tuple[int, int]
    lhs: Rat
    rhs: Rat


@dataclass(frozen=True)
class WeakSumCertificate:
    """h(i,j) = w(i) + w(j) for all i != j; diagonal unconstrained."""

    w: tuple[Rat, ...]


@dataclass(frozen=True)
class WeakSumFailure:
    """Off-diagonal entry that contradicts the forced vector w.

    ``quad`` is a 2x2 index quadruple (r1, r2, c1, c2), all four positions
    off-diagonal, with h(r1,c1) + h(r2,c2) != h(r1,c2) + h(r2,c1).
    """

    entry: tuple[int, int]
    expected: Rat
    actual: Rat
    quad: tuple[int, int, int, int]


def recognize_sum(h: Matrix) -> SumCertificate | SumFailure:
    """Decide whether the rectangular matrix ``h`` is a sum matrix.

    The candidate is forced by the first row and column: b(j) = h(1,j),
    a(i) = h(i,1) - h(1,1). Any matrix with a single row or column passes.
    """
    n1 = len(h)
    if n1 == 0:
        return SumCertificate((), ())
    n2 = len(h[0])
    for i, row in enumerate(h):
        if len(row) != n2:
            raise DimensionMismatch(
                f"row {i + 1} has {len(row)} entries, expected {n2}", row=i + 1
            )
    if n2 == 0:
        return SumCertificate((Fraction(0),) * n1, ())
    corner = Fraction(h[0][0])
    b = tuple(Fraction(x) for x in h[0])
    a = tuple(Fraction(row[0]) - corner for row in h)
    for i in range(1, n1):
        for j in range(1, n2):
            if h[i][j] != a[i] + b[j]:
                lhs = corner + Fraction(h[i][j])
                rhs = Fraction(h[0][j]) + Fraction(h[i][0])
                return SumFailure((1, i + 1), (1, j + 1), lhs, rhs)
    return SumCertificate(a, b)


def is_sum_matrix(h: Matrix) -> bool:
    return isinstance(recognize_sum(h), SumCertificate)


def recognize_weak_sum(h: Matrix) -> WeakSumCertificate | WeakSumFailure:
    """Decide whether the symmetric matrix ``h`` is a weak sum matrix.

    Sizes k <= 3 always succeed (w is forced for k = 3 and padded with
    zeros below that). For k >= 4 the vector forced by rows 1..3 is checked
    against every off-diagonal entry. Diagonal entries are never read.
    """
    k = len(h)
    for i, row in enumerate(h):
        if len(row) != k:
            raise DimensionMismatch(
                f"row {i + 1} has {len(row)} entries, expected {k}", row=i + 1
            )
    for i in range(k):
        for j in range(i + 1, k):
            if h[i][j] != h[j][i]:
                raise NotSymmetric(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ",
                    entry=(i + 1, j + 1),
                )
    if k == 0:
        return WeakSumCertificate(())
    if k == 1:
        return WeakSumCertificate((Fraction(0),))
    if k == 2:
        return WeakSumCertificate((Fraction(h[0][1]), Fraction(0)))
    w = _weak_sum_candidate(h)
    if k == 3:
        return WeakSumCertificate(w)
    for i in range(k):
        for j in range(i + 1, k):
            expected = w[i] + w[j]
            if h[i][j] != expected:
                anchor = 2 if i + 1 >= 3 else 3
                quad = (1, i + 1, anchor, j + 1)
                return WeakSumFailure(
                    (i + 1, j + 1), expected, Fraction(h[i][j]), quad
                )
    return WeakSumCertificate(w)


def _weak_sum_candidate(h: Matrix) -> tuple[Rat, ...]:
    """The unique candidate w, from entries (1,2), (1,3), (2,3) and row 1."""
    h12, h13, h23 = Fraction(h[0][1]), Fraction(h[0][2]), Fraction(h[1][2])
    w1 = (h12 + h13 - h23) / 2
    w = [w1, h12 - w1, h13 - w1]
    w.extend(Fraction(h[0][j]) - w1 for j in range(3, len(h)))
    return tuple(w)


def row_tree_constants(
    rows: Sequence[Sequence[RatLike]], decomp: ComponentDecomposition
) -> tuple[Rat, ...]:
    """Constant spanning-tree cost of each row of a component-constant matrix.

    ``rows[i][j]`` is the value row i takes on every edge of component j.
    Every spanning tree uses exactly (component vertex count - 1) edges from
    each biconnected component, so row i always sums to
    sum_j (|V_j| - 1) * rows[i][j].
    """
    weights = [comp.tree_edge_count for comp in decomp.components]
    result = []
    for i, row in enumerate(rows):
        if len(row) != len(weights):
            raise DimensionMismatch(
                f"row {i + 1} has {len(row)} values, expected one per component "
                f"({len(weights)})",
                row=i + 1,
            )
        result.append(sum((Fraction(v) * t for v, t in zip(row, weights)), Fraction(0)))
    return tuple(result)
