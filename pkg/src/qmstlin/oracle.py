"""Brute-force ground truth at desk scale.

Everything here is definitional: tree costs are evaluated as written,
optima come from exhaustive enumeration, and the linearizability decision
solves the full tree-incidence linear system over exact rationals. The
characterization pipeline is cross-validated against these answers.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import DimensionMismatch, LengthMismatch
from .graphs import (
    DEFAULT_TREE_CAP,
    Graph,
    SpanningTree,
    enumerate_spanning_trees,
)
from .matrices import CostMatrix
from .rationals import Rat, RatLike

if TYPE_CHECKING:  # pragma: no cover
    from .linearize import Instance


def qmstp_cost(q: CostMatrix, tree: SpanningTree) -> Rat:
    """Ordered double sum of q over the tree's edges, diagonal included."""
    ids = tree.sorted_ids
    if ids and ids[-1] > q.size:
        raise DimensionMismatch(
            f"tree uses edge {ids[-1]} but cost matrix has size {q.size}"
        )
    rows = q.rows
    total = Fraction(0)
    for e in ids:
        row = rows[e - 1]
        for f in ids:
            total += row[f - 1]
    return total


def linear_cost(c: Sequence[RatLike], tree: SpanningTree) -> Rat:
    return sum((Fraction(c[e - 1]) for e in tree.edge_ids), Fraction(0))


def brute_force_optimum(
    inst: "Instance", cap: int = DEFAULT_TREE_CAP
) -> tuple[SpanningTree, Rat]:
    """Minimize the quadratic tree cost exhaustively.

    Ties break toward the lexicographically smallest tree, which is the
    first one enumerated.
    """
    q = inst.dense()
    best_tree: SpanningTree | None = None
    best_cost: Rat | None = None
    for tree in enumerate_spanning_trees(inst.graph, cap):
        cost = qmstp_cost(q, tree)
        if best_cost is None or cost < best_cost:
            best_tree, best_cost = tree, cost
    assert best_tree is not None and best_cost is not None
    return best_tree, best_cost


def oracle_linearize(
    inst: "Instance", cap: int = DEFAULT_TREE_CAP
) -> tuple[Rat, ...] | None:
    """Solve the exact linear system "tree incidence times c = tree cost".

    Returns one solution vector (free variables pinned to zero) or None
    when the system is inconsistent, i.e. the instance is not linearizable.
    Rows are reduced online against a reduced-row-echelon basis, so memory
    stays quadratic in the edge count no matter how many trees there are.
    """
    g = inst.graph
    q = inst.dense()
    m = g.edge_count
    # pivot column -> (row vector with leading 1, right-hand side)
    pivots: dict[int, tuple[list[Fraction], Fraction]] = {}
    for tree in enumerate_spanning_trees(g, cap):
        row = [Fraction(0)] * m
        for e in tree.edge_ids:
            row[e - 1] = Fraction(1)
        rhs = qmstp_cost(q, tree)
        for col in range(m):
            coeff = row[col]
            if coeff and col in pivots:
                prow, prhs = pivots[col]
                for c in range(col, m):
                    if prow[c]:
                        row[c] -= coeff * prow[c]
                rhs -= coeff * prhs
        lead = next((c for c in range(m) if row[c]), None)
        if lead is None:
            if rhs != 0:
                return None
            continue
        inv = 1 / row[lead]
        if inv != 1:
            for c in range(lead, m):
                if row[c]:
                    row[c] *= inv
            rhs *= inv
        for pc, (prow, prhs) in pivots.items():
            coeff = prow[lead]
            if coeff:
                for c in range(lead, m):
                    if row[c]:
                        prow[c] -= coeff * row[c]
                pivots[pc] = (prow, prhs - coeff * rhs)
        pivots[lead] = (row, rhs)
    solution = [Fraction(0)] * m
    for col, (_row, rhs) in pivots.items():
        solution[col] = rhs
    return tuple(solution)


@dataclass(frozen=True)
class MmstpInstance:
    """Product-of-two-linear-costs spanning tree instance."""

    graph: Graph
    d1: tuple[Rat, ...]
    d2: tuple[Rat, ...]
    delta1: Rat
    delta2: Rat

    def __post_init__(self):
        m = self.graph.edge_count
        for name, vec in (("d1", self.d1), ("d2", self.d2)):
            if len(vec) != m:
                raise LengthMismatch(
                    f"{name} has length {len(vec)}, expected {m}", field=name
                )


def mmstp_objective(inst: MmstpInstance, tree: SpanningTree) -> Rat:
    s1 = sum((inst.d1[e - 1] for e in tree.edge_ids), Fraction(0)) + inst.delta1
    s2 = sum((inst.d2[e - 1] for e in tree.edge_ids), Fraction(0)) + inst.delta2
    return s1 * s2


def mmstp_brute_force(
    inst: MmstpInstance, cap: int = DEFAULT_TREE_CAP
) -> tuple[SpanningTree, Rat]:
    """Exhaustive minimizer of the product objective; lex tie-break."""
    best_tree: SpanningTree | None = None
    best_val: Rat | None = None
    for tree in enumerate_spanning_trees(inst.graph, cap):
        val = mmstp_objective(inst, tree)
        if best_val is None or val < best_val:
            best_tree, best_val = tree, val
    assert best_tree is not None and best_val is not None
    return best_tree, best_val
