"""Linearizability decision and linearization assembly.

The pipeline: symmetrize the cost, decompose the graph, test every
cross-component block for sum structure and every clique/biclique diagonal
block for weak sum structure, then assemble a linear cost vector from the
certificates. Cycle components carry no diagonal condition; their blocks
are split off and linearized by the closed-form cycle formula.

Verdicts are three-valued. Cross-block and clique/biclique failures are
proven non-linearizability. When every proven condition holds but some
component is outside the characterized classes and its diagonal block is
not a weak sum matrix, no claim is made either way and the failing block is
surfaced as-is.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, ValidationError
from .graphs import (
    DEFAULT_TREE_CAP,
    ComponentDecomposition,
    ComponentKind,
    Graph,
    SpanningTree,
    decompose,
    enumerate_spanning_trees,
    minimum_spanning_tree,
)
from .matrices import (
    CostMatrix,
    SumCertificate,
    SumFailure,
    WeakSumCertificate,
    WeakSumFailure,
    recognize_sum,
    recognize_weak_sum,
    row_tree_constants,
    symmetrize,
)
from .oracle import brute_force_optimum, linear_cost, qmstp_cost
from .rationals import Rat, RatLike


@dataclass(frozen=True)
class Instance:
    """A quadratic spanning tree instance: graph plus cost, dense or factored."""

    graph: Graph
    cost: "CostMatrix | object"
    name: str | None = None

    def __post_init__(self):
        m = getattr(self.cost, "size", None)
        if m is None:
            m = getattr(self.cost, "m", None)
        if m is None:
            raise ValidationError("cost must be a CostMatrix or FactoredCost")
        if m != self.graph.edge_count:
            raise DimensionMismatch(
                f"cost dimension {m} != edge count {self.graph.edge_count}",
                cost=m,
                edges=self.graph.edge_count,
            )

    def dense(self) -> CostMatrix:
        """The dense cost matrix, materializing a factored cost if needed."""
        if isinstance(self.cost, CostMatrix):
            return self.cost
        from .factored import materialize

        return materialize(self.cost)


@dataclass(frozen=True)
class BlockWitness:
    """A failed block check, located by component pair and edge ids.

    ``row_edges``/``col_edges`` translate the failure's block-local indices
    (1-based) into global edge ids. For diagonal blocks both components and
    both edge tuples coincide.
    """

    row_component: int
    col_component: int
    row_edges: tuple[int, ...]
    col_edges: tuple[int, ...]
    failure: SumFailure | WeakSumFailure


@dataclass(frozen=True)
class Linearizable:
    c: tuple[Rat, ...]
    decomposition: ComponentDecomposition
    cross_certificates: dict[tuple[int, int], SumCertificate]
    diagonal_certificates: dict[int, WeakSumCertificate]
    cycle_vectors: dict[int, tuple[Rat, ...]]


@dataclass(frozen=True)
class NotLinearizable:
    witness: BlockWitness
    decomposition: ComponentDecomposition


@dataclass(frozen=True)
class UnknownOutsideClass:
    other_components: tuple[int, ...]
    witness: BlockWitness
    decomposition: ComponentDecomposition


Verdict = Linearizable | NotLinearizable | UnknownOutsideClass


def linearize_cycle_block(
    block: Sequence[Sequence[RatLike]], n: int | None = None
) -> tuple[Rat, ...]:
    """Closed-form linearization of a quadratic cost on a single cycle.

    For a cycle with n edges the spanning trees are exactly the n
    one-edge deletions, and the unique solution of that system is
    c(e) = q(e,e) + sum_{i != e} (q(i,e) + q(e,i)) - S/(n-1)
    with S the total off-diagonal mass of the block.
    """
    k = len(block)
    if n is None:
        n = k
    if n != k:
        raise DimensionMismatch(f"block size {k} != stated cycle length {n}")
    if n < 3:
        raise ValidationError(f"cycle length must be >= 3, got {n}", n=n)
    total_off = Fraction(0)
    for i in range(k):
        for j in range(k):
            if i != j:
                total_off += block[i][j]
    share = total_off / (n - 1)
    out = []
    for e in range(k):
        acc = Fraction(block[e][e])
        for i in range(k):
            if i != e:
                acc += block[i][e] + block[e][i]
        out.append(acc - share)
    return tuple(out)


def _block(
    s: CostMatrix, row_edges: Sequence[int], col_edges: Sequence[int]
) -> list[list[Rat]]:
    return [[s.rows[r - 1][c - 1] for c in col_edges] for r in row_edges]


def check_and_linearize(inst: Instance) -> Verdict:
    """Decide linearizability by the block characterization and build C.

    The input cost may be asymmetric; it is symmetrized first, which never
    changes the verdict or the set of valid linearizations. Failures are
    reported for the first failing block in a fixed order: cross blocks in
    lexicographic component order, then diagonal blocks in component order.
    """
    if not isinstance(inst.cost, CostMatrix):
        raise ValidationError(
            "check_and_linearize needs a dense cost; materialize the factored "
            "form or use linearize_factored"
        )
    s = symmetrize(inst.cost)
    decomp = decompose(inst.graph)
    comps = decomp.components
    k = len(comps)

    cross_certs: dict[tuple[int, int], SumCertificate] = {}
    for i in range(k):
        for j in range(i + 1, k):
            result = recognize_sum(_block(s, comps[i].edge_ids, comps[j].edge_ids))
            if isinstance(result, SumFailure):
                witness = BlockWitness(
                    i, j, comps[i].edge_ids, comps[j].edge_ids, result
                )
                return NotLinearizable(witness, decomp)
            cross_certs[(i, j)] = result

    diag_certs: dict[int, WeakSumCertificate] = {}
    other_failure: BlockWitness | None = None
    for i, comp in enumerate(comps):
        if comp.kind in (ComponentKind.BRIDGE, ComponentKind.CYCLE):
            continue
        result = recognize_weak_sum(_block(s, comp.edge_ids, comp.edge_ids))
        if isinstance(result, WeakSumFailure):
            witness = BlockWitness(i, i, comp.edge_ids, comp.edge_ids, result)
            if comp.kind is ComponentKind.OTHER:
                if other_failure is None:
                    other_failure = witness
            else:
                return NotLinearizable(witness, decomp)
        else:
            diag_certs[i] = result

    others = tuple(
        i for i, comp in enumerate(comps) if comp.kind is ComponentKind.OTHER
    )
    if other_failure is not None:
        return UnknownOutsideClass(others, other_failure, decomp)

    c, cycle_vectors = _assemble(s, decomp, cross_certs, diag_certs)
    return Linearizable(c, decomp, cross_certs, diag_certs, cycle_vectors)


def _assemble(
    s: CostMatrix,
    decomp: ComponentDecomposition,
    cross_certs: dict[tuple[int, int], SumCertificate],
    diag_certs: dict[int, WeakSumCertificate],
) -> tuple[tuple[Rat, ...], dict[int, tuple[Rat, ...]]]:
    """Build C from the certificates.

    The symmetrized cost splits as A + A^T + D after the cycle blocks are
    zeroed out, where row e of A is constant on every component: the sum
    certificate's row contribution on foreign components, the weak sum
    value on the edge's own clique/biclique component, zero on bridges and
    cycles. Each edge then costs twice its constant row total plus its
    leftover diagonal, and the zeroed cycle blocks come back through the
    closed-form cycle vectors.
    """
    comps = decomp.components
    k = len(comps)
    m = s.size
    zero = Fraction(0)
    u = [[zero] * k for _ in range(m)]
    for (i, j), cert in cross_certs.items():
        for r, eid in enumerate(comps[i].edge_ids):
            u[eid - 1][j] = cert.a[r]
        for col, eid in enumerate(comps[j].edge_ids):
            u[eid - 1][i] = cert.b[col]
    for i, cert in diag_certs.items():
        for r, eid in enumerate(comps[i].edge_ids):
            u[eid - 1][i] = cert.w[r]

    row_constants = row_tree_constants(u, decomp)
    c = []
    for e0 in range(m):
        own = decomp.edge_to_component[e0 + 1]
        own_value = u[e0][own]
        if comps[own].kind is ComponentKind.CYCLE:
            diag_entry = zero
        else:
            diag_entry = s.rows[e0][e0]
        leftover_diag = diag_entry - 2 * own_value
        c.append(2 * row_constants[e0] + leftover_diag)

    cycle_vectors: dict[int, tuple[Rat, ...]] = {}
    for i, comp in enumerate(comps):
        if comp.kind is not ComponentKind.CYCLE:
            continue
        vec = linearize_cycle_block(_block(s, comp.edge_ids, comp.edge_ids))
        cycle_vectors[i] = vec
        for idx, eid in enumerate(comp.edge_ids):
            c[eid - 1] += vec[idx]
    return tuple(c), cycle_vectors


@dataclass(frozen=True)
class CounterexampleTree:
    tree: SpanningTree
    quadratic_cost: Rat
    linear_cost: Rat


def verify_linearization(
    inst: Instance, c: Sequence[RatLike], cap: int = DEFAULT_TREE_CAP
) -> CounterexampleTree | None:
    """Exhaustively check C(T) = Q(T); None means the check passed.

    The first failing tree in lexicographic order is returned otherwise.
    """
    q = inst.dense()
    if len(c) != q.size:
        raise DimensionMismatch(
            f"vector length {len(c)} != cost dimension {q.size}"
        )
    for tree in enumerate_spanning_trees(inst.graph, cap):
        qt = qmstp_cost(q, tree)
        ct = linear_cost(c, tree)
        if qt != ct:
            return CounterexampleTree(tree, qt, ct)
    return None


@dataclass(frozen=True)
class SolveResult:
    tree: SpanningTree
    cost: Rat
    method: str


def solve_qmstp(inst: Instance, cap: int = DEFAULT_TREE_CAP) -> SolveResult:
    """Optimal spanning tree under the quadratic cost.

    Linearizable instances are solved as an ordinary minimum spanning tree
    over the computed vector; anything else falls back to exhaustive search
    (subject to the tree cap). The reported cost is always the quadratic
    cost of the returned tree.
    """
    dense = inst.dense()
    dense_inst = (
        inst if isinstance(inst.cost, CostMatrix) else Instance(inst.graph, dense)
    )
    verdict = check_and_linearize(dense_inst)
    if isinstance(verdict, Linearizable):
        tree, _weight = minimum_spanning_tree(inst.graph, verdict.c)
        return SolveResult(tree, qmstp_cost(dense, tree), "linearized-mst")
    tree, cost = brute_force_optimum(dense_inst, cap)
    return SolveResult(tree, cost, "brute-force")
