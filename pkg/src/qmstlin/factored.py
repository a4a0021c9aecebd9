"""Linear-time recognition and linearization of rank-2 factored costs.

A factored cost stores off-diagonal entries q(i,j) = a_i*b_j + c_i*d_j plus
an explicit diagonal. The recognizer decides in O(n) whether the factored
matrix is a sum matrix: with a constant vector present this reduces to
which vectors are constant, otherwise to the existence of an affine
coupling a = K*c + K1, d = -K*b + K2 with K != 0.

On complete and complete bipartite graphs this yields an O(m) path to the
linearizability verdict that never materializes the dense matrix.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    LengthMismatch,
    NotSymmetricOffDiagonal,
    TooLarge,
    ValidationError,
    WrongGraphClass,
)
from .graphs import Component, ComponentDecomposition, ComponentKind, classify_whole_graph
from .linearize import (
    BlockWitness,
    Instance,
    Linearizable,
    NotLinearizable,
    Verdict,
)
from .matrices import CostMatrix, WeakSumCertificate, WeakSumFailure
from .rationals import Rat, RatLike

#: Largest dimension materialize() will expand to a dense matrix.
DENSE_CAP = 4096

Vector = Sequence[RatLike]


@dataclass(frozen=True)
class FactoredCost:
    """Off-diagonal costs a_i*b_j + c_i*d_j plus an explicit diagonal."""

    a: tuple[Rat, ...]
    b: tuple[Rat, ...]
    c: tuple[Rat, ...]
    d: tuple[Rat, ...]
    diag: tuple[Rat, ...]

    def __post_init__(self):
        m = len(self.a)
        for name in ("b", "c", "d", "diag"):
            vec = getattr(self, name)
            if len(vec) != m:
                raise LengthMismatch(
                    f"vector {name} has length {len(vec)}, expected {m}", field=name
                )

    @property
    def m(self) -> int:
        return len(self.a)

    def off_diagonal(self, i: int, j: int) -> Rat:
        """Entry for 1-based indices i != j."""
        return self.a[i - 1] * self.b[j - 1] + self.c[i - 1] * self.d[j - 1]


def factored_cost(
    a: Vector, b: Vector, c: Vector, d: Vector, diag: Vector
) -> FactoredCost:
    def conv(vec: Vector) -> tuple[Rat, ...]:
        return tuple(Fraction(x) for x in vec)

    return FactoredCost(conv(a), conv(b), conv(c), conv(d), conv(diag))


@dataclass(frozen=True)
class ConstantCase:
    """Sum certificate when a or b is constant and c or d is constant."""

    constant_left: str
    constant_right: str
    e: tuple[Rat, ...]
    f: tuple[Rat, ...]


@dataclass(frozen=True)
class AffineCase:
    """Sum certificate via a_i = k*c_i + k1 and d_i = -k*b_i + k2, k != 0."""

    k: Rat
    k1: Rat
    k2: Rat
    e: tuple[Rat, ...]
    f: tuple[Rat, ...]


@dataclass(frozen=True)
class NotSum:
    """Refusal with the indices that break the necessary condition."""

    reason: str
    indices: tuple[int, ...]


FactoredSumCertificate = ConstantCase | AffineCase


def _is_constant(vec: Sequence) -> bool:
    return len(vec) <= 1 or all(x == vec[0] for x in vec)


def _first_diff(vec: Sequence) -> int | None:
    """0-based index of the first entry differing from entry 0."""
    head = vec[0]
    for i in range(1, len(vec)):
        if vec[i] != head:
            return i
    return None


def _plain(value: Fraction):
    """Collapse integral Fractions to int so hot loops stay in int arithmetic."""
    return int(value) if value.denominator == 1 else value


def recognize_factored_sum(
    a: Vector, b: Vector, c: Vector, d: Vector
) -> ConstantCase | AffineCase | NotSum:
    """Decide in one O(n) pass whether a_i*b_j + c_i*d_j is a sum matrix.

    Failure values carry 1-based vector indices witnessing the violated
    condition so the caller can print checkable counterevidence.
    """
    n = len(a)
    for name, vec in (("b", b), ("c", c), ("d", d)):
        if len(vec) != n:
            raise LengthMismatch(
                f"vector {name} has length {len(vec)}, expected {n}", field=name
            )
    if n == 0:
        return ConstantCase("a", "c", (), ())
    const_a, const_b = _is_constant(a), _is_constant(b)
    const_c, const_d = _is_constant(c), _is_constant(d)
    if const_a or const_b or const_c or const_d:
        if not (const_a or const_b):
            ia = _first_diff(a)
            ib = _first_diff(b)
            return NotSum("left-factor-varies", (1, ia + 1, 1, ib + 1))
        if not (const_c or const_d):
            ic = _first_diff(c)
            idx = _first_diff(d)
            return NotSum("right-factor-varies", (1, ic + 1, 1, idx + 1))
        left = "a" if const_a else "b"
        right = "c" if const_c else "d"
        zero = Fraction(0)
        if left == "a" and right == "c":
            alpha, gamma = Fraction(a[0]), Fraction(c[0])
            e = (zero,) * n
            f = tuple(alpha * b[j] + gamma * d[j] for j in range(n))
        elif left == "a" and right == "d":
            alpha, delta = Fraction(a[0]), Fraction(d[0])
            e = tuple(delta * c[i] for i in range(n))
            f = tuple(alpha * b[j] for j in range(n))
        elif left == "b" and right == "c":
            beta, gamma = Fraction(b[0]), Fraction(c[0])
            e = tuple(beta * a[i] for i in range(n))
            f = tuple(gamma * d[j] for j in range(n))
        else:
            beta, delta = Fraction(b[0]), Fraction(d[0])
            e = tuple(beta * a[i] + delta * c[i] for i in range(n))
            f = (zero,) * n
        return ConstantCase(left, right, e, f)

    j = _first_diff(a)
    assert j is not None
    if c[j] == c[0]:
        return NotSum("a-varies-where-c-does-not", (1, j + 1))
    k = (Fraction(a[0]) - Fraction(a[j])) / (Fraction(c[0]) - Fraction(c[j]))
    k1 = Fraction(a[0]) - k * Fraction(c[0])
    k2 = Fraction(d[0]) + k * Fraction(b[0])
    kp, k1p, k2p = _plain(k), _plain(k1), _plain(k2)
    for i in range(n):
        if a[i] != kp * c[i] + k1p:
            return NotSum("a-not-affine-in-c", (i + 1,))
    for i in range(n):
        if d[i] != -kp * b[i] + k2p:
            return NotSum("d-not-affine-in-b", (i + 1,))
    e = tuple(Fraction(k2p * c[i]) for i in range(n))
    f = tuple(Fraction(k1p * b[j]) for j in range(n))
    return AffineCase(k, k1, k2, e, f)


def materialize(fc: FactoredCost, cap: int = DENSE_CAP) -> CostMatrix:
    """Expand a factored cost to the dense matrix it represents.

    The off-diagonal must be symmetric (a valid quadratic spanning tree
    cost); asymmetric inputs are rejected rather than silently symmetrized,
    because symmetrizing a factored form can push its rank above 2.
    """
    m = fc.m
    if m > cap:
        raise TooLarge(f"dense materialization of size {m} exceeds cap {cap}", m=m, cap=cap)
    rows = []
    for i in range(1, m + 1):
        ai, ci = fc.a[i - 1], fc.c[i - 1]
        row = [ai * fc.b[j - 1] + ci * fc.d[j - 1] for j in range(1, m + 1)]
        row[i - 1] = fc.diag[i - 1]
        rows.append(row)
    for i in range(m):
        for j in range(i + 1, m):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetricOffDiagonal(
                    f"off-diagonal entries ({i + 1},{j + 1})={rows[i][j]} and "
                    f"({j + 1},{i + 1})={rows[j][i]} differ",
                    entry=(i + 1, j + 1),
                )
    return CostMatrix(tuple(tuple(row) for row in rows))


# ---------------------------------------------------------------------------
# O(m) linearization on complete and complete bipartite graphs


def linearize_factored(inst: Instance) -> Verdict:
    """Linearizability verdict for a factored cost on K_n or K_{n1,n2}.

    Runs in O(m): the sum recognizer provides vectors e, f; symmetry of the
    off-diagonal forces e_i - f_i to be a single constant t, and
    w_i = e_i - t/2 is then the weak sum vector. The linearization is
    c(i) = diag_i + 2*(V-2)*w_i with V the vertex count, since every
    spanning tree takes V-1 edges from the single component.

    When the recognizer refuses (the factored matrix is not a sum matrix),
    an exact O(m) residual test still decides whether the off-diagonal
    alone is a weak sum, which is the actual linearizability condition; the
    factored diagonal is never part of the cost.
    """
    if not isinstance(inst.cost, FactoredCost):
        raise ValidationError("linearize_factored needs a factored cost")
    fc = inst.cost
    shape = classify_whole_graph(inst.graph)
    if shape is None:
        raise WrongGraphClass(
            "graph is neither complete nor complete bipartite", n=inst.graph.vertex_count
        )
    kind, sizes = shape
    if kind == "clique":
        vertex_total = sizes[0]
        if vertex_total < 4:
            raise WrongGraphClass(
                f"complete graph needs at least 4 vertices here, got {vertex_total}"
            )
        comp_kind = ComponentKind.CLIQUE
    else:
        s1, s2 = sizes
        if min(s1, s2) < 3:
            raise WrongGraphClass(
                f"complete bipartite sides ({s1},{s2}) must both be >= 3"
            )
        vertex_total = s1 + s2
        comp_kind = ComponentKind.BICLIQUE3
    m = fc.m

    cert = recognize_factored_sum(fc.a, fc.b, fc.c, fc.d)
    decomp = _single_component_decomposition(inst.graph, comp_kind)
    if isinstance(cert, NotSum):
        w = _fallback_weak_sum_vector(fc)
        failure = _offdiagonal_residual_failure(fc, w)
        if failure is not None:
            witness = BlockWitness(
                0, 0, decomp.components[0].edge_ids, decomp.components[0].edge_ids, failure
            )
            return NotLinearizable(witness, decomp)
    else:
        t = cert.e[0] - cert.f[0]
        for i in range(1, m):
            if cert.e[i] - cert.f[i] != t:
                raise NotSymmetricOffDiagonal(
                    f"factored off-diagonal is asymmetric: entries (1,{i + 1}) and "
                    f"({i + 1},1) differ",
                    entry=(1, i + 1),
                )
        half_t = t / 2
        w = tuple(cert.e[i] - half_t for i in range(m))

    scale = 2 * (vertex_total - 2)
    c = tuple(fc.diag[i] + scale * w[i] for i in range(m))
    return Linearizable(c, decomp, {}, {0: WeakSumCertificate(w)}, {})


def _single_component_decomposition(
    g, kind: ComponentKind
) -> ComponentDecomposition:
    edge_ids = tuple(range(1, g.edge_count + 1))
    vertices = tuple(range(1, g.vertex_count + 1))
    comp = Component(edge_ids, vertices, kind)
    return ComponentDecomposition((comp,), {e: 0 for e in edge_ids})


def _fallback_weak_sum_vector(fc: FactoredCost) -> tuple[Rat, ...]:
    """Candidate w forced by entries (1,2), (1,3), (2,3) and row 1."""
    g12 = fc.off_diagonal(1, 2)
    g13 = fc.off_diagonal(1, 3)
    g23 = fc.off_diagonal(2, 3)
    w1 = (g12 + g13 - g23) / 2
    w = [w1, g12 - w1, g13 - w1]
    w.extend(fc.off_diagonal(1, j) - w1 for j in range(4, fc.m + 1))
    return tuple(w)


def _offdiagonal_residual_failure(
    fc: FactoredCost, w: Sequence[Rat]
) -> WeakSumFailure | None:
    """Exact O(m) test that a_i*b_j + c_i*d_j == w_i + w_j off the diagonal.

    The residual R = a b^T + c d^T - w 1^T - 1 w^T has rank at most 4, so
    its Frobenius norm is a 4x4 Gram contraction computable in O(m); the
    norm restricted off the diagonal is a sum of squares of rationals and
    vanishes exactly when the relation holds. Asymmetric off-diagonals are
    reported as NotSymmetricOffDiagonal before anything else.
    """
    m = fc.m
    one = Fraction(1)
    asym = _frobenius_offdiag(
        (fc.a, fc.c, fc.b, fc.d),
        (fc.b, fc.d, tuple(-x for x in fc.a), tuple(-x for x in fc.c)),
        m,
    )
    if asym != 0:
        i, j = _locate_nonzero(
            (fc.a, fc.c, fc.b, fc.d),
            (fc.b, fc.d, tuple(-x for x in fc.a), tuple(-x for x in fc.c)),
            m,
        )
        raise NotSymmetricOffDiagonal(
            f"factored off-diagonal is asymmetric: entries ({i},{j}) and ({j},{i}) differ",
            entry=(i, j),
        )
    neg_ones = (-one,) * m
    neg_w = tuple(-x for x in w)
    left = (fc.a, fc.c, tuple(w), (one,) * m)
    right = (fc.b, fc.d, neg_ones, neg_w)
    residual = _frobenius_offdiag(left, right, m)
    if residual == 0:
        return None
    i, j = _locate_nonzero(left, right, m)
    actual = fc.off_diagonal(i, j)
    anchor = 2 if i >= 3 else 3
    return WeakSumFailure((i, j), w[i - 1] + w[j - 1], actual, (1, i, anchor, j))


def _dot(x: Sequence, y: Sequence) -> Rat:
    return sum((xi * yi for xi, yi in zip(x, y)), Fraction(0))


def _frobenius_offdiag(
    left: tuple[tuple, ...], right: tuple[tuple, ...], m: int
) -> Rat:
    """Sum of squared off-diagonal entries of R = sum_k left_k right_k^T."""
    r = len(left)
    gram_left = [[_dot(left[s], left[t]) for t in range(r)] for s in range(r)]
    gram_right = [[_dot(right[s], right[t]) for t in range(r)] for s in range(r)]
    total = Fraction(0)
    for s in range(r):
        for t in range(r):
            total += gram_left[s][t] * gram_right[s][t]
    diag_sq = Fraction(0)
    for i in range(m):
        entry = sum((left[s][i] * right[s][i] for s in range(r)), Fraction(0))
        diag_sq += entry * entry
    return total - diag_sq


def _locate_nonzero(
    left: tuple[tuple, ...], right: tuple[tuple, ...], m: int
) -> tuple[int, int]:
    """Lexicographically first (i, j), i < j 1-based, where R(i,j) != 0.

    Row norms come from the 4x4 right Gram matrix in O(1) per row, so the
    full scan is O(m) plus one explicit row.
    """
    r = len(left)
    gram_right = [[_dot(right[s], right[t]) for t in range(r)] for s in range(r)]
    for i in range(m):
        ui = [left[s][i] for s in range(r)]
        row_norm = Fraction(0)
        for s in range(r):
            for t in range(r):
                row_norm += ui[s] * ui[t] * gram_right[s][t]
        diag_entry = sum((left[s][i] * right[s][i] for s in range(r)), Fraction(0))
        if row_norm - diag_entry * diag_entry == 0:
            continue
        for j in range(m):
            if j == i:
                continue
            entry = sum((left[s][i] * right[s][j] for s in range(r)), Fraction(0))
            if entry != 0:
                return (i + 1, j + 1) if i < j else (j + 1, i + 1)
    raise AssertionError("nonzero off-diagonal residual not found")
