from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmstlin import (
    CounterexampleTree,
    DimensionMismatch,
    Instance,
    Linearizable,
    NotLinearizable,
    UnknownOutsideClass,
    ValidationError,
    check_and_linearize,
    complete_bipartite_graph,
    complete_graph,
    cost_matrix,
    cycle_graph,
    enumerate_spanning_trees,
    linear_cost,
    linearize_cycle_block,
    oracle_linearize,
    qmstp_cost,
    solve_qmstp,
    symmetrize,
    verify_linearization,
)
from qmstlin.factored import factored_cost
from qmstlin.generators import (
    GenSpec,
    fig3_graph,
    generate,
    named_graph,
    perturb_instance,
)

from .conftest import FIG3_Q, small_rationals, symmetric_matrices


def weak_sum_instance(graph_name: str, seed: int) -> Instance:
    return generate(GenSpec("weak-sum", {"graph": graph_name}, seed)).instance


class TestCycleBlock:
    def test_all_ones_triangle(self):
        c = linearize_cycle_block([[1, 1, 1]] * 3)
        assert c == (2, 2, 2)
        # each two-edge tree costs 4 both ways
        inst = Instance(cycle_graph(3), cost_matrix([[1, 1, 1]] * 3))
        assert verify_linearization(inst, c) is None

    def test_zero_block(self):
        assert linearize_cycle_block([[0] * 4] * 4) == (0, 0, 0, 0)

    def test_worked_example_triangle_block(self):
        block = [row[0:3] for row in FIG3_Q[0:3]]
        c = linearize_cycle_block(block)
        inst = Instance(cycle_graph(3), cost_matrix(block))
        assert verify_linearization(inst, c) is None

    @given(st.integers(3, 7), st.data())
    @settings(max_examples=30, deadline=None)
    def test_cycle_formula_verifies_exhaustively(self, n, data):
        rows = data.draw(symmetric_matrices(size=n))
        c = linearize_cycle_block(rows)
        inst = Instance(cycle_graph(n), cost_matrix(rows))
        assert verify_linearization(inst, c) is None

    def test_asymmetric_block_also_linearizes_its_cycle(self):
        # the formula handles arbitrary, not only symmetric, blocks
        rows = [[1, 7, -2], [0, 3, 5], [4, -6, 2]]
        c = linearize_cycle_block(rows)
        inst = Instance(cycle_graph(3), cost_matrix(rows))
        assert verify_linearization(inst, c) is None


class TestCheckAndLinearize:
    def test_worked_example(self, fig3_instance):
        verdict = check_and_linearize(fig3_instance)
        assert isinstance(verdict, Linearizable)
        assert verify_linearization(fig3_instance, verdict.c) is None
        assert verdict.diagonal_certificates[2].w == (3, 1, 2, 5, 0, 4)

    def test_weak_sum_k4_by_construction(self):
        w = [1, 2, 3, 4, 5, 6]
        diag = [9, -1, 4, 0, 2, 7]
        rows = [
            [w[i] + w[j] if i != j else diag[i] for j in range(6)]
            for i in range(6)
        ]
        inst = Instance(complete_graph(4), cost_matrix(rows))
        verdict = check_and_linearize(inst)
        assert isinstance(verdict, Linearizable)
        assert verify_linearization(inst, verdict.c) is None

    def test_perturbed_k4_rejected_and_oracle_agrees(self):
        w = [1, 2, 3, 4, 5, 6]
        rows = [
            [w[i] + w[j] if i != j else 0 for j in range(6)] for i in range(6)
        ]
        rows[0][1] += 1
        rows[1][0] += 1
        inst = Instance(complete_graph(4), cost_matrix(rows))
        verdict = check_and_linearize(inst)
        assert isinstance(verdict, NotLinearizable)
        assert verdict.witness.failure is not None
        assert oracle_linearize(inst) is None

    def test_k23_unknown_outside_class(self):
        gen = generate(GenSpec("k2n-counterexample", {"n2": 3}, 0))
        verdict = check_and_linearize(gen.instance)
        assert isinstance(verdict, UnknownOutsideClass)
        assert verdict.other_components == (0,)

    def test_other_component_sufficient_condition_still_linearizes(self):
        # weak-sum cost on K_{2,3}: outside the characterized class, but the
        # sufficient condition applies and must yield a verified vector
        g = complete_bipartite_graph(2, 3)
        w = [1, -2, 3, 0, 2, -1]
        rows = [
            [w[i] + w[j] if i != j else 5 for j in range(6)] for i in range(6)
        ]
        inst = Instance(g, cost_matrix(rows))
        verdict = check_and_linearize(inst)
        assert isinstance(verdict, Linearizable)
        assert verify_linearization(inst, verdict.c) is None

    def test_factored_cost_rejected(self):
        fc = factored_cost([0] * 6, [0] * 6, [0] * 6, [0] * 6, [1] * 6)
        inst = Instance(complete_graph(4), fc)
        with pytest.raises(ValidationError):
            check_and_linearize(inst)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Instance(complete_graph(4), cost_matrix([[0] * 5] * 5))

    @given(st.sampled_from(["K4", "K5", "K33", "fig3", "c4-bridge-c5",
                            "tri-bridge-tri", "k4-bridge-c4", "C5"]),
           st.integers(0, 10 ** 6))
    @settings(max_examples=40, deadline=None)
    def test_soundness_on_weak_sum_family(self, name, seed):
        inst = weak_sum_instance(name, seed)
        verdict = check_and_linearize(inst)
        assert isinstance(verdict, Linearizable)
        assert verify_linearization(inst, verdict.c) is None

    @given(st.sampled_from(["K4", "K5", "K33", "fig3", "k4-bridge-c4"]),
           st.integers(0, 10 ** 6))
    @settings(max_examples=30, deadline=None)
    def test_completeness_on_perturbed_family(self, name, seed):
        inst = perturb_instance(weak_sum_instance(name, seed), seed)
        verdict = check_and_linearize(inst)
        assert isinstance(verdict, NotLinearizable)
        assert oracle_linearize(inst) is None


class TestVerify:
    def test_worked_example_own_vector(self, fig3_instance):
        verdict = check_and_linearize(fig3_instance)
        assert verify_linearization(fig3_instance, verdict.c) is None

    def test_bumped_entry_caught(self, fig3_instance):
        verdict = check_and_linearize(fig3_instance)
        c = list(verdict.c)
        c[0] += 1
        counter = verify_linearization(fig3_instance, c)
        assert isinstance(counter, CounterexampleTree)
        assert 1 in counter.tree.edge_ids
        assert counter.linear_cost - counter.quadratic_cost == 1

    def test_skew_symmetric_zero_vector_passes(self):
        rows = [[0, 3, -5], [-3, 0, 2], [5, -2, 0]]
        inst = Instance(cycle_graph(3), cost_matrix(rows))
        assert verify_linearization(inst, [0, 0, 0]) is None

    def test_length_mismatch(self, fig3_instance):
        with pytest.raises(DimensionMismatch):
            verify_linearization(fig3_instance, [0] * 10)


class TestSolve:
    def test_worked_example_two_paths_agree(self, fig3_instance):
        from qmstlin import brute_force_optimum

        result = solve_qmstp(fig3_instance)
        assert result.method == "linearized-mst"
        _tree, cost = brute_force_optimum(fig3_instance)
        assert result.cost == cost

    def test_cycle_solved_by_linearization(self):
        rows = [[2, 5, 1, 0, 3],
                [5, 1, 4, 2, 2],
                [1, 4, 0, 6, 1],
                [0, 2, 6, 3, 7],
                [3, 2, 1, 7, 4]]
        rows = [[Fraction(x) for x in row] for row in rows]
        sym = [[(rows[i][j] + rows[j][i]) / 2 for j in range(5)] for i in range(5)]
        inst = Instance(cycle_graph(5), cost_matrix(sym))
        result = solve_qmstp(inst)
        assert result.method == "linearized-mst"
        from qmstlin import brute_force_optimum

        _tree, cost = brute_force_optimum(inst)
        assert result.cost == cost

    def test_triangle_zero_cost(self):
        inst = Instance(cycle_graph(3), cost_matrix([[0] * 3] * 3))
        result = solve_qmstp(inst)
        assert result.cost == 0

    def test_brute_force_path_on_non_linearizable(self):
        w = [1, 2, 3, 4, 5, 6]
        rows = [
            [w[i] + w[j] if i != j else 0 for j in range(6)] for i in range(6)
        ]
        rows[2][3] += 1
        rows[3][2] += 1
        inst = Instance(complete_graph(4), cost_matrix(rows))
        result = solve_qmstp(inst)
        assert result.method == "brute-force"
        from qmstlin import brute_force_optimum

        _tree, cost = brute_force_optimum(inst)
        assert result.cost == cost


class TestObservations:
    """Small-trial versions of the observation suite; the acceptance module
    runs the full 100-trial versions."""

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=15, deadline=None)
    def test_linearity(self, seed):
        inst1 = weak_sum_instance("fig3", seed)
        inst2 = weak_sum_instance("fig3", seed + 1)
        c1 = check_and_linearize(inst1).c
        c2 = check_and_linearize(inst2).c
        alpha, beta = Fraction(3, 2), Fraction(-2, 5)
        q1, q2 = inst1.cost.rows, inst2.cost.rows
        mixed = [
            [alpha * q1[i][j] + beta * q2[i][j] for j in range(11)]
            for i in range(11)
        ]
        mixed_c = [alpha * x + beta * y for x, y in zip(c1, c2)]
        inst = Instance(inst1.graph, cost_matrix(mixed))
        assert verify_linearization(inst, mixed_c) is None

    @given(st.integers(0, 10 ** 6), st.data())
    @settings(max_examples=15, deadline=None)
    def test_skew_and_diagonal_shift_invariance(self, seed, data):
        inst = weak_sum_instance("K4", seed)
        m = inst.graph.edge_count
        skew = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                v = data.draw(small_rationals(), label=f"s{i}{j}")
                skew[i][j] = v
                skew[j][i] = -v
        diag = [data.draw(small_rationals(), label=f"d{i}") for i in range(m)]
        rows = inst.cost.rows
        shifted = [
            [
                rows[i][j] + skew[i][j] + (diag[i] if i == j else 0)
                for j in range(m)
            ]
            for i in range(m)
        ]
        shifted_inst = Instance(inst.graph, cost_matrix(shifted))
        v1 = check_and_linearize(inst)
        v2 = check_and_linearize(shifted_inst)
        assert isinstance(v1, Linearizable) and isinstance(v2, Linearizable)
        assert verify_linearization(inst, v1.c) is None
        assert verify_linearization(shifted_inst, v2.c) is None
        # off-diagonal shifts cancel; C changes only through the diagonal
        assert all(
            (v2.c[i] - v1.c[i]) == diag[i] for i in range(m)
        )

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=15, deadline=None)
    def test_symmetrization_invariance(self, seed):
        inst = weak_sum_instance("K4", seed)
        rows = inst.cost.rows
        m = len(rows)
        # make it asymmetric by moving mass across the diagonal
        skewed = [
            [rows[i][j] + (3 if i < j else -3 if i > j else 0) for j in range(m)]
            for i in range(m)
        ]
        raw = Instance(inst.graph, cost_matrix(skewed))
        sym = Instance(inst.graph, symmetrize(raw.cost))
        v_raw = check_and_linearize(raw)
        v_sym = check_and_linearize(sym)
        assert type(v_raw) is type(v_sym)
        assert isinstance(v_raw, Linearizable)
        assert verify_linearization(raw, v_sym.c) is None
        assert verify_linearization(sym, v_raw.c) is None
