from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmstlin import (
    ComponentKind,
    Disconnected,
    DuplicateEdge,
    IndexOutOfRange,
    LoopEdge,
    TooManyTrees,
    build_graph,
    classify_whole_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    decompose,
    enumerate_spanning_trees,
    minimum_spanning_tree,
    spanning_tree_count,
)
from qmstlin.generators import fig3_graph

from .conftest import connected_graphs, small_rationals


def _two_color(g, comp):
    adj = {v: [] for v in comp.vertices}
    for e in comp.edge_ids:
        u, v = g.endpoints(e)
        adj[u].append(v)
        adj[v].append(u)
    color = {comp.vertices[0]: 0}
    stack = [comp.vertices[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in color:
                color[w] = 1 - color[v]
                stack.append(w)
            elif color[w] == color[v]:
                return None
    return (
        [v for v in comp.vertices if color[v] == 0],
        [v for v in comp.vertices if color[v] == 1],
    )


class TestBuildGraph:
    def test_triangle(self):
        g = build_graph(3, [(1, 2), (2, 3), (1, 3)])
        assert g.edge_count == 3
        assert g.endpoints(2) == (2, 3)

    def test_worked_example_has_eleven_edges(self):
        assert fig3_graph().edge_count == 11
        assert fig3_graph().vertex_count == 8

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdge):
            build_graph(3, [(1, 2), (1, 2), (2, 3)])
        with pytest.raises(DuplicateEdge):
            build_graph(3, [(1, 2), (2, 1), (2, 3)])

    def test_loop_edge(self):
        with pytest.raises(LoopEdge):
            build_graph(3, [(1, 1), (2, 3)])

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            build_graph(3, [(1, 4), (2, 3)])

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            build_graph(4, [(1, 2), (3, 4)])


class TestDecompose:
    def test_worked_example_components(self):
        decomp = decompose(fig3_graph())
        kinds = [(c.edge_ids, c.kind) for c in decomp.components]
        assert kinds == [
            ((1, 2, 3), ComponentKind.CYCLE),
            ((4,), ComponentKind.BRIDGE),
            ((5, 6, 7, 8, 9, 10), ComponentKind.CLIQUE),
            ((11,), ComponentKind.BRIDGE),
        ]

    def test_k33_is_biclique(self):
        decomp = decompose(complete_bipartite_graph(3, 3))
        assert len(decomp.components) == 1
        assert decomp.components[0].kind is ComponentKind.BICLIQUE3

    def test_c4_is_cycle_not_biclique(self):
        decomp = decompose(cycle_graph(4))
        assert [c.kind for c in decomp.components] == [ComponentKind.CYCLE]

    def test_triangle_is_cycle_by_precedence(self):
        decomp = decompose(cycle_graph(3))
        assert decomp.components[0].kind is ComponentKind.CYCLE

    def test_k4_is_clique(self):
        decomp = decompose(complete_graph(4))
        assert decomp.components[0].kind is ComponentKind.CLIQUE

    def test_k23_is_other(self):
        decomp = decompose(complete_bipartite_graph(2, 3))
        assert decomp.components[0].kind is ComponentKind.OTHER

    @given(connected_graphs())
    @settings(max_examples=60, deadline=None)
    def test_edge_partition(self, g):
        decomp = decompose(g)
        seen = [e for comp in decomp.components for e in comp.edge_ids]
        assert sorted(seen) == list(range(1, g.edge_count + 1))
        for comp_idx, comp in enumerate(decomp.components):
            for e in comp.edge_ids:
                assert decomp.edge_to_component[e] == comp_idx

    @given(connected_graphs())
    @settings(max_examples=60, deadline=None)
    def test_classification_soundness(self, g):
        decomp = decompose(g)
        for comp in decomp.components:
            k = len(comp.vertices)
            if comp.kind is ComponentKind.BRIDGE:
                assert len(comp.edge_ids) == 1
            elif comp.kind is ComponentKind.CYCLE:
                assert len(comp.edge_ids) == k
            elif comp.kind is ComponentKind.CLIQUE:
                assert len(comp.edge_ids) == k * (k - 1) // 2
            elif comp.kind is ComponentKind.BICLIQUE3:
                sides = _two_color(g, comp)
                assert sides is not None
                s1, s2 = sides
                assert min(len(s1), len(s2)) >= 3
                assert len(comp.edge_ids) == len(s1) * len(s2)


class TestWholeGraphClass:
    def test_complete(self):
        assert classify_whole_graph(complete_graph(5)) == ("clique", (5,))

    def test_biclique(self):
        assert classify_whole_graph(complete_bipartite_graph(3, 4)) == (
            "biclique",
            (3, 4),
        )

    def test_c4_reads_as_k22(self):
        assert classify_whole_graph(cycle_graph(4)) == ("biclique", (2, 2))

    def test_fig3_is_neither(self):
        assert classify_whole_graph(fig3_graph()) is None


class TestEnumeration:
    def test_triangle_trees_in_lex_order(self):
        trees = [t.sorted_ids for t in enumerate_spanning_trees(cycle_graph(3))]
        assert trees == [(1, 2), (1, 3), (2, 3)]

    def test_k4_cayley_count(self):
        assert sum(1 for _ in enumerate_spanning_trees(complete_graph(4))) == 16
        assert spanning_tree_count(complete_graph(4)) == 16

    def test_worked_example_48_trees(self):
        trees = list(enumerate_spanning_trees(fig3_graph()))
        assert len(trees) == 48
        assert spanning_tree_count(fig3_graph()) == 48

    def test_cap_enforced_before_streaming(self):
        with pytest.raises(TooManyTrees) as exc:
            enumerate_spanning_trees(cycle_graph(3), cap=2)
        assert exc.value.count == 3
        assert exc.value.cap == 2

    @given(connected_graphs(max_vertices=6, max_extra=4))
    @settings(max_examples=40, deadline=None)
    def test_enumeration_matches_kirchhoff(self, g):
        trees = [t.sorted_ids for t in enumerate_spanning_trees(g)]
        assert len(trees) == spanning_tree_count(g)
        assert len(set(trees)) == len(trees)
        assert trees == sorted(trees)
        n = g.vertex_count
        assert all(len(t) == n - 1 for t in trees)


class TestMinimumSpanningTree:
    def test_triangle(self):
        tree, weight = minimum_spanning_tree(cycle_graph(3), [1, 2, 3])
        assert tree.sorted_ids == (1, 2)
        assert weight == 3

    def test_all_zero_weights(self):
        tree, weight = minimum_spanning_tree(complete_graph(4), [0] * 6)
        assert weight == 0
        assert len(tree.edge_ids) == 3

    @given(connected_graphs(max_vertices=6, max_extra=4), st.data())
    @settings(max_examples=40, deadline=None)
    def test_mst_matches_enumeration(self, g, data):
        weights = [
            data.draw(small_rationals(), label=f"w{e}")
            for e in range(g.edge_count)
        ]
        tree, weight = minimum_spanning_tree(g, weights)
        assert weight == sum(
            (Fraction(weights[e - 1]) for e in tree.edge_ids), Fraction(0)
        )
        best = min(
            sum((Fraction(weights[e - 1]) for e in t.edge_ids), Fraction(0))
            for t in enumerate_spanning_trees(g)
        )
        assert weight == best
