"""Shared fixtures: the worked example, strategies, and oracle helpers."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from qmstlin import Instance, build_graph, cost_matrix
from qmstlin.generators import fig3_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# The 11x11 cost of the worked example: triangle, bridge, K4, pendant bridge.
FIG3_Q = [
    [1, 4, 8, 7, 4, 6, 3, 8, 5, 7, 9],
    [4, 2, 9, 2, 3, 5, 2, 7, 4, 6, 9],
    [8, 9, 3, 4, 5, 7, 4, 9, 6, 8, 0],
    [7, 2, 4, 8, 0, 9, 3, 6, 6, 3, 2],
    [4, 3, 5, 0, 5, 4, 5, 8, 3, 7, 3],
    [6, 5, 7, 9, 4, 2, 3, 6, 1, 5, 3],
    [3, 2, 4, 3, 5, 3, 1, 7, 2, 6, 4],
    [8, 7, 9, 6, 8, 6, 7, 5, 5, 9, 5],
    [5, 4, 6, 6, 3, 1, 2, 5, 8, 4, 6],
    [7, 6, 8, 3, 7, 5, 6, 9, 4, 7, 0],
    [9, 9, 0, 2, 3, 3, 4, 5, 6, 0, 2],
]

PAPER_C = (54, 41, 48, 12, 23, 42, 23, 67, 40, 45, 2)
PAPER_C_CORRECTED = (54, 41, 48, 12, 27, 42, 23, 67, 40, 45, 2)


@pytest.fixture(scope="session")
def fig3_instance() -> Instance:
    return Instance(fig3_graph(), cost_matrix(FIG3_Q), "fig3")


def small_rationals(max_abs: int = 8, max_den: int = 5):
    return st.fractions(
        min_value=-max_abs, max_value=max_abs, max_denominator=max_den
    )


@st.composite
def connected_graphs(draw, max_vertices: int = 7, max_extra: int = 4):
    """Random connected simple graph: a random tree plus a few extra edges."""
    n = draw(st.integers(min_value=2, max_value=max_vertices))
    edges = []
    for v in range(2, n + 1):
        u = draw(st.integers(min_value=1, max_value=v - 1))
        edges.append((u, v))
    present = set(edges)
    candidates = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if (u, v) not in present
    ]
    if candidates:
        extra = draw(
            st.lists(
                st.sampled_from(candidates),
                unique=True,
                max_size=min(max_extra, len(candidates)),
            )
        )
        edges = edges + list(extra)
    return build_graph(n, edges)


@st.composite
def symmetric_matrices(draw, size: int, max_abs: int = 8, max_den: int = 4):
    vals = small_rationals(max_abs, max_den)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            x = draw(vals)
            rows[i][j] = x
            rows[j][i] = x
    return rows
