"""Graph representation, biconnected decomposition, spanning-tree machinery.

Vertices are 1..n and edges carry 1-based ids fixed by input order; every
cost vector and matrix in the package is indexed by these edge ids. All
types are immutable after construction.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    Disconnected,
    DuplicateEdge,
    IndexOutOfRange,
    LoopEdge,
    TooManyTrees,
    ValidationError,
)
from .rationals import Rat, RatLike

#: Default ceiling on exhaustive spanning-tree enumeration.
DEFAULT_TREE_CAP = 1_000_000


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph with 1-based edge indexing."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        return self.edges[edge_id - 1]

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Adjacency lists indexed by vertex: entries are (neighbor, edge_id)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count + 1)]
        for eid, (u, v) in enumerate(self.edges, start=1):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return adj


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree given by its set of edge ids (cardinality n-1)."""

    edge_ids: frozenset[int]

    @property
    def sorted_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge_ids))

    def __contains__(self, edge_id: int) -> bool:
        return edge_id in self.edge_ids


class ComponentKind(Enum):
    BRIDGE = "bridge"
    CYCLE = "cycle"
    CLIQUE = "clique"
    BICLIQUE3 = "biclique3"
    OTHER = "other"


@dataclass(frozen=True)
class Component:
    """One biconnected component: its edges, vertices and class tag."""

    edge_ids: tuple[int, ...]
    vertices: tuple[int, ...]
    kind: ComponentKind

    @property
    def tree_edge_count(self) -> int:
        """Edges every spanning tree of the whole graph takes from here."""
        return len(self.vertices) - 1


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Component, ...]
    edge_to_component: dict[int, int]

    def component_of(self, edge_id: int) -> int:
        return self.edge_to_component[edge_id]


def build_graph(n: int, edges: Sequence[tuple[int, int]]) -> Graph:
    """Validate and build a Graph; edge i of the input gets id i.

    Raises LoopEdge, DuplicateEdge, IndexOutOfRange or Disconnected with the
    offending edge or vertex named.
    """
    if n < 2:
        raise ValidationError(f"vertex count must be at least 2, got {n}", n=n)
    seen: set[tuple[int, int]] = set()
    clean: list[tuple[int, int]] = []
    for idx, pair in enumerate(edges, start=1):
        u, v = pair
        if not (isinstance(u, int) and isinstance(v, int)):
            raise ValidationError(f"edge {idx}: endpoints must be integers", edge=idx)
        for w in (u, v):
            if not 1 <= w <= n:
                raise IndexOutOfRange(
                    f"edge {idx}: vertex {w} outside 1..{n}", edge=idx, vertex=w
                )
        if u == v:
            raise LoopEdge(f"edge {idx}: self-loop at vertex {u}", edge=idx, vertex=u)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(
                f"edge {idx}: duplicate of pair ({key[0]},{key[1]})", edge=idx, pair=key
            )
        seen.add(key)
        clean.append((u, v))
    g = Graph(n, tuple(clean))
    missing = _unreachable_vertex(g)
    if missing is not None:
        raise Disconnected(
            f"vertex {missing} not reachable from vertex 1", vertex=missing
        )
    return g


def _unreachable_vertex(g: Graph) -> int | None:
    dsu = _RollbackDSU(g.vertex_count)
    for u, v in g.edges:
        dsu.union(u, v)
    root = dsu.find(1)
    for v in range(2, g.vertex_count + 1):
        if dsu.find(v) != root:
            return v
    return None


def complete_graph(n: int) -> Graph:
    """K_n, edges in lexicographic vertex order. Trusted constructor."""
    if n < 2:
        raise ValidationError(f"complete graph needs n >= 2, got {n}", n=n)
    edges = tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1))
    return Graph(n, edges)


def complete_bipartite_graph(n1: int, n2: int) -> Graph:
    """K_{n1,n2}; side one is vertices 1..n1. Trusted constructor."""
    if n1 < 1 or n2 < 1 or n1 + n2 < 2:
        raise ValidationError(f"bad bipartite sizes ({n1},{n2})", n1=n1, n2=n2)
    edges = tuple(
        (u, n1 + w) for u in range(1, n1 + 1) for w in range(1, n2 + 1)
    )
    return Graph(n1 + n2, edges)


def cycle_graph(n: int) -> Graph:
    """C_n with edge i joining vertices i and i+1 (edge n closes the cycle)."""
    if n < 3:
        raise ValidationError(f"cycle needs n >= 3, got {n}", n=n)
    edges = tuple((i, i % n + 1) for i in range(1, n + 1))
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Biconnected decomposition and classification


def decompose(g: Graph) -> ComponentDecomposition:
    """Split ``g`` into biconnected components and classify each one.

    Classification precedence: single edge is a Bridge; all vertices of
    degree 2 inside the component is a Cycle (so a triangle is a Cycle, not
    a Clique); k vertices with k(k-1)/2 edges is a Clique; complete
    bipartite with both sides >= 3 is Biclique3; anything else is Other.
    Components are ordered by their smallest edge id.
    """
    raw = _biconnected_edge_sets(g)
    raw.sort(key=min)
    components = []
    edge_to_component: dict[int, int] = {}
    for idx, edge_ids in enumerate(raw):
        vertices = sorted({w for eid in edge_ids for w in g.endpoints(eid)})
        kind = _classify_component(g, edge_ids, vertices)
        components.append(Component(tuple(sorted(edge_ids)), tuple(vertices), kind))
        for eid in edge_ids:
            edge_to_component[eid] = idx
    return ComponentDecomposition(tuple(components), edge_to_component)


def _biconnected_edge_sets(g: Graph) -> list[list[int]]:
    """Iterative Hopcroft-Tarjan articulation-point decomposition."""
    adj = g.adjacency()
    n = g.vertex_count
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    estack: list[int] = []
    comps: list[list[int]] = []
    root = 1
    disc[root] = low[root] = 1
    clock = 2
    stack: list[tuple[int, int, Iterator[tuple[int, int]]]] = [
        (root, 0, iter(adj[root]))
    ]
    while stack:
        v, parent_edge, it = stack[-1]
        descended = False
        for w, eid in it:
            if eid == parent_edge:
                continue
            if disc[w] == 0:
                estack.append(eid)
                disc[w] = low[w] = clock
                clock += 1
                stack.append((w, eid, iter(adj[w])))
                descended = True
                break
            if disc[w] < disc[v]:
                # Back edge to an ancestor: recorded once, from the deep end.
                estack.append(eid)
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if descended:
            continue
        stack.pop()
        if stack:
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= disc[u]:
                comp = []
                while True:
                    e = estack.pop()
                    comp.append(e)
                    if e == parent_edge:
                        break
                comps.append(comp)
    return comps


def _classify_component(
    g: Graph, edge_ids: list[int], vertices: list[int]
) -> ComponentKind:
    if len(edge_ids) == 1:
        return ComponentKind.BRIDGE
    degree = {v: 0 for v in vertices}
    for eid in edge_ids:
        u, v = g.endpoints(eid)
        degree[u] += 1
        degree[v] += 1
    if all(d == 2 for d in degree.values()):
        return ComponentKind.CYCLE
    k = len(vertices)
    if len(edge_ids) == k * (k - 1) // 2:
        return ComponentKind.CLIQUE
    sides = _bipartition(g, edge_ids, vertices)
    if sides is not None:
        s1, s2 = sides
        if len(edge_ids) == len(s1) * len(s2) and min(len(s1), len(s2)) >= 3:
            return ComponentKind.BICLIQUE3
    return ComponentKind.OTHER


def _bipartition(
    g: Graph, edge_ids: Sequence[int], vertices: Sequence[int]
) -> tuple[list[int], list[int]] | None:
    """2-color the subgraph induced by ``edge_ids``; None if odd cycle found."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for eid in edge_ids:
        u, v = g.endpoints(eid)
        adj[u].append(v)
        adj[v].append(u)
    color: dict[int, int] = {}
    for start in vertices:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    side0 = [v for v in vertices if color[v] == 0]
    side1 = [v for v in vertices if color[v] == 1]
    return side0, side1


def classify_whole_graph(g: Graph) -> tuple[str, tuple[int, ...]] | None:
    """Cheap whole-graph class test used by the factored fast path.

    Returns ("clique", (n,)) when the graph is complete, ("biclique",
    (s1, s2)) when it is complete bipartite, else None. Runs in O(m)
    without the articulation-point machinery, so it stays usable at
    millions of edges.
    """
    n, m = g.vertex_count, g.edge_count
    if m == n * (n - 1) // 2:
        return ("clique", (n,))
    sides = _bipartition(g, range(1, m + 1), range(1, n + 1))
    if sides is not None:
        s1, s2 = sides
        if m == len(s1) * len(s2):
            return ("biclique", (len(s1), len(s2)))
    return None


# ---------------------------------------------------------------------------
# Spanning trees: count, enumerate, minimum


def spanning_tree_count(g: Graph) -> int:
    """Number of spanning trees by the Kirchhoff determinant, exactly."""
    n = g.vertex_count
    size = n - 1
    lap = [[Fraction(0)] * size for _ in range(size)]
    for u, v in g.edges:
        if u != n:
            lap[u - 1][u - 1] += 1
        if v != n:
            lap[v - 1][v - 1] += 1
        if u != n and v != n:
            lap[u - 1][v - 1] -= 1
            lap[v - 1][u - 1] -= 1
    det = _determinant(lap)
    assert det.denominator == 1
    return int(det)


def _determinant(matrix: list[list[Fraction]]) -> Fraction:
    size = len(matrix)
    if size == 0:
        return Fraction(1)
    a = [row[:] for row in matrix]
    sign = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        for r in range(col + 1, size):
            if a[r][col] != 0:
                factor = a[r][col] / a[col][col]
                for c in range(col, size):
                    a[r][c] -= factor * a[col][c]
    det = Fraction(sign)
    for i in range(size):
        det *= a[i][i]
    return det


class _RollbackDSU:
    """Union-find with rollback (union by size, no path compression)."""

    def __init__(self, n: int):
        self.parent = list(range(n + 1))
        self.size = [1] * (n + 1)
        self.trail: list[tuple[int, int]] = []
        self.components = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.components -= 1
        self.trail.append((rx, ry))
        return True

    def mark(self) -> int:
        return len(self.trail)

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            rx, ry = self.trail.pop()
            self.parent[ry] = ry
            self.size[rx] -= self.size[ry]
            self.components += 1


def enumerate_spanning_trees(
    g: Graph, cap: int = DEFAULT_TREE_CAP
) -> Iterator[SpanningTree]:
    """Stream every spanning tree exactly once, in lexicographic order of
    the sorted edge-id tuples.

    The count is established first via the Kirchhoff determinant;
    TooManyTrees is raised before any tree is produced when it exceeds
    ``cap``.
    """
    if cap < 1:
        raise ValidationError(f"cap must be >= 1, got {cap}", cap=cap)
    count = spanning_tree_count(g)
    if count > cap:
        raise TooManyTrees(count, cap)
    return _tree_iter(g)


def _tree_iter(g: Graph) -> Iterator[SpanningTree]:
    n, m = g.vertex_count, g.edge_count
    need = n - 1
    dsu = _RollbackDSU(n)
    chosen: list[int] = []

    def feasible_from(pos: int) -> bool:
        # Can the chosen edges plus edges pos..m still connect everything?
        mark = dsu.mark()
        for eid in range(pos, m + 1):
            if dsu.components == 1:
                break
            dsu.union(*g.endpoints(eid))
        ok = dsu.components == 1
        dsu.rollback(mark)
        return ok

    def rec(pos: int) -> Iterator[SpanningTree]:
        if len(chosen) == need:
            yield SpanningTree(frozenset(chosen))
            return
        if pos > m:
            return
        u, v = g.endpoints(pos)
        if dsu.find(u) != dsu.find(v):
            mark = dsu.mark()
            dsu.union(u, v)
            chosen.append(pos)
            yield from rec(pos + 1)
            chosen.pop()
            dsu.rollback(mark)
        if feasible_from(pos + 1):
            yield from rec(pos + 1)

    return rec(1)


def minimum_spanning_tree(
    g: Graph, weights: Sequence[RatLike]
) -> tuple[SpanningTree, Rat]:
    """Kruskal over exact weights; ties broken toward smaller edge ids."""
    if len(weights) != g.edge_count:
        raise ValidationError(
            f"weights length {len(weights)} != edge count {g.edge_count}"
        )
    order = sorted(range(1, g.edge_count + 1), key=lambda e: (weights[e - 1], e))
    dsu = _RollbackDSU(g.vertex_count)
    picked: list[int] = []
    total = Fraction(0)
    for eid in order:
        u, v = g.endpoints(eid)
        if dsu.union(u, v):
            picked.append(eid)
            total += weights[eid - 1]
            if len(picked) == g.vertex_count - 1:
                break
    return SpanningTree(frozenset(picked)), total
