"""Deterministic construction of benchmark and counterexample instances.

Families:

* ``weak-sum``: linearizable by construction on any graph in the
  characterized class; per-block certificates are drawn first, then a
  random skew-symmetric matrix and a random diagonal are added, neither of
  which can change the verdict.
* ``cycle-random``: arbitrary symmetric cost on a cycle (always
  linearizable).
* ``random-dense``: unconstrained symmetric cost on a named graph.
* ``k2n-counterexample``: the complete bipartite K_{2,n2} cost that is
  linearizable without being a weak sum matrix; ships the closed form
  c(i) = q(i,i) + 2/(n2+1) as claimed metadata.
* ``degree2-counterexample``: the biconnected degree-2-vertex cost whose
  spanning trees all cost the same; the claimed constant per-edge cost
  (n-3)/(n-1) is attached but deliberately not asserted (see claim note).
* ``subset-sum-mmstp``: the linked-triangles gadget reducing subset sum to
  the product-objective spanning tree problem.

Identical (family, params, seed) triples generate identical instances; all
random draws are integers in [-20, 20] keyed by (seed, family, field) so
adding fields never shifts existing values.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BadParams
from .graphs import (
    ComponentKind,
    Graph,
    build_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    decompose,
)
from .linearize import Instance
from .matrices import CostMatrix, cost_matrix
from .oracle import MmstpInstance
from .rationals import Rat

FAMILIES = (
    "weak-sum",
    "cycle-random",
    "random-dense",
    "k2n-counterexample",
    "degree2-counterexample",
    "subset-sum-mmstp",
)

RANDOM_LO, RANDOM_HI = -20, 20


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: dict
    seed: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParams(
                f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}",
                family=self.family,
            )


@dataclass(frozen=True)
class Generated:
    instance: Instance | MmstpInstance
    metadata: dict = field(default_factory=dict)


def _rng(seed: int, family: str, field_name: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}|{family}|{field_name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _draw(rng: random.Random) -> int:
    return rng.randint(RANDOM_LO, RANDOM_HI)


def k4_subdivided_graph() -> Graph:
    """K4 with one edge subdivided: the smallest handy biconnected graph
    with a degree-2 vertex that is neither a cycle, clique nor biclique."""
    return build_graph(
        5, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]
    )


def fig3_graph() -> Graph:
    """Triangle, bridge, K4, pendant bridge: 8 vertices, 11 edges."""
    return build_graph(
        8,
        [
            (1, 2), (2, 3), (1, 3),            # triangle, edges 1..3
            (3, 4),                              # bridge, edge 4
            (4, 5), (4, 6), (4, 7),              # K4 on {4,5,6,7}, edges 5..10
            (5, 6), (5, 7), (6, 7),
            (7, 8),                              # pendant bridge, edge 11
        ],
    )


_NAMED_GRAPHS = {
    "triangle": lambda: cycle_graph(3),
    "K4": lambda: complete_graph(4),
    "K5": lambda: complete_graph(5),
    "K6": lambda: complete_graph(6),
    "K33": lambda: complete_bipartite_graph(3, 3),
    "K34": lambda: complete_bipartite_graph(3, 4),
    "K23": lambda: complete_bipartite_graph(2, 3),
    "fig3": fig3_graph,
    "k4-subdivided": k4_subdivided_graph,
    "diamond": lambda: build_graph(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]),
    "tri-bridge-tri": lambda: build_graph(
        6, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6)]
    ),
    "c4-bridge-c5": lambda: build_graph(
        9,
        [(1, 2), (2, 3), (3, 4), (1, 4), (4, 5),
         (5, 6), (6, 7), (7, 8), (8, 9), (5, 9)],
    ),
    "k4-bridge-c4": lambda: build_graph(
        8,
        [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
         (4, 5), (5, 6), (6, 7), (7, 8), (5, 8)],
    ),
}

for _n in range(3, 11):
    _NAMED_GRAPHS[f"C{_n}"] = (lambda k: lambda: cycle_graph(k))(_n)


def named_graph(name: str) -> Graph:
    try:
        builder = _NAMED_GRAPHS[name]
    except KeyError:
        raise BadParams(
            f"unknown graph {name!r}; choose from {', '.join(sorted(_NAMED_GRAPHS))}",
            graph=name,
        ) from None
    return builder()


def graph_names() -> tuple[str, ...]:
    return tuple(sorted(_NAMED_GRAPHS))


def generate(spec: GenSpec) -> Generated:
    if spec.family == "weak-sum":
        return _gen_weak_sum(spec)
    if spec.family == "cycle-random":
        return _gen_cycle_random(spec)
    if spec.family == "random-dense":
        return _gen_random_dense(spec)
    if spec.family == "k2n-counterexample":
        return _gen_k2n(spec)
    if spec.family == "degree2-counterexample":
        return _gen_degree2(spec)
    if spec.family == "subset-sum-mmstp":
        return _gen_subset_sum(spec)
    raise BadParams(f"unknown family {spec.family!r}", family=spec.family)


def _graph_param(spec: GenSpec) -> Graph:
    name = spec.params.get("graph")
    if not isinstance(name, str):
        raise BadParams("params['graph'] must name a graph", params=spec.params)
    return named_graph(name)


def _gen_weak_sum(spec: GenSpec) -> Generated:
    g = _graph_param(spec)
    decomp = decompose(g)
    comps = decomp.components
    m = g.edge_count
    q = [[Fraction(0)] * m for _ in range(m)]
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            rng = _rng(spec.seed, spec.family, f"cross-{i}-{j}")
            row_part = [_draw(rng) for _ in comps[i].edge_ids]
            col_part = [_draw(rng) for _ in comps[j].edge_ids]
            for r, er in enumerate(comps[i].edge_ids):
                for c, ec in enumerate(comps[j].edge_ids):
                    val = Fraction(row_part[r] + col_part[c])
                    q[er - 1][ec - 1] = val
                    q[ec - 1][er - 1] = val
    for i, comp in enumerate(comps):
        rng = _rng(spec.seed, spec.family, f"diag-{i}")
        ids = comp.edge_ids
        if comp.kind is ComponentKind.CYCLE:
            for r, er in enumerate(ids):
                for c in range(r, len(ids)):
                    val = Fraction(_draw(rng))
                    ec = ids[c]
                    q[er - 1][ec - 1] = val
                    q[ec - 1][er - 1] = val
        elif comp.kind is ComponentKind.BRIDGE:
            q[ids[0] - 1][ids[0] - 1] = Fraction(_draw(rng))
        else:
            w = [_draw(rng) for _ in ids]
            for r, er in enumerate(ids):
                q[er - 1][er - 1] = Fraction(_draw(rng))
                for c in range(r + 1, len(ids)):
                    ec = ids[c]
                    val = Fraction(w[r] + w[c])
                    q[er - 1][ec - 1] = val
                    q[ec - 1][er - 1] = val
    skew_rng = _rng(spec.seed, spec.family, "skew")
    for r in range(m):
        for c in range(r + 1, m):
            s = Fraction(_draw(skew_rng))
            q[r][c] += s
            q[c][r] -= s
    shift_rng = _rng(spec.seed, spec.family, "diag-shift")
    for r in range(m):
        q[r][r] += _draw(shift_rng)
    name = f"weak-sum-{spec.params.get('graph')}-{spec.seed}"
    inst = Instance(g, cost_matrix(q), name)
    return Generated(inst, {"family": spec.family, "seed": spec.seed})


def _random_symmetric(g: Graph, spec: GenSpec) -> CostMatrix:
    m = g.edge_count
    rng = _rng(spec.seed, spec.family, "entries")
    q = [[Fraction(0)] * m for _ in range(m)]
    for r in range(m):
        for c in range(r, m):
            val = Fraction(_draw(rng))
            q[r][c] = val
            q[c][r] = val
    return cost_matrix(q)


def _gen_cycle_random(spec: GenSpec) -> Generated:
    n = spec.params.get("n")
    if not isinstance(n, int) or n < 3:
        raise BadParams("params['n'] must be an integer >= 3", params=spec.params)
    g = cycle_graph(n)
    inst = Instance(g, _random_symmetric(g, spec), f"cycle-random-{n}-{spec.seed}")
    return Generated(inst, {"family": spec.family, "seed": spec.seed})


def _gen_random_dense(spec: GenSpec) -> Generated:
    g = _graph_param(spec)
    name = f"random-dense-{spec.params.get('graph')}-{spec.seed}"
    inst = Instance(g, _random_symmetric(g, spec), name)
    return Generated(inst, {"family": spec.family, "seed": spec.seed})


def _gen_k2n(spec: GenSpec) -> Generated:
    n2 = spec.params.get("n2")
    if not isinstance(n2, int) or n2 < 3:
        raise BadParams("params['n2'] must be an integer >= 3", params=spec.params)
    g = complete_bipartite_graph(2, n2)
    m = g.edge_count
    diag = spec.params.get("diag", [0] * m)
    if len(diag) != m:
        raise BadParams(f"diag must have length {m}", params=spec.params)
    q = [[Fraction(0)] * m for _ in range(m)]
    for i in range(1, m + 1):
        q[i - 1][i - 1] = Fraction(diag[i - 1])
        for j in range(i + 1, m + 1):
            shared = set(g.endpoints(i)) & set(g.endpoints(j))
            if any(v > 2 for v in shared):
                q[i - 1][j - 1] = q[j - 1][i - 1] = Fraction(1)
    claimed = tuple(Fraction(diag[i]) + Fraction(2, n2 + 1) for i in range(m))
    inst = Instance(g, cost_matrix(q), f"k2{n2}-counterexample")
    return Generated(
        inst,
        {
            "family": spec.family,
            "seed": spec.seed,
            "claimed_c": claimed,
            "claim_note": "closed form c(i) = q(i,i) + 2/(n2+1); "
            "claimed, verify by enumeration",
        },
    )


def _gen_degree2(spec: GenSpec) -> Generated:
    base = spec.params.get("base", "k4-subdivided")
    g = named_graph(base) if isinstance(base, str) else base
    decomp = decompose(g)
    if len(decomp.components) != 1:
        raise BadParams(
            f"base graph must be biconnected, found {len(decomp.components)} components",
            base=base,
        )
    n = g.vertex_count
    if n < 4:
        raise BadParams(f"base graph needs at least 4 vertices, got {n}", base=base)
    degree = [0] * (n + 1)
    for u, v in g.edges:
        degree[u] += 1
        degree[v] += 1
    p = next((v for v in range(1, n + 1) if degree[v] == 2), None)
    if p is None:
        raise BadParams("base graph has no vertex of degree 2", base=base)
    pendant_edges = {
        eid for eid in range(1, g.edge_count + 1) if p in g.endpoints(eid)
    }
    m = g.edge_count
    inner = Fraction(1, 2 * (n - 3))
    q = [[Fraction(0)] * m for _ in range(m)]
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i == j:
                continue
            if i in pendant_edges and j in pendant_edges:
                q[i - 1][j - 1] = Fraction(1, 2)
            elif i not in pendant_edges and j not in pendant_edges:
                q[i - 1][j - 1] = inner
    claimed = (Fraction(n - 3, n - 1),) * m
    inst = Instance(g, cost_matrix(q), f"degree2-{base}")
    return Generated(
        inst,
        {
            "family": spec.family,
            "seed": spec.seed,
            "claimed_c": claimed,
            "claim_note": "constant per-edge cost (n-3)/(n-1) with n = |V|; "
            "claimed, verify by enumeration (known not to match the "
            "enumerated constant for |V| != 4)",
            "degree2_vertex": p,
        },
    )


def _gen_subset_sum(spec: GenSpec) -> Generated:
    values = spec.params.get("values")
    target = spec.params.get("target")
    if not values or not isinstance(values, (list, tuple)):
        raise BadParams("params['values'] must be a nonempty list", params=spec.params)
    vals = [Fraction(v) for v in values]
    if any(v < 0 for v in vals):
        raise BadParams("subset-sum values must be nonnegative", params=spec.params)
    if target is None:
        raise BadParams("params['target'] is required", params=spec.params)
    k = Fraction(target)
    n = len(vals)
    edges: list[tuple[int, int]] = []
    for i in range(n):
        p, qv, r = 3 * i + 1, 3 * i + 2, 3 * i + 3
        edges.extend([(p, qv), (p, r), (qv, r)])
    for i in range(n - 1):
        edges.append((3 * i + 1, 3 * (i + 1) + 1))
    g = build_graph(3 * n, edges)
    m = g.edge_count
    d1 = [Fraction(0)] * m
    for i in range(n):
        d1[3 * i] = vals[i]
    inst = MmstpInstance(g, tuple(d1), tuple(d1), -k, -k)
    return Generated(
        inst,
        {
            "family": spec.family,
            "seed": spec.seed,
            "values": tuple(vals),
            "target": k,
        },
    )


def perturbation_targets(g: Graph) -> list[tuple[int, int]]:
    """Symmetric off-diagonal cells whose +1 bump provably kills
    linearizability: cross-block cells between components with at least two
    edges each, and off-diagonal cells of clique/biclique diagonal blocks.
    """
    decomp = decompose(g)
    comps = decomp.components
    targets: list[tuple[int, int]] = []
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            if len(comps[i].edge_ids) >= 2 and len(comps[j].edge_ids) >= 2:
                targets.extend(
                    (er, ec)
                    for er in comps[i].edge_ids
                    for ec in comps[j].edge_ids
                )
    for comp in comps:
        if comp.kind in (ComponentKind.CLIQUE, ComponentKind.BICLIQUE3):
            ids = comp.edge_ids
            targets.extend(
                (ids[r], ids[c])
                for r in range(len(ids))
                for c in range(r + 1, len(ids))
            )
    return targets


def perturb_instance(inst: Instance, seed: int) -> Instance:
    """Bump one provably rigid symmetric pair of entries by 1.

    The result is never linearizable when the input graph offers a target;
    BadParams is raised when it does not (e.g. pure cycles, trees).
    """
    targets = perturbation_targets(inst.graph)
    if not targets:
        raise BadParams(
            "graph has no cell whose perturbation provably breaks linearizability"
        )
    rng = _rng(seed, "perturb", "cell")
    r, c = targets[rng.randrange(len(targets))]
    q = [list(row) for row in inst.dense().rows]
    q[r - 1][c - 1] += 1
    q[c - 1][r - 1] += 1
    name = f"{inst.name}-perturbed-{seed}" if inst.name else f"perturbed-{seed}"
    return Instance(inst.graph, cost_matrix(q), name)
