"""Linearizability of quadratic spanning-tree costs.

Decide whether a quadratic edge-pair cost on a graph collapses to an
ordinary linear spanning-tree cost, produce the linear vector and the
block certificates when it does, and certify every verdict at desk scale
with an exhaustive spanning-tree oracle. All arithmetic is exact rational.
"""

from .errors import (
    BadParams,
    DimensionMismatch,
    Disconnected,
    DuplicateEdge,
    IndexOutOfRange,
    LengthMismatch,
    LoopEdge,
    NotSymmetric,
    NotSymmetricOffDiagonal,
    ParseError,
    QmstError,
    TooLarge,
    TooManyTrees,
    ValidationError,
    WrongGraphClass,
)
from .factored import (
    DENSE_CAP,
    AffineCase,
    ConstantCase,
    FactoredCost,
    NotSum,
    factored_cost,
    linearize_factored,
    materialize,
    recognize_factored_sum,
)
from .files import (
    Loaded,
    parse_cost_vector,
    parse_instance,
    write_cost_vector,
    write_instance,
)
from .generators import (
    FAMILIES,
    Generated,
    GenSpec,
    generate,
    graph_names,
    named_graph,
    perturb_instance,
)
from .graphs import (
    DEFAULT_TREE_CAP,
    Component,
    ComponentDecomposition,
    ComponentKind,
    Graph,
    SpanningTree,
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
from .linearize import (
    BlockWitness,
    CounterexampleTree,
    Instance,
    Linearizable,
    NotLinearizable,
    SolveResult,
    UnknownOutsideClass,
    Verdict,
    check_and_linearize,
    linearize_cycle_block,
    solve_qmstp,
    verify_linearization,
)
from .matrices import (
    CostMatrix,
    SumCertificate,
    SumFailure,
    WeakSumCertificate,
    WeakSumFailure,
    cost_matrix,
    recognize_sum,
    recognize_weak_sum,
    row_tree_constants,
    symmetrize,
)
from .oracle import (
    MmstpInstance,
    brute_force_optimum,
    linear_cost,
    mmstp_brute_force,
    mmstp_objective,
    oracle_linearize,
    qmstp_cost,
)
from .rationals import Rat, RatLike, format_rat, rat_to_json, to_rat

__version__ = "0.1.0"
