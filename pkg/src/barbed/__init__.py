"""Persistence barcodes of weighted graphs under path-based distances."""

from .distances import (
    DistanceMatrix,
    MetricAxiomReport,
    PartialOrder,
    compare_pointwise,
    distance_from_paths,
    edge_distance,
    metric_axioms,
    weight_distance,
)
from .errors import (
    BarbedError,
    CapExceededError,
    DisconnectedGraphError,
    GraphParseError,
    GraphValidationError,
    InconsistentPathsError,
)
from .graph import (
    WeightedGraph,
    complete_graph,
    cycle_graph,
    parse_graph,
    random_connected_graph,
    serialize_graph,
    validate_connected,
)
from .mst import SpanningTree, enumerate_msts, kruskal_mst
from .oracle import naive_homology_oracle
from .paths import (
    ConsistencyReport,
    DominanceReport,
    PathChoiceFunction,
    all_simple_paths,
    check_consistency,
    classify_dominance,
    enumerate_pcfs,
    extract_paths,
    graph_completion,
    maximal_paths,
    pcf_from_json_dict,
    pcf_from_maximal_paths,
    pcf_to_json_dict,
    repair_consistency,
)
from .persistence import (
    Bar,
    Barcode,
    FilteredComplex,
    ReducedMatrix,
    SimplexOrdering,
    build_filtration,
    canonical_ordering,
    extract_barcode,
    mst_from_reduction,
    random_tie_ordering,
    reduce_matrix,
    vertex_ordering,
)
from .theorems import (
    BirthEdgeAudit,
    CounterexampleWitness,
    InjectionReport,
    MstInvarianceReport,
    PosetExtremesReport,
    audit_birth_edges,
    barcode_of_distance,
    check_mst_invariance,
    cost_dominated_distances,
    cycle_cut_pcf,
    opposite_cycle_routings,
    poset_extremes,
    search_counterexample,
    verify_injection,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
