"""Exact Euclidean bottleneck matching for planar point sets.

Pipeline: build the 17-geographic-neighborhood graph of the input (exact
integer predicates, full tie handling), then binary-search its distinct
edge lengths with an Edmonds-blossom perfect-matching oracle on threshold
graphs.  The optimum threshold is always one of those lengths, and the
witness matching attains it.
"""

from .geometry import (
    COORD_BOUND,
    SCALE,
    ScaledPoint,
    SqDist,
    WEDGE_IDS,
    WedgeId,
    WedgeKey,
    as_points,
    check_points,
    cmp_dist,
    sq_dist,
    sqrt3_sign,
    wedge_keys,
    wedge_membership,
)
from .gng import (
    DeltaSet,
    NeighborhoodGraph,
    build_gng,
    build_wedge_indexes,
    round1_distances,
    round2_edges,
)
from .instances import (
    GENERATOR_KINDS,
    circle_lattice_points,
    generate_instance,
    generated_points,
    instance_text,
    load_instance,
    parse_instance_text,
)
from .matching import (
    AdjacencyGraph,
    Matching,
    has_perfect_matching,
    max_matching,
    threshold_graph,
)
from .neighbors import (
    NeighborAnswer,
    NeighborIndex,
    build_neighbor_index,
    enumerate_at_distances,
    top_k,
)
from .search import (
    BottleneckResult,
    CandidateDistances,
    binary_search_min_true,
    bottleneck_matching,
    bottleneck_via_all_pairs,
)
from .wedge_index import WedgeRangeIndex, build_wedge_index, canonical_decomposition

__version__ = "0.1.0"

__all__ = [
    "AdjacencyGraph",
    "BottleneckResult",
    "CandidateDistances",
    "COORD_BOUND",
    "DeltaSet",
    "GENERATOR_KINDS",
    "Matching",
    "NeighborAnswer",
    "NeighborIndex",
    "NeighborhoodGraph",
    "SCALE",
    "ScaledPoint",
    "SqDist",
    "WEDGE_IDS",
    "WedgeId",
    "WedgeKey",
    "WedgeRangeIndex",
    "as_points",
    "binary_search_min_true",
    "bottleneck_matching",
    "bottleneck_via_all_pairs",
    "build_gng",
    "build_neighbor_index",
    "build_wedge_index",
    "build_wedge_indexes",
    "canonical_decomposition",
    "check_points",
    "circle_lattice_points",
    "cmp_dist",
    "enumerate_at_distances",
    "generate_instance",
    "generated_points",
    "has_perfect_matching",
    "instance_text",
    "load_instance",
    "max_matching",
    "parse_instance_text",
    "round1_distances",
    "round2_edges",
    "sq_dist",
    "sqrt3_sign",
    "threshold_graph",
    "top_k",
    "wedge_keys",
    "wedge_membership",
    "__version__",
]
