"""Forest-accessibility analysis of small weighted graphs and digraphs.

The accessibility matrix of a graph is the inverse of I + alpha * L with
L its Kirchhoff matrix.  By the matrix-forest theorem the entries are
proportions of spanning rooted forests, which makes them usable as
vertex proximities; the package computes them, the metric they induce,
their closed-form response to edge increments, their power-series
expansion, and a family of sociometric indices, with an exhaustive
enumeration oracle to cross-check everything on small instances.
"""

from .accessibility import (
    AccessibilityResult,
    DistanceMatrix,
    block_structure,
    forest_accessibility,
    forest_distance,
)
from .cli import RunConfig, run_cli
from .documents import (
    DocumentRecord,
    GraphDocument,
    parse_any,
    parse_document,
    parse_edge_list,
    serialize_document,
    serialize_edge_list,
    to_graph,
)
from .enumeration import (
    MAX_ORACLE_EDGES,
    MAX_ORACLE_VERTICES,
    SpanningForest,
    enumerate_diverging_forests,
    enumerate_rooted_forests,
    forest_weight_table,
    oracle_accessibility,
    spanning_forests_of,
    tree_cofactor_check,
    weight_of_set,
)
from .errors import (
    AsymmetryError,
    ConfigError,
    IncrementError,
    InvariantError,
    NonPositiveWeightError,
    OrientationError,
    ParseError,
    PartitionError,
    SelfLoopError,
    SingularMatrixError,
    SizeGuardError,
    ValidationError,
    VertexRangeError,
)
from .graph import (
    Edge,
    KirchhoffMatrix,
    WeightedMultigraph,
    build_graph,
    components,
    is_macrovertex,
    kirchhoff,
    separates,
)
from .indices import (
    ClassicalIndices,
    DerivativeIndices,
    IndexReport,
    classical_indices,
    derivative_indices,
)
from .series import (
    MAX_RWD_LENGTH,
    MAX_RWD_VERTICES,
    RouteDrainWeight,
    SeriesResult,
    WeightBoundReport,
    enumerate_routes_with_drains,
    series_partial_sum,
    weight_bound,
)
from .updates import (
    EdgeIncrement,
    IncrementReport,
    UpdateChain,
    apply_increment,
    rank_one_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "AccessibilityResult",
    "AsymmetryError",
    "ClassicalIndices",
    "ConfigError",
    "DerivativeIndices",
    "DistanceMatrix",
    "DocumentRecord",
    "Edge",
    "EdgeIncrement",
    "GraphDocument",
    "IncrementError",
    "IncrementReport",
    "IndexReport",
    "InvariantError",
    "KirchhoffMatrix",
    "MAX_ORACLE_EDGES",
    "MAX_ORACLE_VERTICES",
    "MAX_RWD_LENGTH",
    "MAX_RWD_VERTICES",
    "NonPositiveWeightError",
    "OrientationError",
    "ParseError",
    "PartitionError",
    "RouteDrainWeight",
    "RunConfig",
    "SelfLoopError",
    "SeriesResult",
    "SingularMatrixError",
    "SizeGuardError",
    "SpanningForest",
    "UpdateChain",
    "ValidationError",
    "VertexRangeError",
    "WeightBoundReport",
    "WeightedMultigraph",
    "apply_increment",
    "block_structure",
    "build_graph",
    "classical_indices",
    "components",
    "derivative_indices",
    "enumerate_diverging_forests",
    "enumerate_rooted_forests",
    "enumerate_routes_with_drains",
    "forest_accessibility",
    "forest_distance",
    "forest_weight_table",
    "is_macrovertex",
    "kirchhoff",
    "oracle_accessibility",
    "parse_any",
    "parse_document",
    "parse_edge_list",
    "rank_one_certificate",
    "run_cli",
    "separates",
    "serialize_document",
    "serialize_edge_list",
    "series_partial_sum",
    "spanning_forests_of",
    "to_graph",
    "tree_cofactor_check",
    "weight_bound",
    "weight_of_set",
]
