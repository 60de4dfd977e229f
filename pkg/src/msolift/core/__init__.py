from msolift.core.decomposition import (
    DecompositionMetrics,
    NodeKind,
    SegmentedDecomposition,
    TreeDecomposition,
    ValidationReport,
    Violation,
    cone,
    is_segmented,
    metrics,
    node_sets,
    segmented_violations,
    separator,
    torso,
    validate_decomposition,
)
from msolift.core.structures import (
    GRAPH_VOCABULARY,
    ORDER_SYMBOL,
    Graph,
    Structure,
    Vocabulary,
    gaifman,
    graph_from_networkx,
    induced,
    to_networkx,
)
from msolift.core.unionfind import UnionFind

__all__ = [
    "DecompositionMetrics",
    "GRAPH_VOCABULARY",
    "Graph",
    "NodeKind",
    "ORDER_SYMBOL",
    "SegmentedDecomposition",
    "Structure",
    "TreeDecomposition",
    "UnionFind",
    "ValidationReport",
    "Violation",
    "Vocabulary",
    "cone",
    "gaifman",
    "graph_from_networkx",
    "induced",
    "is_segmented",
    "metrics",
    "node_sets",
    "segmented_violations",
    "separator",
    "to_networkx",
    "torso",
    "validate_decomposition",
]
