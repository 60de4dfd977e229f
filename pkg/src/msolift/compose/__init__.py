"""Type composition over otxxs and the lifting model checker."""

from msolift.compose.classes import (
    Agreement,
    CoClasses,
    co_classes,
    compatible_cover,
    default_corpus,
    realized_types,
    relation_agreement,
)
from msolift.compose.engine import (
    CompatibleCover,
    Composition,
    CompositionEngine,
    Representative,
    TypePartition,
    compose_a,
    compose_b,
    default_engine,
    oi_set_a,
    oi_set_b,
    type_partition,
)
from msolift.compose.pipeline import checked_treewidth, lift_engine, lift_modelcheck, otxx_of, run_lift
from msolift.compose.profiles import Atoms, LocalPart, ProfileEngine, ProfileId, local_part, otxx_vocabulary

__all__ = [
    "Agreement",
    "Atoms",
    "CoClasses",
    "CompatibleCover",
    "Composition",
    "CompositionEngine",
    "LocalPart",
    "ProfileEngine",
    "ProfileId",
    "Representative",
    "TypePartition",
    "checked_treewidth",
    "co_classes",
    "compatible_cover",
    "compose_a",
    "compose_b",
    "default_corpus",
    "default_engine",
    "lift_engine",
    "lift_modelcheck",
    "local_part",
    "oi_set_a",
    "oi_set_b",
    "otxx_of",
    "otxx_vocabulary",
    "realized_types",
    "relation_agreement",
    "run_lift",
    "type_partition",
]
