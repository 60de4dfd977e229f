"""Clique-separator, segmented and 3-connected decompositions of graphs."""

from msolift.decomp.atoms import (
    atom_decomposition,
    components_decomposition,
    decompose_step,
    maximal_atoms,
    refine,
)
from msolift.decomp.connectivity import (
    MinorMode,
    SeparabilityResult,
    TwMode,
    disjoint_paths,
    improve,
    improve_closure,
    separability_check,
    universal_pair_family,
)
from msolift.decomp.oracles import has_minor, treewidth_exact
from msolift.decomp.segment import segment
from msolift.decomp.separators import CliqueSeparator, clique_separators, is_atom, is_c_atom
from msolift.decomp.triconnected import (
    ThreeConnectedDecomposition,
    TorsoClass,
    three_connected_decomposition,
    torso_class,
)

__all__ = [
    "CliqueSeparator",
    "MinorMode",
    "SeparabilityResult",
    "ThreeConnectedDecomposition",
    "TorsoClass",
    "TwMode",
    "atom_decomposition",
    "clique_separators",
    "components_decomposition",
    "decompose_step",
    "disjoint_paths",
    "has_minor",
    "improve",
    "improve_closure",
    "is_atom",
    "is_c_atom",
    "maximal_atoms",
    "refine",
    "segment",
    "separability_check",
    "three_connected_decomposition",
    "torso_class",
    "treewidth_exact",
    "universal_pair_family",
]
