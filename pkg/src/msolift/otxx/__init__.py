"""Ordered tree extensions: construction, compatible orders and replacement."""

from msolift.otxx.build import BagOrderProvider, Otxx, bfs_bag_orders, build_otxx, otxx_symbols
from msolift.otxx.coloring import coloring_bag_orders, degeneracy_order, proper_coloring
from msolift.otxx.orders import (
    any_compatible_order,
    block_order,
    blockify,
    canonical_form,
    compatible_orders,
    is_compatible,
    random_block_order,
    random_compatible_order,
    sequences_of,
)
from msolift.otxx.replace import (
    interface,
    interface_matches,
    local_structure,
    replace,
    replace_with_mapping,
    sub_otxx,
)
from msolift.otxx.validate import decode_otxx, otxx_violations, validate_otxx

__all__ = [
    "BagOrderProvider",
    "Otxx",
    "any_compatible_order",
    "bfs_bag_orders",
    "block_order",
    "blockify",
    "build_otxx",
    "canonical_form",
    "coloring_bag_orders",
    "compatible_orders",
    "decode_otxx",
    "degeneracy_order",
    "interface",
    "interface_matches",
    "is_compatible",
    "local_structure",
    "otxx_symbols",
    "otxx_violations",
    "proper_coloring",
    "random_block_order",
    "random_compatible_order",
    "replace",
    "replace_with_mapping",
    "sequences_of",
    "sub_otxx",
    "validate_otxx",
]
