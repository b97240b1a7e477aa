"""Tree decompositions and the dynamic programs that run on them."""

from .coloring import DEFAULT_STATE_BUDGET, chromatic_number_dp, k_colorable
from .decomposition import (DEFAULT_EXACT_LIMIT, NiceNode, TreeDecomposition, decomposition_from_order,
                            exact_treewidth, heuristic_decomposition, min_fill_order, nice_form, order_width,
                            validate_decomposition)
from .oddmodel_dp import DPVerdict, odd_model_dp

__all__ = [
    "DEFAULT_EXACT_LIMIT", "DEFAULT_STATE_BUDGET", "DPVerdict", "NiceNode", "TreeDecomposition",
    "chromatic_number_dp", "decomposition_from_order", "exact_treewidth", "heuristic_decomposition",
    "k_colorable", "min_fill_order", "nice_form", "odd_model_dp", "order_width", "validate_decomposition",
]
