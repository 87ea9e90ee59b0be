"""Concurrence lower bounds for tripartite quantum states from generalized partial transpositions."""

from .bounds import BoundReport, bound_corollary, bound_theorem1, bound_theorem2, proof_cut_inequalities, reorder_subsystems
from .concurrence import (
    SchmidtParams,
    class1_norm_closed_form,
    concurrence_closed_form,
    concurrence_pure,
    schmidt_state,
    special_type_values,
)
from .gpt import CATALOG, GptOperation, IndexSlot, apply_gpt, gpt_norm, is_gpt_entangled, parse_operation
from .states import (
    EXAMPLE_DCT_WEIGHTS,
    DctWeights,
    dct_state,
    ghz_basis_state,
    ghz_state,
    random_mixed_state,
    random_pure_state,
    random_schmidt_params,
    special_type_state,
)
from .tensor_core import PureState, SystemDims, TripartiteState, outer_product, partial_trace, purity, trace_norm

__version__ = "0.1.0"
