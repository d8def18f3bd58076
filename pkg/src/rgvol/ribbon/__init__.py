"""Permutation-model ribbon graphs, cells, and brute-force volumes."""

from .cells import (
    CellForm,
    brute_volume,
    cell_form,
    duality_defect,
    edge_index,
    half_edge_twist,
    perimeter_matrix,
    pfaffian,
    symplectic_form,
    twist_vector,
)
from .graphs import (
    DEFAULT_HALF_EDGE_LIMIT,
    HALF_EDGE_LIMIT_ENV,
    HalfEdgeLimitError,
    RibbonClass,
    RibbonGraph,
    RibbonGraphError,
    automorphisms,
    clear_enumeration_cache,
    enumerate_graphs,
    from_interchange,
    graph_type,
    half_edge_limit,
    make_graph,
    to_interchange,
)
from .polytope import EmptyRegionError, UnboundedRegionError, polytope_volume

__all__ = [
    "CellForm",
    "DEFAULT_HALF_EDGE_LIMIT",
    "EmptyRegionError",
    "HALF_EDGE_LIMIT_ENV",
    "HalfEdgeLimitError",
    "RibbonClass",
    "RibbonGraph",
    "RibbonGraphError",
    "UnboundedRegionError",
    "automorphisms",
    "brute_volume",
    "cell_form",
    "clear_enumeration_cache",
    "duality_defect",
    "edge_index",
    "enumerate_graphs",
    "from_interchange",
    "graph_type",
    "half_edge_limit",
    "half_edge_twist",
    "make_graph",
    "perimeter_matrix",
    "pfaffian",
    "polytope_volume",
    "symplectic_form",
    "to_interchange",
    "twist_vector",
]
