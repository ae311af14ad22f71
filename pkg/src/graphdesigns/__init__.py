"""Graphical designs on regular graphs: design orders, spectral bounds, products."""

from __future__ import annotations

from .bounds import (
    BoundsReport,
    Chain,
    ChainStep,
    CheegerResult,
    IndependenceResult,
    Sharpness,
    bounds_report,
    cheeger_constant_exact,
    cheeger_equality_chain,
    cheeger_lower,
    cheeger_sharpness,
    hoffman_bound,
    hoffman_inequality_chain,
    hoffman_sharpness,
    independence_ratio_exact,
)
from .design import (
    DesignReport,
    ExtremalCertificate,
    WitnessBasis,
    design_order,
    extremal_from_cheeger,
    extremal_from_hoffman,
    is_extremal,
    witness_basis,
)
from .errors import (
    CapExceeded,
    CertificationError,
    DisconnectedGraphError,
    GraphDesignError,
    GraphError,
    PreconditionError,
    SpectralError,
)
from .families import (
    complete,
    cycle,
    derangement_graph,
    fixture,
    hypercube,
    hypercube_character,
    hypercube_design,
    kneser,
    kneser_star,
    permutation_stabilizer,
)
from .graph import (
    Graph,
    VertexSet,
    bipartition,
    from_edge_list,
    is_connected,
    parse_graph,
    read_graph,
    read_vertex_set,
    write_graph,
    write_vertex_set,
)
from .products import ProductOrderRecord, cartesian_product, product_set, verify_product_order, weak_power, weak_product
from .spectral import SpectralDecomposition, decompose, normalized_adjacency, project, projection_norms

__version__ = "0.1.0"
