"""Edge-vertex dominating sets on unit disk graphs."""

from .domination import (
    EvdsSolution,
    brute_force_opt_evds,
    ev_dominates,
    exact_evds,
    is_evds,
    maximal_matching_evds,
)
from .errors import (
    BoundViolation,
    ConstructionError,
    EmbeddingError,
    EvdsError,
    GenerationError,
    InfeasibleError,
    OracleRefusalError,
)
from .geometry import (
    Point2D,
    UnitDiskGraph,
    build_udg,
    edge_distance,
    edge_neighborhood,
    r_closed_neighborhood,
    set_edge_distance,
)
from .hexgrid import HexCellId, HexGrid, build_hex_grid, cell_of, hex5_evds
from .ptas import PtasParams, SeparatedCollection, expand_neighborhood, ptas_evds, verify_separation
from .reduction import (
    GridEmbedding,
    ReducedInstance,
    brute_force_vertex_cover,
    evds_to_vc,
    reduce_to_udg,
    validate_embedding,
    vc_to_evds,
)

__version__ = "0.1.0"
