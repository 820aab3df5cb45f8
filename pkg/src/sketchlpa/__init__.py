"""Bounded-memory community detection by label propagation.

The package pairs a CSR graph container with three label selectors: an
exact weighted tally, a single-candidate weighted vote, and a fixed-size
frequent-label sketch. The sketch and vote variants keep per-vertex
auxiliary memory constant in the neighborhood size, which is the point.
"""

from .graph import (
    Graph,
    GraphLoadError,
    build_graph,
    load_graph,
    validate_graph,
    write_edgelist,
    write_matrix_market,
)
from .lpa import (
    LpaConfig,
    LpaResult,
    aux_memory_estimate,
    lpa_move,
    lpa_run,
    select_label_bm,
    select_label_exact,
    select_label_mg,
)
from .metrics import CommunityStats, community_stats, modularity
from .sketch import BmState, MgSketch, reduce_votes

__version__ = "0.1.0"

__all__ = [
    "BmState",
    "CommunityStats",
    "Graph",
    "GraphLoadError",
    "LpaConfig",
    "LpaResult",
    "MgSketch",
    "aux_memory_estimate",
    "build_graph",
    "community_stats",
    "load_graph",
    "lpa_move",
    "lpa_run",
    "modularity",
    "reduce_votes",
    "select_label_bm",
    "select_label_exact",
    "select_label_mg",
    "validate_graph",
    "write_edgelist",
    "write_matrix_market",
]
