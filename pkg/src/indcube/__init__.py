"""Exact computations on posets of independent sets ordered by inclusion.

The ground objects are graphs on vertices 1..n; the derived object is the
family of independent sets ordered by subset inclusion.  The package
enumerates these families, counts layers and up-neighbours, computes the
maximum antichain together with a machine-checked minimum chain cover,
builds the iterative three-tag chain partitions for paths, and runs the
desk-scale experiments (random graphs, decay audits, the n=11 case).

Heavy kernels live in a compiled extension (``indcube._fastcore``) with a
pure-Python twin (``indcube._purecore``); `indcube.backend` picks one at
import time and `python -m indcube.bench` compares them.
"""

from .backend import BACKEND
from .chains import build_partition, repair_n8, validate_partition
from .cube import Family
from .formulas import (
    cube_size_pn,
    d_star,
    fibonacci,
    layer_size_pn,
    outdeg_count_pn,
    r_star,
)
from .graphs import (
    Graph,
    ResourceBudgetError,
    cycle,
    edgeless,
    erdos_renyi,
    parse_edge_list,
    path,
    serialize_edge_list,
)
from .width import max_antichain, max_antichain_band, shadow_push

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Family",
    "Graph",
    "ResourceBudgetError",
    "__version__",
    "build_partition",
    "cube_size_pn",
    "cycle",
    "d_star",
    "edgeless",
    "erdos_renyi",
    "fibonacci",
    "layer_size_pn",
    "max_antichain",
    "max_antichain_band",
    "outdeg_count_pn",
    "parse_edge_list",
    "path",
    "r_star",
    "repair_n8",
    "serialize_edge_list",
    "shadow_push",
    "validate_partition",
]
