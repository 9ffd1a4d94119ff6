"""Kempe-change reconfiguration of graph colourings."""

from .colouring import (
    Colouring,
    ColouringError,
    PartialColouring,
    count_colourings,
    enumerate_colourings,
    extend_colouring,
    extend_with_anchor,
    find_k_colouring,
    is_degree_choosable,
    is_proper,
    list_colour,
)
from .graph import (
    BlockDecomposition,
    EliminationOrdering,
    Graph,
    GraphError,
    blocks,
    degeneracy,
    diameter,
    dominates,
    elimination_ordering_ending_in,
    eligible_pairs,
    identify,
    is_connected,
    is_k_regular,
    is_three_connected,
    second_neighbourhood,
    weakly_dominates,
)
from .kempe import (
    BudgetExceeded,
    KempeChain,
    ReconfigGraph,
    apply_kempe_change,
    are_kempe_equivalent,
    build_reconfig_graph,
    is_locked,
    is_partition_frozen,
    kempe_chains,
    kempe_classes,
    kempe_neighbours,
    reconfig_diameter,
    restricted_class,
    two_colour_subgraph,
)
from .lattices import (
    complete_graph,
    cycle,
    enumerate_k_regular_connected,
    kagome_lattice,
    random_k_regular_connected,
    toroidal_grid,
    triangular_lattice,
    triangular_prism,
)

__version__ = "0.1.0"
