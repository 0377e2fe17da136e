"""colorfiber: fibers of degree-color sequences, their moves, and samplers.

A multigraph on [n] with a vertex k-coloring z has a degree-color label:
its degree sequence plus the count of edges inside each unordered color
pair. This package enumerates the set of (multi)graphs sharing a label,
builds the quadratic move set connecting any two of them, runs the switch
Markov chain with uniform stationary distribution over that set, reduces
edge monomials to canonical normal forms under a circular weight order,
and counts two-color labels against an exhaustive oracle.

Hot kernels run on a compiled backend when available; set
COLORFIBER_PURE=1 to force the pure-Python implementations. Both produce
bit-identical results.
"""

from colorfiber._backend import active_backend
from colorfiber.chain import (
    ChainConfig,
    ChainState,
    RunResult,
    SplitMix64,
    UniformityReport,
    default_moves,
    run,
    step,
    uniformity_diagnostic,
)
from colorfiber.counting import (
    CountCheck,
    DiscrepancyReport,
    check_closed_form,
    discrepancy_report,
    hilbert_k2,
    lattice_count_oracle,
    two_block_coloring,
)
from colorfiber.fibers import (
    Fiber,
    FiberGraph,
    TwoElementFamily,
    bottleneck_connecting_norm,
    enumerate_fiber,
    fiber_graph,
    realize,
    two_element_simple_fiber,
)
from colorfiber.graphs import (
    CDegSequence,
    ColorAssignment,
    DesignMatrix,
    EdgeVector,
    GuardExceeded,
    all_pairs,
    cdeg,
    cell_count,
    cell_index,
    design_matrix,
    index_cell,
    index_pair,
    is_monomial_walk,
    pair_count,
    pair_index,
    pos_neg_colors,
    pos_neg_degrees,
    walk_from_brackets,
)
from colorfiber.moves import (
    Move,
    MoveSet,
    apply_move,
    enumerate_quadratic_moves,
    is_basis_move,
    minimal_norm_check,
)
from colorfiber.ordering import (
    CROSSING,
    DISJOINT,
    EQ,
    GT,
    LT,
    SHARED,
    Binomial,
    WeightOrder,
    chord_relation,
    compare,
    crosses,
    leading_term,
    weight,
    weight_table,
)
from colorfiber.reduction import (
    MembershipResult,
    ReductionResult,
    contract,
    find_noncrossing_samecolor_pair,
    ideal_membership,
    in_ideal,
    normal_form,
    recolor,
)

__version__ = "0.1.0"

__all__ = [
    "Binomial",
    "CDegSequence",
    "CROSSING",
    "ChainConfig",
    "ChainState",
    "ColorAssignment",
    "CountCheck",
    "DISJOINT",
    "DesignMatrix",
    "DiscrepancyReport",
    "EQ",
    "EdgeVector",
    "Fiber",
    "FiberGraph",
    "GT",
    "GuardExceeded",
    "LT",
    "MembershipResult",
    "Move",
    "MoveSet",
    "ReductionResult",
    "RunResult",
    "SHARED",
    "SplitMix64",
    "TwoElementFamily",
    "UniformityReport",
    "WeightOrder",
    "active_backend",
    "all_pairs",
    "apply_move",
    "bottleneck_connecting_norm",
    "cdeg",
    "cell_count",
    "cell_index",
    "chord_relation",
    "check_closed_form",
    "compare",
    "contract",
    "crosses",
    "default_moves",
    "design_matrix",
    "discrepancy_report",
    "enumerate_fiber",
    "enumerate_quadratic_moves",
    "fiber_graph",
    "find_noncrossing_samecolor_pair",
    "hilbert_k2",
    "ideal_membership",
    "in_ideal",
    "index_cell",
    "index_pair",
    "is_basis_move",
    "is_monomial_walk",
    "lattice_count_oracle",
    "leading_term",
    "minimal_norm_check",
    "normal_form",
    "pair_count",
    "pair_index",
    "pos_neg_colors",
    "pos_neg_degrees",
    "realize",
    "recolor",
    "run",
    "step",
    "two_block_coloring",
    "two_element_simple_fiber",
    "uniformity_diagnostic",
    "walk_from_brackets",
    "weight",
    "weight_table",
]
