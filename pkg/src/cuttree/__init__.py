"""Gomory-Hu trees and laminar families of optimal cuts, checked by brute force."""

from .construct import (
    GomoryHuTree,
    LaminarCut,
    LaminarFamily,
    build_laminar_family,
    build_tree_classical,
    build_tree_paper,
    minimal_vertex,
    partition_family,
    prec,
    uncross,
)
from .errors import (
    ConsistencyError,
    CutTreeError,
    EnumerationCapError,
    InputError,
    PreconditionError,
    PropertyViolation,
)
from .exhaustive import INF
from .graph import Cut, WeightedGraph, cut_value, out_edges, parse_graph
from .mincut import GraphEngine, lam, largest_optimal_cut, max_flow, min_cut, smallest_optimal_cut
from .submodular import (
    SetFunctionOracle,
    check_properties,
    graph_cut_oracle,
    lambda_b,
    smallest_optimal_cut_b,
)
from .verifier import (
    brute_force_optimal_cuts,
    lambda_spectrum,
    verify_gh_tree,
    verify_laminar,
    verify_separation,
)

__version__ = "0.1.0"
