"""Tree-cut decompositions, edge-tangles, carvings and immersions for small
multigraphs with loops."""
from __future__ import annotations

from .carving import Carving, carving_width, optimal_carving, torso_to_carving, verify_duality
from .census import canonical_form, census
from .decompose import (attach_leaf_split, balanced_split, refine_along_cut, split_two_cut,
                        is_xi_nice)
from .errors import (AlignmentError, CapacityError, InfeasibleConstraint, InvalidArgument,
                     InvalidPartition, ParseError, PreconditionError, TckitError)
from .graph import EdgeCut, MultiGraph, edge_cut_order, enumerate_edge_cuts, is_k_simple
from .immersion import ImmersionWitness, degree_condition, find_immersion, verify_witness
from .io import format_decomposition, parse_decomposition, parse_graph, read_graph
from .search import graph_tree_cut_width, min_torso_width_decomposition, tree_cut_torso_width
from .smoothing import is_theta_smooth, signature, smooth_refine
from .tangles import (ExplicitTangle, enumerate_tangles, locate_cell, max_tangle_order,
                      min_separator, uncross_segregator)
from .treecut import (TreeCutDecomposition, reconstruct_from_torsos, single_bag, torso_at,
                      torso_width, tree_cut_width, validate)

__all__ = [
    "AlignmentError", "CapacityError", "Carving", "EdgeCut", "ExplicitTangle",
    "ImmersionWitness", "InfeasibleConstraint", "InvalidArgument", "InvalidPartition",
    "MultiGraph", "ParseError", "PreconditionError", "TckitError", "TreeCutDecomposition",
    "attach_leaf_split", "balanced_split", "canonical_form", "carving_width", "census",
    "degree_condition", "edge_cut_order", "enumerate_edge_cuts", "enumerate_tangles",
    "find_immersion", "format_decomposition", "graph_tree_cut_width", "is_k_simple",
    "is_theta_smooth", "is_xi_nice", "locate_cell", "max_tangle_order",
    "min_separator", "min_torso_width_decomposition", "optimal_carving", "parse_decomposition",
    "parse_graph", "read_graph", "reconstruct_from_torsos", "refine_along_cut", "signature",
    "single_bag", "smooth_refine", "split_two_cut", "torso_at", "torso_to_carving",
    "torso_width", "tree_cut_torso_width", "tree_cut_width", "uncross_segregator", "validate",
    "verify_duality", "verify_witness",
]
