"""Equidominating graphs: twin and pseudo-class structure, kernels, an XP solver,
hereditary recognition and brute-force oracles."""

from .errors import BudgetExceeded, IntegrityError
from .graph import Graph, is_dominating, is_mds, parse_graph, serialize_graph
from .hereditary import (
    construct_structure_hereditary,
    forbidden_subgraph_search,
    is_basic,
    recognize_hereditary,
)
from .kernel import kernel_k, kernel_target_t, lift_structure
from .oracle import brute_force_k_equidominating, brute_force_target_t, verify_structure
from .pseudo import pseudo_class_partition
from .pseudograph import PseudoGraph, build_pseudo_graph, is_dense, is_minimal_dense
from .solver import decide_k_equidomination, decide_target_t, solve_k, solve_target_t
from .structure import WeightStructure, parse_structure, serialize_structure
from .twins import twin_partition

__all__ = [
    "BudgetExceeded", "Graph", "IntegrityError", "PseudoGraph", "WeightStructure",
    "brute_force_k_equidominating", "brute_force_target_t", "build_pseudo_graph",
    "construct_structure_hereditary", "decide_k_equidomination", "decide_target_t",
    "forbidden_subgraph_search", "is_basic", "is_dense", "is_dominating", "is_mds",
    "is_minimal_dense", "kernel_k", "kernel_target_t", "lift_structure", "parse_graph",
    "parse_structure", "pseudo_class_partition", "recognize_hereditary", "serialize_graph",
    "serialize_structure", "solve_k", "solve_target_t", "twin_partition", "verify_structure",
]
