"""Proper connection number of graphs: exact values, constructive 2-colourings,
degree-condition certificates and small-order verification."""

from .colorpath import (
    EdgeColoring,
    exists_proper_path,
    has_strong_property,
    is_proper_connected,
    is_proper_path,
    start_end_pairs,
)
from .errors import BudgetExceeded, FormatError, GraphError, WitnessError
from .exact import decide_pc_le_k, oracle_pc, pc_exact, pc_lower_bound, pc_upper_via_spanning_tree
from .graph import Graph, from_edge_list, parse_graph6, to_graph6

__all__ = [
    "BudgetExceeded", "EdgeColoring", "FormatError", "Graph", "GraphError", "WitnessError",
    "decide_pc_le_k", "exists_proper_path", "from_edge_list", "has_strong_property",
    "is_proper_connected", "is_proper_path", "oracle_pc", "parse_graph6", "pc_exact",
    "pc_lower_bound", "pc_upper_via_spanning_tree", "start_end_pairs", "to_graph6",
]
