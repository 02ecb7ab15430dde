"""Connectivity-aware QFT circuit synthesis via (3,2,1)-covering paths."""
from .approx import approx_cp, connected_dominating_set, spanning_tree_euler_path
from .circuit import Circuit, CostReport, Gate, cnot_cost, emit_qasm, lower, predicted_cost
from .covering import CoveringSolution, brute_force_cp, compute_c, compute_d, get_ns_path, three_two_one_cp
from .graph import DistanceMatrix, Graph, GraphError, get_shortest_path, load_graph, parse_edge_list, shortest_paths
from .sim import qft_matrix, unitary_of, verify_synthesis
from .synth import CascadePlan, Synthesis, cascade_for_path, construct_s, synthesize_qft

__version__ = "0.1.0"

__all__ = [
    "approx_cp",
    "connected_dominating_set",
    "spanning_tree_euler_path",
    "Circuit",
    "CostReport",
    "Gate",
    "cnot_cost",
    "emit_qasm",
    "lower",
    "predicted_cost",
    "CoveringSolution",
    "brute_force_cp",
    "compute_c",
    "compute_d",
    "get_ns_path",
    "three_two_one_cp",
    "DistanceMatrix",
    "Graph",
    "GraphError",
    "get_shortest_path",
    "load_graph",
    "parse_edge_list",
    "shortest_paths",
    "qft_matrix",
    "unitary_of",
    "verify_synthesis",
    "CascadePlan",
    "Synthesis",
    "cascade_for_path",
    "construct_s",
    "synthesize_qft",
]
