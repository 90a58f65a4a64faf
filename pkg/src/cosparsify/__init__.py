"""Connectivity-aware sparsification of 2-FWL refinement and its test harness."""

__version__ = "0.1.0"

from .graph import Graph, GraphParseError, NodeLabeling, parse_edge_list, parse_graph6, to_graph6
from .connectivity import ConnectivityDecomposition, biconnected_decomposition
from .sparsify import InteractionPlan, Tag, cosparsify_plan, dense_plan, distance_bounded_plan, plan_stats
from .rrwp import compute_rrwp, initial_pair_features
from .refine import (FWL2_COSP, FWL2_COSP_DIST, FWL2_DENSE, WL1, Engine, GraphSignature, distinguishes,
                     parse_engine, signature)

__all__ = [
    "Graph", "GraphParseError", "NodeLabeling", "parse_edge_list", "parse_graph6", "to_graph6",
    "ConnectivityDecomposition", "biconnected_decomposition",
    "InteractionPlan", "Tag", "cosparsify_plan", "dense_plan", "distance_bounded_plan", "plan_stats",
    "compute_rrwp", "initial_pair_features",
    "Engine", "GraphSignature", "WL1", "FWL2_DENSE", "FWL2_COSP", "FWL2_COSP_DIST",
    "distinguishes", "parse_engine", "signature",
]
