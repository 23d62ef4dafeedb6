"""Directed feedback vertex set: reduction rules, kernels, LP bounds and exact solvers."""

from .digraph import DiGraph, EdgeColor, edge_color, is_acyclic, strongly_connected_components
from .errors import CapExceeded, NicenessError, ParseError, PromiseViolation
from .flow import SeparatorResult, max_disjoint_cycles_through, max_disjoint_paths
from .instances import gen_grid_tiling, gen_random_planted, gen_tight, parse_pace, write_pace
from .kernel import greedy_pack_approx, kernelize_short_cycles, weakly_relevant
from .lp import cycles_lp_oracle, dfvs_lower_bound, order_lp_value
from .reduce import ReduceConfig, ReductionState, Verdict, reduce_fixpoint, reduce_graph
from .solve import branch_and_bound, brute_force_dfvs, verify_solution

__all__ = [
    "CapExceeded", "DiGraph", "EdgeColor", "NicenessError", "ParseError", "PromiseViolation",
    "ReduceConfig", "ReductionState", "SeparatorResult", "Verdict", "branch_and_bound",
    "brute_force_dfvs", "cycles_lp_oracle", "dfvs_lower_bound", "edge_color", "gen_grid_tiling",
    "gen_random_planted", "gen_tight", "greedy_pack_approx", "is_acyclic", "kernelize_short_cycles",
    "max_disjoint_cycles_through", "max_disjoint_paths", "order_lp_value", "parse_pace",
    "reduce_fixpoint", "reduce_graph", "strongly_connected_components", "verify_solution",
    "weakly_relevant", "write_pace",
]
