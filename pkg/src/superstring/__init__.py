"""Exact, fixed-parameter and bounding algorithms for Shortest Superstring."""

from ._jit import backend
from .bounds import (
    build_weighted_graph,
    greedy_superstring,
    matching_bound,
    matching_superstring,
    max_weight_matching,
)
from .errors import CapacityError, ContractError, InputError, SuperstringError
from .exact_solver import decide, optimal_length, shortest_superstring_bruteforce, shortest_superstring_dp
from .generators import (
    DiGraph,
    hampath_to_longtrail,
    longtrail_to_below_matching,
    longtrail_to_partial,
    verify_construction,
)
from .kernelizer import kernelize, replay
from .partial_fpt import solve_partial, solve_weighted
from .strings_core import (
    StringItem,
    WeightedCollection,
    build_overlap_table,
    compression,
    is_superstring,
    merge,
    overlap,
    reduce_to_maximal,
    superstring_from_order,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ContractError",
    "DiGraph",
    "InputError",
    "StringItem",
    "SuperstringError",
    "WeightedCollection",
    "backend",
    "build_overlap_table",
    "build_weighted_graph",
    "compression",
    "decide",
    "greedy_superstring",
    "hampath_to_longtrail",
    "is_superstring",
    "kernelize",
    "longtrail_to_below_matching",
    "longtrail_to_partial",
    "matching_bound",
    "matching_superstring",
    "max_weight_matching",
    "merge",
    "optimal_length",
    "overlap",
    "reduce_to_maximal",
    "replay",
    "shortest_superstring_bruteforce",
    "shortest_superstring_dp",
    "solve_partial",
    "solve_weighted",
    "superstring_from_order",
    "verify_construction",
]
