"""Heaviest k-subgraph search: OVNS/BVNS heuristics, exact oracle, generators, benchmarks."""

from ._core import (
    ExactResult,
    Graph,
    LogicError,
    ParseError,
    RunResult,
    TooLargeError,
    ValidationError,
    bbv,
    bvns,
    drop_heuristic,
    exact,
    gnp_weighted,
    local_opt_check,
    mdp_gaussian,
    objective,
    ovns,
    rank_pool,
    read_instance,
    relative_deviation,
    run_bench,
    threshold_edges,
    write_edgelist,
    write_matrix,
)

__all__ = [
    "ExactResult",
    "Graph",
    "LogicError",
    "ParseError",
    "RunResult",
    "TooLargeError",
    "ValidationError",
    "bbv",
    "bvns",
    "drop_heuristic",
    "exact",
    "gnp_weighted",
    "local_opt_check",
    "mdp_gaussian",
    "objective",
    "ovns",
    "rank_pool",
    "read_instance",
    "relative_deviation",
    "run_bench",
    "threshold_edges",
    "write_edgelist",
    "write_matrix",
]
