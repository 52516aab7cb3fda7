"""Influence maximization as a combinatorial multi-armed bandit."""

from ._core import (
    BudgetError,
    ConfigError,
    Error,
    Graph,
    NoDecayError,
    ParseError,
    TooManyEdgesError,
    constant_probs,
    correlation_decay,
    exact_spread,
    failure_prob_bound,
    failure_prob_exact,
    load_edge_list,
    mc_spread,
    mle_loss_gap_bound,
    random_graph,
    relative_l2_error,
    run_experiment,
    sample_complexity_bound,
    scale_probs,
    select_seeds,
    weighted_cascade,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "Error",
    "Graph",
    "NoDecayError",
    "ParseError",
    "TooManyEdgesError",
    "constant_probs",
    "correlation_decay",
    "exact_spread",
    "failure_prob_bound",
    "failure_prob_exact",
    "load_edge_list",
    "mc_spread",
    "mle_loss_gap_bound",
    "random_graph",
    "relative_l2_error",
    "run_experiment",
    "sample_complexity_bound",
    "scale_probs",
    "select_seeds",
    "weighted_cascade",
]
