"""Query-efficient streaming algorithms for cardinality-constrained
submodular maximization, with baselines and a benchmark harness."""

from .baselines import brute_force_opt, greedy, random_baseline, sieve_stream_pp, stochastic_greedy
from .core import CandidateBuffer, Metrics, Solution, Trace
from .errors import EdgeListParseError, InvariantViolation, ValidationError
from .graph import Graph, load_edge_list
from .harness import (
    ExperimentConfig,
    ResultRecord,
    lower_bound_experiment,
    read_csv,
    run_experiment,
    stream_order,
    sweep,
    write_csv,
)
from .monotone import (
    QsConfig,
    dispatch_alpha,
    dispatch_monotone,
    partition_best,
    qs_small,
    quickstream_c,
    quickstream_largek,
    quickstream_pp,
)
from .multipass import boost_ratio, multipass_linear, qs_br, qs_mpl
from .nonmonotone import BlockOracle, NmConfig, block_reduce, qs_pp, quickstream_nm, run_blocked, unreduce
from .oracle import (
    RestrictedOracle,
    RevenueParams,
    ValueOracle,
    adversarial_pair,
    coverage_oracle,
    coverage_value,
    maxcut_oracle,
    maxcut_value,
    modular_oracle,
    revenue_oracle,
    revenue_value,
)

__all__ = [
    "BlockOracle",
    "CandidateBuffer",
    "EdgeListParseError",
    "ExperimentConfig",
    "Graph",
    "InvariantViolation",
    "Metrics",
    "NmConfig",
    "QsConfig",
    "RestrictedOracle",
    "ResultRecord",
    "RevenueParams",
    "Solution",
    "Trace",
    "ValidationError",
    "ValueOracle",
    "adversarial_pair",
    "block_reduce",
    "boost_ratio",
    "brute_force_opt",
    "coverage_oracle",
    "coverage_value",
    "dispatch_alpha",
    "dispatch_monotone",
    "greedy",
    "load_edge_list",
    "lower_bound_experiment",
    "maxcut_oracle",
    "maxcut_value",
    "modular_oracle",
    "multipass_linear",
    "partition_best",
    "qs_br",
    "qs_mpl",
    "qs_pp",
    "qs_small",
    "quickstream_c",
    "quickstream_largek",
    "quickstream_nm",
    "quickstream_pp",
    "random_baseline",
    "read_csv",
    "revenue_oracle",
    "revenue_value",
    "run_blocked",
    "run_experiment",
    "sieve_stream_pp",
    "stochastic_greedy",
    "stream_order",
    "sweep",
    "unreduce",
    "write_csv",
]
