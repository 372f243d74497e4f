"""Experiment runner: stream-order control, metric capture, CSV emission,
and the planted-element query lower-bound experiment.

Every randomized quantity in a run derives from the experiment seed through
fixed salts (0: stream order, 1: algorithm randomness, 2: objective
parameters), so identical configs replay byte-identically apart from wall
time. Repetition i runs with seed + i.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field, fields, replace

from . import baselines
from .core import Solution
from .errors import ValidationError
from .graph import Graph, load_edge_list
from .monotone import QsConfig, dispatch_monotone, qs_small, quickstream_c, quickstream_largek, quickstream_pp
from .multipass import qs_br, qs_mpl
from .nonmonotone import NmConfig, qs_pp, quickstream_nm
from .oracle import (
    ValueOracle,
    adversarial_pair,
    coverage_oracle,
    maxcut_oracle,
    revenue_oracle,
)
from .rng import SplitMix64, derive_seed

_SALT_ORDER = 0
_SALT_ALGO = 1
_SALT_OBJECTIVE = 2


@dataclass
class ExperimentConfig:
    """One experiment cell: dataset, objective, algorithm, parameters."""

    graph: str | None
    objective: str
    algo: str
    k: int
    c: int = 1
    eps: float = 0.1
    b: float = 1.49
    trials: int | None = None
    order: str = "file"
    seed: int = 0
    reps: int = 1
    out: str | None = None
    lazy: bool = False

    def __post_init__(self):
        if self.reps < 1:
            raise ValidationError("reps must be >= 1")
        if self.order not in ("file", "shuffle"):
            raise ValidationError("order must be 'file' or 'shuffle'")


_COLUMNS = [
    "algo",
    "dataset",
    "objective",
    "n",
    "k",
    "c",
    "eps",
    "b",
    "trials",
    "order",
    "rep",
    "seed",
    "value",
    "value_norm",
    "queries",
    "queries_norm",
    "peak_memory",
    "memory_per_k",
    "passes",
    "wall_ms",
]


@dataclass
class ResultRecord:
    """One CSV row; the flattened config plus the measured outcome."""

    algo: str
    dataset: str
    objective: str
    n: int
    k: int
    c: int
    eps: float
    b: float
    trials: int
    order: str
    rep: int
    seed: int
    value: float
    value_norm: float
    queries: int
    queries_norm: float
    peak_memory: int
    memory_per_k: float
    passes: int
    wall_ms: float

    @staticmethod
    def columns() -> list[str]:
        return list(_COLUMNS)

    def row(self) -> list[str]:
        out = []
        for name in _COLUMNS:
            v = getattr(self, name)
            if isinstance(v, bool):
                out.append(str(int(v)))
            elif isinstance(v, float):
                out.append(format(v, ".6g"))
            else:
                out.append(str(v))
        return out


def stream_order(n: int, mode: str, seed: int) -> list[int]:
    """Identity for file order; a seeded Fisher-Yates permutation otherwise."""
    items = list(range(n))
    if mode == "file":
        return items
    if mode == "shuffle":
        SplitMix64(seed).shuffle(items)
        return items
    raise ValidationError(f"unknown stream order mode {mode!r}")


def _build_oracle(objective: str, graph: Graph | None, objective_seed: int) -> ValueOracle:
    if objective == "coverage":
        if graph is None:
            raise ValidationError("coverage objective needs a graph")
        return coverage_oracle(graph)
    if objective == "maxcut":
        if graph is None:
            raise ValidationError("maxcut objective needs a graph")
        return maxcut_oracle(graph)
    if objective == "revenue_monotone":
        if graph is None:
            raise ValidationError("revenue objective needs a graph")
        return revenue_oracle(graph, objective_seed, monotone=True)
    if objective == "revenue_nonmonotone":
        if graph is None:
            raise ValidationError("revenue objective needs a graph")
        return revenue_oracle(graph, objective_seed, monotone=False)
    raise ValidationError(f"unknown objective {objective!r}")


def _run_algo(algo: str, oracle: ValueOracle, stream: list[int], cfg: ExperimentConfig, algo_seed: int) -> Solution:
    k, c, eps, b = cfg.k, cfg.c, cfg.eps, cfg.b
    if algo == "quickstream":
        return quickstream_c(oracle, QsConfig(k=k, c=c, eps=eps), stream)
    if algo == "quickstream_pp":
        return quickstream_pp(oracle, QsConfig(k=k, c=c, eps=eps), stream)
    if algo == "quickstream_largek":
        return quickstream_largek(oracle, k, c, stream)
    if algo == "qs_small":
        return qs_small(oracle, k, c, stream)
    if algo == "dispatch":
        return dispatch_monotone(oracle, k, c, eps, stream)
    if algo == "qs_br":
        return qs_br(oracle, k, c, eps, stream, lazy=cfg.lazy)
    if algo == "quickstream_nm":
        return quickstream_nm(oracle, NmConfig(k=k, b=b, eps=eps, c=c), stream)
    if algo == "qs_pp":
        return qs_pp(oracle, NmConfig(k=k, b=b, eps=eps, c=c), stream)
    if algo == "qs_mpl":
        return qs_mpl(oracle, k, eps, b, stream, lazy=cfg.lazy)
    if algo == "greedy":
        return baselines.greedy(oracle, k, lazy=cfg.lazy)
    if algo == "ltl":
        return baselines.stochastic_greedy(oracle, k, eps, algo_seed)
    if algo == "sieve":
        return baselines.sieve_stream_pp(oracle, k, eps, stream)
    if algo == "random":
        trials = cfg.trials if cfg.trials is not None else oracle.n
        return baselines.random_baseline(oracle, k, trials, algo_seed)
    raise ValidationError(f"unknown algorithm {algo!r}")


ALGORITHMS = [
    "quickstream",
    "quickstream_pp",
    "quickstream_largek",
    "qs_small",
    "dispatch",
    "qs_br",
    "quickstream_nm",
    "qs_pp",
    "qs_mpl",
    "greedy",
    "ltl",
    "sieve",
    "random",
]

OBJECTIVES = ["coverage", "maxcut", "revenue_monotone", "revenue_nonmonotone"]

# normalization baseline cache: (dataset, objective, k, objective_seed) ->
# (greedy value, greedy record)
_greedy_cache: dict[tuple, tuple[float, ResultRecord]] = {}


def _greedy_baseline(
    dataset: str, objective: str, k: int, oracle_proto: ValueOracle, objective_seed: int, cfg: ExperimentConfig
) -> tuple[float, ResultRecord]:
    key = (dataset, objective, k, objective_seed)
    hit = _greedy_cache.get(key)
    if hit is not None:
        return hit
    oracle = oracle_proto.fresh()
    t0 = time.perf_counter()
    sol = baselines.greedy(oracle, k, lazy=True)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    value = sol.value if sol.value is not None else 0.0
    record = ResultRecord(
        algo="greedy",
        dataset=dataset,
        objective=objective,
        n=oracle.n,
        k=k,
        c=cfg.c,
        eps=cfg.eps,
        b=cfg.b,
        trials=0,
        order=cfg.order,
        rep=0,
        seed=cfg.seed,
        value=value,
        value_norm=1.0,
        queries=oracle.query_count,
        queries_norm=oracle.query_count / oracle.n if oracle.n else 0.0,
        peak_memory=sol.metrics.peak_elements,
        memory_per_k=sol.metrics.peak_elements / k,
        passes=sol.metrics.passes,
        wall_ms=wall_ms,
    )
    _greedy_cache[key] = (value, record)
    return value, record


def run_experiment(
    config: ExperimentConfig, graph: Graph | None = None
) -> tuple[list[ResultRecord], ResultRecord]:
    """Execute `reps` runs of one experiment cell on fresh oracles.

    Returns (records, greedy_record). The greedy normalization baseline is
    computed once per (dataset, objective, k, objective seed) and reused.
    """
    if config.algo not in ALGORITHMS:
        raise ValidationError(f"unknown algorithm {config.algo!r}; choose from {', '.join(ALGORITHMS)}")
    dataset = config.graph if config.graph is not None else "synthetic"
    if graph is None and config.graph is not None:
        graph = load_edge_list(config.graph)
    objective_seed = derive_seed(config.seed, _SALT_OBJECTIVE)
    oracle_proto = _build_oracle(config.objective, graph, objective_seed)
    n = oracle_proto.n
    greedy_value, greedy_record = _greedy_baseline(
        os.path.basename(dataset), config.objective, config.k, oracle_proto, objective_seed, config
    )
    records = []
    for rep in range(config.reps):
        rep_seed = config.seed + rep
        stream = stream_order(n, config.order, derive_seed(rep_seed, _SALT_ORDER))
        oracle = oracle_proto.fresh()
        t0 = time.perf_counter()
        sol = _run_algo(config.algo, oracle, stream, config, derive_seed(rep_seed, _SALT_ALGO))
        sol.ensure_value(oracle)
        wall_ms = (time.perf_counter() - t0) * 1000.0
        value = sol.value if sol.value is not None else 0.0
        records.append(
            ResultRecord(
                algo=config.algo,
                dataset=os.path.basename(dataset),
                objective=config.objective,
                n=n,
                k=config.k,
                c=config.c,
                eps=config.eps,
                b=config.b,
                trials=config.trials if config.trials is not None else 0,
                order=config.order,
                rep=rep,
                seed=rep_seed,
                value=value,
                value_norm=value / greedy_value if greedy_value > 0 else (1.0 if value == 0 else math.inf),
                queries=oracle.query_count,
                queries_norm=oracle.query_count / n if n else 0.0,
                peak_memory=sol.metrics.peak_elements,
                memory_per_k=sol.metrics.peak_elements / config.k,
                passes=sol.metrics.passes,
                wall_ms=wall_ms,
            )
        )
    return records, greedy_record


def sweep(
    base: ExperimentConfig,
    ks: list[int],
    epss: list[float],
    algos: list[str],
    graph: Graph | None = None,
) -> list[ResultRecord]:
    """Cartesian sweep over k, eps, and algorithm lists. Greedy baseline rows
    are appended once per normalization key."""
    if graph is None and base.graph is not None:
        graph = load_edge_list(base.graph)
    out: list[ResultRecord] = []
    seen_greedy: set[tuple] = set()
    for k in ks:
        for eps in epss:
            for algo in algos:
                cfg = replace(base, k=k, eps=eps, algo=algo)
                records, greedy_record = run_experiment(cfg, graph)
                out.extend(records)
                key = (greedy_record.dataset, greedy_record.objective, k)
                if key not in seen_greedy:
                    seen_greedy.add(key)
                    out.append(greedy_record)
    return out


def clear_caches() -> None:
    _greedy_cache.clear()


# ---------------------------------------------------------------------------
# query lower-bound experiment


def lower_bound_experiment(
    n: int, c: int, query_budget: int, trials: int, seed: int, prober: str = "random"
) -> float:
    """Fraction of planted-twin instances a budget-limited prober can expose.

    Each trial plants a fresh twin pair and spends `query_budget` queries on
    size-(c-1) probe sets against the twin; the trial counts as a hit when
    some probe contains the planted element (the only sets where the twin
    differs from the capped-cardinality base). The random prober draws probes
    uniformly; the exhaustive prober walks disjoint chunks of a seeded
    permutation and certifies the matching upper bound of 1.0 at budget
    ceil(n/(c-1)).
    """
    if query_budget < 0:
        raise ValidationError("query budget must be nonnegative")
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    if prober not in ("random", "exhaustive"):
        raise ValidationError("prober must be 'random' or 'exhaustive'")
    hits = 0
    for t in range(trials):
        trial_seed = derive_seed(seed, t)
        f, g, _ = adversarial_pair(n, c, trial_seed)
        gen = SplitMix64(derive_seed(trial_seed, 1))
        found = False
        if prober == "random":
            for _ in range(query_budget):
                probe = gen.sample(range(n), c - 1)
                if g.evaluate(probe) != f.evaluate(probe):
                    found = True
                    break
        else:
            perm = list(range(n))
            gen.shuffle(perm)
            for q in range(query_budget):
                lo = q * (c - 1)
                probe = perm[lo : lo + (c - 1)]
                if not probe:
                    break
                if g.evaluate(probe) != f.evaluate(probe):
                    found = True
                    break
        if found:
            hits += 1
    return hits / trials


# ---------------------------------------------------------------------------
# CSV


def write_csv(records: list[ResultRecord], path: str) -> None:
    """UTF-8 CSV with the declared column order; floats at 6 significant
    digits, seeds as decimal integers."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(_COLUMNS) + "\n")
        for rec in records:
            fh.write(",".join(rec.row()) + "\n")


def read_csv(path: str) -> list[ResultRecord]:
    """Inverse of write_csv, up to float printing precision."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines:
        raise ValidationError("empty CSV")
    header = lines[0].split(",")
    if header != _COLUMNS:
        raise ValidationError(f"unexpected CSV header {header}")
    types = {f.name: f.type for f in fields(ResultRecord)}
    out = []
    for ln in lines[1:]:
        parts = ln.split(",")
        kwargs = {}
        for name, text in zip(_COLUMNS, parts):
            t = types[name]
            if t == "int":
                kwargs[name] = int(text)
            elif t == "float":
                kwargs[name] = float(text)
            else:
                kwargs[name] = text
        out.append(ResultRecord(**kwargs))
    return out


def parse_config_file(path: str) -> dict[str, str]:
    """Key-value config: one `key = value` per line, '#' comments. Keys are
    exactly the CLI flag names without the leading dashes."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise ValidationError(f"config line {lineno}: expected 'key = value'")
            key, _, value = text.partition("=")
            out[key.strip()] = value.strip()
    return out
