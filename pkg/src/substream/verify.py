"""Brute-force ratio campaigns and the runtime-invariant suite.

Each campaign runs an algorithm across seeded synthetic instance families
small enough for exhaustive search, replays every recorded decision against
the structural invariants, and checks the proven worst-case ratio. The CLI
`verify` subcommand and the acceptance tests both drive these functions.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .baselines import brute_force_opt
from .core import Trace
from .errors import InvariantViolation
from .harness import lower_bound_experiment
from .monotone import QsConfig, dispatch_alpha, qs_small, quickstream_c, quickstream_largek
from .multipass import qs_br, qs_mpl
from .nonmonotone import NmConfig, quickstream_nm
from .oracle import ValueOracle, coverage_oracle, maxcut_oracle, modular_oracle, revenue_oracle
from .rng import SplitMix64, derive_seed
from .synth import er_graph, geometric_modular_weights, random_modular_weights, triangle_noise_graph


@dataclass
class CampaignResult:
    name: str
    runs: int = 0
    failures: list[str] = field(default_factory=list)
    worst_margin: float = math.inf

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" worst margin {self.worst_margin:.4f}" if self.runs and self.worst_margin < math.inf else ""
        detail = f" ({self.failures[0]})" if self.failures else ""
        return f"[{status}] {self.name}: {self.runs} runs{extra}{detail}"


def _monotone_instance(index: int, seed: int, max_n: int) -> ValueOracle:
    """Alternating coverage and modular instances, sized for brute force."""
    gen = SplitMix64(derive_seed(seed, index))
    n = 8 + gen.below(max(1, max_n - 7))
    if index % 2 == 0:
        p = 0.15 + 0.5 * gen.next_float()
        return coverage_oracle(er_graph(n, p, derive_seed(seed, index * 2 + 1)))
    return modular_oracle(random_modular_weights(n, derive_seed(seed, index * 2 + 1)))


def _nonmonotone_instance(index: int, seed: int, max_n: int) -> ValueOracle:
    gen = SplitMix64(derive_seed(seed, index))
    n = 9 + gen.below(max(1, max_n - 8))
    if index % 2 == 0:
        return maxcut_oracle(triangle_noise_graph(n, derive_seed(seed, index * 2 + 1)))
    g = er_graph(n, 0.4, derive_seed(seed, index * 2 + 1))
    return revenue_oracle(g, derive_seed(seed, index * 3 + 2), monotone=False)


def ratio_monotone_single_pass(instances: int = 500, seed: int = 11, max_n: int = 16) -> CampaignResult:
    """quickstream at c=1, eps=0.1 must clear (1/4 - 0.1) * OPT."""
    result = CampaignResult("ratio: monotone single-pass >= (1/4 - eps) OPT")
    for i in range(instances):
        oracle = _monotone_instance(i, seed, max_n)
        k = 2 + i % 3
        trace = Trace()
        sol = quickstream_c(oracle.fresh(), QsConfig(k=k, c=1, eps=0.1), list(range(oracle.n)), trace)
        try:
            trace.validate()
        except InvariantViolation as exc:
            result.failures.append(f"instance {i}: {exc}")
            continue
        opt = brute_force_opt(oracle.fresh(), k).value
        bound = (0.25 - 0.1) * opt - 1e-9
        assert sol.value is not None
        if sol.value < bound:
            result.failures.append(f"instance {i}: value {sol.value} < bound {bound}")
        if opt > 0:
            result.worst_margin = min(result.worst_margin, sol.value / opt)
        result.runs += 1
    return result


def ratio_k1(instances: int = 500, seed: int = 23, max_n: int = 16) -> CampaignResult:
    """Best-block scanner at k=1 must clear OPT / c for c in {1, 2, 3}."""
    result = CampaignResult("ratio: k=1 scanner >= OPT / c")
    for i in range(instances):
        oracle = _monotone_instance(i, seed, max_n)
        opt = brute_force_opt(oracle.fresh(), 1).value
        for c in (1, 2, 3):
            sol = qs_small(oracle.fresh(), 1, c, list(range(oracle.n)))
            assert sol.value is not None
            if sol.value * c < opt:
                result.failures.append(f"instance {i}, c={c}: {sol.value} * {c} < OPT {opt}")
            if opt > 0:
                result.worst_margin = min(result.worst_margin, sol.value * c / opt)
            result.runs += 1
    return result


def ratio_boosted(instances: int = 500, seed: int = 37, max_n: int = 16) -> CampaignResult:
    """Seeded boosting must clear (1 - 1/e - 0.1) * OPT within the pass cap."""
    result = CampaignResult("ratio: boosted >= (1 - 1/e - eps) OPT")
    eps = 0.1
    target = 1.0 - 1.0 / math.e - eps
    for i in range(instances):
        oracle = _monotone_instance(i, seed, max_n)
        k = 2 + i % 3
        sol = qs_br(oracle.fresh(), k, 1, eps, list(range(oracle.n)))
        opt = brute_force_opt(oracle.fresh(), k).value
        assert sol.value is not None
        if sol.value < target * opt - 1e-9:
            result.failures.append(f"instance {i}: value {sol.value} < {target} * OPT {opt}")
        alpha = dispatch_alpha(k, 1, eps)
        pass_cap = math.ceil(math.log(8.0 / alpha) / eps)
        if sol.metrics.passes - 1 > pass_cap:
            result.failures.append(f"instance {i}: {sol.metrics.passes - 1} boost passes > cap {pass_cap}")
        if opt > 0:
            result.worst_margin = min(result.worst_margin, sol.value / opt)
        result.runs += 1
    return result


def ratio_nonmonotone(instances: int = 120, seed: int = 51, max_n: int = 14, k: int = 10) -> CampaignResult:
    """Two-set single pass within 9.298 + eps of OPT; its boosted composition
    within 4 + 6 eps."""
    result = CampaignResult("ratio: non-monotone single pass and booster")
    eps = 0.1
    b = 1.49
    single_bound = 9.298 + eps + 1e-6
    boosted_bound = 4.0 + 6.0 * eps
    for i in range(instances):
        oracle = _nonmonotone_instance(i, seed, max_n)
        trace = Trace()
        sol = quickstream_nm(oracle.fresh(), NmConfig(k=k, b=b, eps=eps), list(range(oracle.n)), trace)
        try:
            trace.validate()
        except InvariantViolation as exc:
            result.failures.append(f"instance {i}: {exc}")
            continue
        opt = brute_force_opt(oracle.fresh(), k).value
        assert sol.value is not None
        if opt > single_bound * sol.value + 1e-12:
            result.failures.append(f"instance {i}: OPT {opt} > {single_bound} * single-pass {sol.value}")
        boosted = qs_mpl(oracle.fresh(), k, eps, b, list(range(oracle.n)))
        assert boosted.value is not None
        if opt > boosted_bound * boosted.value + 1e-12:
            result.failures.append(f"instance {i}: OPT {opt} > {boosted_bound} * boosted {boosted.value}")
        if opt > 0 and sol.value > 0:
            result.worst_margin = min(result.worst_margin, sol.value / opt)
        result.runs += 1
    return result


def invariant_suite(seed: int = 67) -> CampaignResult:
    """Deletion-heavy and ordinary runs with full trace replay.

    Geometric weight streams force every block into the buffer so that
    suffix deletions actually fire; the trace replay then checks monotone
    maintained values, threshold clearance, and size bounds.
    """
    result = CampaignResult("invariants: trace replay across families")

    def check(trace: Trace, note: str) -> None:
        try:
            trace.validate()
        except InvariantViolation as exc:
            result.failures.append(f"{note}: {exc}")
        result.runs += 1

    for i in range(12):
        k = 2 + i % 3
        # force deletions: sharply growing weights make every block accepted
        weights = geometric_modular_weights(60, 1.0 + 2.0 / k, derive_seed(seed, i))
        oracle = modular_oracle(weights)
        trace = Trace()
        quickstream_c(oracle.fresh(), QsConfig(k=k, c=1, eps=0.3), list(range(oracle.n)), trace)
        if not any(ev.deleted for ev in trace.events):
            result.failures.append(f"deletion run {i}: no deletion fired")
        check(trace, f"quickstream deletions {i}")

        trace = Trace()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            quickstream_largek(oracle.fresh(), k + 2, 1, list(range(oracle.n)), trace)
        check(trace, f"largek {i}")

        nm_oracle = maxcut_oracle(triangle_noise_graph(14 + (i % 3), derive_seed(seed, 100 + i)))
        trace = Trace()
        quickstream_nm(nm_oracle.fresh(), NmConfig(k=3, b=1.0, eps=0.25), list(range(nm_oracle.n)), trace)
        check(trace, f"nm {i}")

        nm_weights = geometric_modular_weights(70, 2.0, derive_seed(seed, 200 + i))
        nm_mod = modular_oracle(nm_weights)
        trace = Trace()
        quickstream_nm(nm_mod.fresh(), NmConfig(k=2, b=1.0, eps=0.3), list(range(nm_mod.n)), trace)
        if not any(ev.deleted for ev in trace.events):
            result.failures.append(f"nm deletion run {i}: no deletion fired")
        check(trace, f"nm deletions {i}")
    return result


def lower_bound_suite(
    n: int = 100, c: int = 2, budgets: tuple[int, ...] = (5, 10, 20), trials: int = 2000, seed: int = 79
) -> CampaignResult:
    """Planted-twin detection frequency stays within the proven budget bound
    and grows monotonically with the budget."""
    result = CampaignResult("lower bound: detection frequency within budget bound")
    prev = -1.0
    for budget in budgets:
        freq = lower_bound_experiment(n, c, budget, trials, seed)
        p = budget * (c - 1) / n
        sigma = math.sqrt(p * (1 - p) / trials)
        if freq > p + 3 * sigma:
            result.failures.append(f"budget {budget}: frequency {freq} > {p} + 3 sigma")
        if freq < prev:
            result.failures.append(f"budget {budget}: frequency {freq} decreased from {prev}")
        prev = freq
        result.runs += 1
    return result


def query_budget_suite(instances: int = 50, seed: int = 91) -> CampaignResult:
    """Exact query budgets on random modular instances of varied size."""
    result = CampaignResult("query budgets: exact counts per algorithm")
    gen = SplitMix64(seed)
    for i in range(instances):
        n = 10 + gen.below(491)
        c = 1 + gen.below(4)
        k = 2 + gen.below(8)
        oracle = modular_oracle(random_modular_weights(n, derive_seed(seed, i)))
        stream = list(range(n))
        blocks = math.ceil(n / c)

        o = oracle.fresh()
        quickstream_c(o, QsConfig(k=k, c=c, eps=0.1), stream)
        if o.query_count > blocks + c:
            result.failures.append(f"instance {i}: quickstream used {o.query_count} > {blocks + c}")

        o = oracle.fresh()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            quickstream_largek(o, k, c, stream)
        if o.query_count != blocks:
            result.failures.append(f"instance {i}: largek used {o.query_count} != {blocks}")

        o = oracle.fresh()
        quickstream_nm(o, NmConfig(k=k, c=c), stream)
        if o.query_count != 2 * n + 2:
            result.failures.append(f"instance {i}: nm used {o.query_count} != {2 * n + 2}")
        result.runs += 1
    return result


def run_all(max_n: int = 16, instances: int = 120, seed: int = 7) -> list[CampaignResult]:
    """The full verification battery at an adjustable scale."""
    return [
        query_budget_suite(instances=min(instances, 50), seed=derive_seed(seed, 1)),
        ratio_monotone_single_pass(instances=instances, seed=derive_seed(seed, 2), max_n=max_n),
        ratio_k1(instances=instances, seed=derive_seed(seed, 3), max_n=max_n),
        ratio_boosted(instances=instances, seed=derive_seed(seed, 4), max_n=max_n),
        ratio_nonmonotone(instances=max(20, instances // 4), seed=derive_seed(seed, 5), max_n=min(max_n, 14)),
        invariant_suite(seed=derive_seed(seed, 6)),
        lower_bound_suite(trials=500, seed=derive_seed(seed, 7)),
    ]
