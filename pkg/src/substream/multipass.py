"""Multi-pass descending-threshold boosters.

Both routines take a seed value Gamma with a factor alpha such that
Gamma <= OPT <= Gamma / alpha, sweep a threshold downward by (1 - eps) per
pass over a replayable stream, and grow candidate sets by marginal-gain
acceptance. The compositions at the bottom obtain (Gamma, alpha) from the
single-pass algorithms and return the better of the two answers.

Lazy mode caches each element's last observed marginal as an upper bound
(valid by submodularity) and skips the query when the bound already sits
below the active threshold. Skipped evaluations can never change which set
accepts an element, so lazy mode alters query counts only; it is off by
default so that reported counts reflect the streaming-faithful algorithm.
"""

from __future__ import annotations

import math
from typing import Sequence

from .core import Metrics, Solution, Trace
from .errors import ValidationError
from .monotone import dispatch_alpha, dispatch_monotone
from .nonmonotone import NmConfig, nm_ratio_bound, quickstream_nm


def _validate_boost_args(gamma: float, eps: float, *, eps_inclusive_half: bool) -> None:
    if not gamma > 0:
        raise ValidationError("Gamma must be positive")
    if eps_inclusive_half:
        if not (0 < eps <= 0.5):
            raise ValidationError("eps must lie in (0, 1/2]")
    else:
        if not (0 < eps < 0.5):
            raise ValidationError("eps must lie in (0, 1/2)")


def boost_ratio(
    oracle,
    k: int,
    alpha: float,
    gamma: float,
    eps: float,
    stream: Sequence[int],
    *,
    lazy: bool = False,
    trace: Trace | None = None,
) -> Solution:
    """Grow one set by descending-threshold passes until |A| = k or the
    threshold sinks below Gamma/(8k).

    The threshold is multiplied by (1 - eps) at the top of each pass, with
    the exit condition checked on the pre-decay value, so the pass count is
    at most ceil(ln(8/alpha)/eps) + 1. At most one marginal query per element
    per pass; elements already taken are skipped.
    """
    _validate_boost_args(gamma, eps, eps_inclusive_half=False)
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not (0 < alpha <= 1):
        raise ValidationError("alpha must lie in (0, 1]")
    metrics = Metrics()
    start_queries = oracle.query_count
    tau = gamma / (alpha * k)
    floor = gamma / (8.0 * k)
    if trace is not None:
        trace.tau_start = tau
        trace.tau_floor = floor
        trace.tau_decay_first = True
    chosen: list[int] = []
    members: set[int] = set()
    value = 0.0
    bounds: dict[int, float] = {}
    while tau >= floor:
        tau = tau * (1.0 - eps)
        metrics.passes += 1
        if trace is not None:
            trace.tau_schedule.append(tau)
        for e in stream:
            if e in members:
                continue
            if lazy and bounds.get(e, math.inf) < tau:
                continue
            total = oracle.evaluate(chosen + [e])
            gain = total - value
            if lazy:
                bounds[e] = gain
            if gain >= tau:
                if trace is not None:
                    trace.accept_log.append((gain, tau))
                chosen.append(e)
                members.add(e)
                value = total
                metrics.observe(len(chosen))
                if len(chosen) == k:
                    metrics.queries = oracle.query_count - start_queries
                    if trace is not None:
                        trace.early_exit = True
                    return Solution(tuple(chosen), value, metrics, label="boost_ratio")
    metrics.queries = oracle.query_count - start_queries
    return Solution(tuple(chosen), value, metrics, label="boost_ratio")


def multipass_linear(
    oracle,
    k: int,
    eps: float,
    gamma: float,
    alpha: float,
    stream: Sequence[int],
    *,
    lazy: bool = False,
    trace: Trace | None = None,
) -> Solution:
    """Two disjoint size-capped sets grown by descending-threshold passes.

    Works for general submodular objectives. An element goes to the feasible
    (size < k) set where its marginal is larger, provided that gain clears
    the active threshold; the marginal to the other feasible set can never
    exceed the winner's, so a discard is a true discard. Once both sets are
    full the scan stops. The threshold runs from Gamma/(4k*alpha) down to
    eps*Gamma/(16k), decaying after each pass. The better set is returned
    with its bookkept value; no terminal query.
    """
    _validate_boost_args(gamma, eps, eps_inclusive_half=True)
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not (0 < alpha <= 1):
        raise ValidationError("alpha must lie in (0, 1]")
    metrics = Metrics()
    start_queries = oracle.query_count
    tau = gamma / (4.0 * k * alpha)
    floor = eps * gamma / (16.0 * k)
    if trace is not None:
        trace.tau_start = tau
        trace.tau_floor = floor
        trace.tau_decay_first = False
    sets: dict[str, list[int]] = {"A": [], "B": []}
    values = {"A": 0.0, "B": 0.0}
    members: set[int] = set()
    bounds: dict[str, dict[int, float]] = {"A": {}, "B": {}}
    both_full = False
    while tau >= floor and not both_full:
        metrics.passes += 1
        if trace is not None:
            trace.tau_schedule.append(tau)
        for e in stream:
            if e in members:
                continue
            feasible = [lab for lab in ("A", "B") if len(sets[lab]) < k]
            if not feasible:
                both_full = True
                if trace is not None:
                    trace.early_exit = True
                break
            best_label: str | None = None
            best_gain = -math.inf
            best_total = 0.0
            for lab in feasible:
                if lazy and bounds[lab].get(e, math.inf) < tau:
                    continue
                total = oracle.evaluate(sets[lab] + [e])
                gain = total - values[lab]
                if lazy:
                    bounds[lab][e] = gain
                if gain > best_gain:
                    best_gain = gain
                    best_label = lab
                    best_total = total
            if best_label is not None and best_gain >= tau:
                if trace is not None:
                    trace.accept_log.append((best_gain, tau))
                sets[best_label].append(e)
                values[best_label] = best_total
                members.add(e)
                metrics.observe(len(sets["A"]) + len(sets["B"]))
        tau = tau * (1.0 - eps)
    metrics.queries = oracle.query_count - start_queries
    if values["A"] >= values["B"]:
        return Solution(tuple(sets["A"]), values["A"], metrics, label="multipass_linear")
    return Solution(tuple(sets["B"]), values["B"], metrics, label="multipass_linear")


def qs_br(oracle, k: int, c: int, eps: float, stream: Sequence[int], *, lazy: bool = False) -> Solution:
    """Single-pass seed run followed by ratio boosting; best of the two.

    The seed run supplies Gamma (its value) and alpha (the worst-case factor
    of the branch that ran). A seed value of zero means the objective is
    identically zero on feasible sets, so boosting is skipped.
    """
    metrics = Metrics()
    start_queries = oracle.query_count
    seed = dispatch_monotone(oracle, k, c, eps, stream)
    seed.ensure_value(oracle)
    if seed.value is None or seed.value <= 0:
        metrics.queries = oracle.query_count - start_queries
        metrics.passes = 1
        metrics.peak_elements = seed.metrics.peak_elements
        return Solution(seed.elements, seed.value, metrics, label="qs_br")
    alpha = dispatch_alpha(k, c, eps)
    boosted = boost_ratio(oracle, k, alpha, seed.value, eps, stream, lazy=lazy)
    metrics.queries = oracle.query_count - start_queries
    metrics.passes = 1 + boosted.metrics.passes
    metrics.peak_elements = max(seed.metrics.peak_elements, boosted.metrics.peak_elements)
    if boosted.value is not None and boosted.value >= seed.value:
        return Solution(boosted.elements, boosted.value, metrics, label="qs_br")
    return Solution(seed.elements, seed.value, metrics, label="qs_br")


def qs_mpl(oracle, k: int, eps: float, b: float, stream: Sequence[int], *, lazy: bool = False) -> Solution:
    """Two-set single-pass seed run followed by the two-set booster.

    alpha is the reciprocal of the single-pass worst-case ratio at these
    parameters, so Gamma <= OPT <= Gamma/alpha holds whenever the seed run's
    guarantee does.
    """
    metrics = Metrics()
    start_queries = oracle.query_count
    config = NmConfig(k=k, b=b, eps=eps)
    seed = quickstream_nm(oracle, config, stream)
    if seed.value is None or seed.value <= 0:
        metrics.queries = oracle.query_count - start_queries
        metrics.passes = 1
        metrics.peak_elements = seed.metrics.peak_elements
        return Solution(seed.elements, seed.value, metrics, label="qs_mpl")
    alpha = 1.0 / nm_ratio_bound(k, b, eps)
    boosted = multipass_linear(oracle, k, eps, seed.value, alpha, stream, lazy=lazy)
    metrics.queries = oracle.query_count - start_queries
    metrics.passes = 1 + boosted.metrics.passes
    metrics.peak_elements = max(seed.metrics.peak_elements, boosted.metrics.peak_elements)
    if boosted.value is not None and boosted.value >= seed.value:
        return Solution(boosted.elements, boosted.value, metrics, label="qs_mpl")
    return Solution(seed.elements, seed.value, metrics, label="qs_mpl")
