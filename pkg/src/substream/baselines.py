"""Reference algorithms: greedy (plain and lazy), stochastic greedy,
threshold sieves, uniform random sampling, and exhaustive search.

The lazy greedy reproduces the plain greedy's output exactly, including tie
handling (lowest element id wins), by re-deciding a popped heap entry against
the next cached bound and the tied element's id.
"""

from __future__ import annotations

import heapq
import itertools
import math
from typing import Iterable

from .core import Metrics, Solution
from .errors import ValidationError
from .rng import SplitMix64


def greedy(oracle, k: int, *, lazy: bool = False) -> Solution:
    """k rounds of best-marginal selection; stops early when the best gain
    is no longer positive. Plain mode queries every remaining element per
    round; lazy mode skips elements whose cached bound proves they cannot
    win, returning the identical set."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    return _greedy_lazy(oracle, k) if lazy else _greedy_plain(oracle, k)


def _greedy_plain(oracle, k: int) -> Solution:
    ground = list(oracle.ground())
    metrics = Metrics(passes=min(k, len(ground)))
    start_queries = oracle.query_count
    chosen: list[int] = []
    members: set[int] = set()
    value = 0.0
    for _ in range(min(k, len(ground))):
        best_e = -1
        best_gain = -math.inf
        best_total = 0.0
        for e in ground:
            if e in members:
                continue
            total = oracle.evaluate(chosen + [e])
            gain = total - value
            if gain > best_gain:
                best_gain = gain
                best_e = e
                best_total = total
        if best_e < 0 or best_gain <= 0.0:
            break
        chosen.append(best_e)
        members.add(best_e)
        value = best_total
        metrics.observe(len(chosen))
    metrics.queries = oracle.query_count - start_queries
    return Solution(tuple(chosen), value, metrics, label="greedy")


def _greedy_lazy(oracle, k: int) -> Solution:
    ground = list(oracle.ground())
    metrics = Metrics(passes=min(k, len(ground)))
    start_queries = oracle.query_count
    chosen: list[int] = []
    value = 0.0
    # heap entries: (-cached_bound, element); stamps mark the round in which
    # the bound was last refreshed, so a fresh entry is never re-queried
    heap: list[tuple[float, int]] = []
    stamp: dict[int, int] = {}
    fresh_total: dict[int, float] = {}
    for e in ground:
        total = oracle.evaluate([e])
        heap.append((-total, e))
        stamp[e] = 1
        fresh_total[e] = total
    heapq.heapify(heap)
    metrics.observe(len(ground))
    for round_no in range(1, min(k, len(ground)) + 1):
        picked = None
        while heap:
            neg_bound, e = heapq.heappop(heap)
            if stamp[e] != round_no:
                total = oracle.evaluate(chosen + [e])
                gain = total - value
                stamp[e] = round_no
                fresh_total[e] = total
            else:
                gain = -neg_bound
            if not heap:
                picked = (e, gain)
                break
            top_bound = -heap[0][0]
            top_id = heap[0][1]
            # accept once no remaining bound can beat this exact gain; on a
            # tied bound the lower id must win, matching plain greedy
            if gain > top_bound or (gain == top_bound and e < top_id):
                picked = (e, gain)
                break
            heapq.heappush(heap, (-gain, e))
        if picked is None:
            break
        e, gain = picked
        if gain <= 0.0:
            break
        chosen.append(e)
        value = fresh_total[e]
        metrics.observe(len(ground) + len(chosen))
    metrics.queries = oracle.query_count - start_queries
    return Solution(tuple(chosen), value, metrics, label="greedy_lazy")


def stochastic_greedy(oracle, k: int, eps: float, seed: int) -> Solution:
    """k rounds, each sampling ceil((n/k) * ln(1/eps)) unselected elements
    without replacement and taking the best of the sample."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not (0 < eps < 1):
        raise ValidationError("eps must lie in (0, 1)")
    ground = list(oracle.ground())
    n = len(ground)
    gen = SplitMix64(seed)
    sample_size = math.ceil((n / k) * math.log(1.0 / eps))
    metrics = Metrics(passes=min(k, n))
    start_queries = oracle.query_count
    chosen: list[int] = []
    members: set[int] = set()
    value = 0.0
    for _ in range(min(k, n)):
        pool = [e for e in ground if e not in members]
        if not pool:
            break
        take = min(sample_size, len(pool))
        sample = gen.sample(pool, take)
        metrics.observe(len(chosen) + len(pool))
        best_e = -1
        best_gain = -math.inf
        best_total = 0.0
        for e in sorted(sample):
            total = oracle.evaluate(chosen + [e])
            gain = total - value
            if gain > best_gain:
                best_gain = gain
                best_e = e
                best_total = total
        if best_e < 0 or best_gain <= 0.0:
            continue
        chosen.append(best_e)
        members.add(best_e)
        value = best_total
        metrics.observe(len(chosen))
    metrics.queries = oracle.query_count - start_queries
    return Solution(tuple(chosen), value, metrics, label="ltl")


class _Sieve:
    __slots__ = ("items", "members", "value")

    def __init__(self):
        self.items: list[int] = []
        self.members: set[int] = set()
        self.value = 0.0


def sieve_stream_pp(oracle, k: int, eps: float, stream: Iterable[int]) -> Solution:
    """Single-pass threshold sieves over the guess grid {(1+eps)^i}.

    Maintains the max singleton Delta and a certified lower bound LB; live
    guesses v satisfy LB <= v <= 2k*Delta. A sieve at guess v accepts an
    element when its marginal is at least (v/2 - f(S_v)) / (k - |S_v|).
    Sieves whose guess falls below LB are pruned (their best snapshot is
    remembered). Returns the best snapshot, sieve, or singleton.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not (0 < eps < 1):
        raise ValidationError("eps must lie in (0, 1)")
    metrics = Metrics(passes=1)
    start_queries = oracle.query_count
    base = 1.0 + eps
    sieves: dict[int, _Sieve] = {}
    delta = 0.0
    best_single: tuple[int, ...] = ()
    lb = 0.0
    best_snapshot: tuple[tuple[int, ...], float] = ((), 0.0)

    def grid_range(lo: float, hi: float) -> range:
        if hi <= 0 or lo > hi:
            return range(0)
        i_lo = math.ceil(round(math.log(lo, base), 12)) if lo > 0 else 0
        i_hi = math.floor(round(math.log(hi, base), 12))
        return range(i_lo, i_hi + 1)

    for e in stream:
        single = oracle.evaluate((e,))
        if single > delta:
            delta = single
            best_single = (e,)
        lb = max(lb, delta)
        if delta > 0:
            wanted = grid_range(lb, 2.0 * k * delta)
            for i in wanted:
                if i not in sieves:
                    sieves[i] = _Sieve()
            for i in list(sieves):
                if i not in wanted:
                    sv = sieves.pop(i)
                    if sv.value > best_snapshot[1]:
                        best_snapshot = (tuple(sv.items), sv.value)
        for i, sv in sieves.items():
            if len(sv.items) >= k or e in sv.members:
                continue
            v = base**i
            total = oracle.evaluate(sv.items + [e])
            gain = total - sv.value
            if gain >= (v / 2.0 - sv.value) / (k - len(sv.items)):
                sv.items.append(e)
                sv.members.add(e)
                sv.value = total
                if sv.value > lb:
                    lb = sv.value
        metrics.observe(sum(len(sv.items) for sv in sieves.values()) + 1)
    metrics.queries = oracle.query_count - start_queries
    best_elems, best_value = best_snapshot
    for sv in sieves.values():
        if sv.value > best_value:
            best_elems, best_value = tuple(sv.items), sv.value
    # on a tie the max singleton is the tidier answer
    if delta >= best_value and delta > 0.0:
        best_elems, best_value = best_single, delta
    return Solution(best_elems, best_value, metrics, label="sieve")


def random_baseline(oracle, k: int, trials: int, seed: int) -> Solution:
    """Best of `trials` uniform size-k subsets; one query per trial."""
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    if k < 1:
        raise ValidationError("k must be >= 1")
    ground = list(oracle.ground())
    gen = SplitMix64(seed)
    metrics = Metrics(passes=1)
    start_queries = oracle.query_count
    size = min(k, len(ground))
    best: tuple[int, ...] = ()
    best_value = -math.inf
    for _ in range(trials):
        pick = tuple(sorted(gen.sample(ground, size)))
        metrics.observe(len(pick))
        value = oracle.evaluate(pick)
        if value > best_value:
            best_value = value
            best = pick
    metrics.queries = oracle.query_count - start_queries
    return Solution(best, best_value, metrics, label="random")


def brute_force_opt(oracle, k: int, *, limit: int = 10_000_000) -> Solution:
    """Exact optimum by enumeration; the test oracle for ratio properties.

    Monotone objectives only need sets of size exactly min(k, n); general
    objectives scan every size up to k. Refuses instances whose enumeration
    would exceed `limit` evaluations.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    ground = sorted(oracle.ground())
    n = len(ground)
    top = min(k, n)
    sizes = [top] if oracle.monotone else list(range(0, top + 1))
    total = sum(math.comb(n, s) for s in sizes)
    if total > limit:
        raise ValidationError(f"instance too large for brute force: {total} subsets")
    metrics = Metrics(passes=1)
    start_queries = oracle.query_count
    best: tuple[int, ...] = ()
    best_value = 0.0 if not oracle.monotone else -math.inf
    for s in sizes:
        for combo in itertools.combinations(ground, s):
            value = oracle.evaluate(combo)
            metrics.observe(len(combo))
            if value > best_value:
                best_value = value
                best = combo
    if best_value == -math.inf:
        best_value = 0.0
    metrics.queries = oracle.query_count - start_queries
    return Solution(best, best_value, metrics, label="brute_force")
