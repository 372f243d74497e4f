"""Single-pass streaming maximizers for monotone objectives.

All four algorithms process the stream in blocks of c elements and pay one
oracle query per block. The maintained objective value of the candidate
buffer is bookkept from accepted query results and never re-queried; after a
suffix deletion the bookkept value refers to the pre-deletion set, which for
monotone objectives only tightens the acceptance threshold. That bookkeeping
is what makes the stated query budgets achievable.

Tie-breaking everywhere: earliest candidate wins.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import BlockEvent, CandidateBuffer, Metrics, Solution, Trace, buffer_log_factor
from .errors import ValidationError


@dataclass
class QsConfig:
    """Parameters of the buffered-block streaming maximizer.

    ell is derived from eps (more accuracy keeps a longer deletion suffix)
    and clamped to >= 2, the smallest value for which the retained suffix
    still dominates everything deleted before it.
    """

    k: int
    c: int = 1
    eps: float = 0.1
    ell: int = field(init=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        if self.c < 1:
            raise ValidationError("c must be >= 1")
        if not self.eps > 0:
            raise ValidationError("eps must be > 0")
        self.ell = max(2, math.ceil(math.log2(1.0 / (4.0 * self.eps))) + 2)


def _blocks(stream: Iterable[int], c: int):
    """Yield the stream in chunks of c, flushing the final partial chunk."""
    block: list[int] = []
    for e in stream:
        block.append(e)
        if len(block) == c:
            yield tuple(block)
            block = []
    if block:
        yield tuple(block)


def partition_best(oracle, elements: Sequence[int], k: int, c: int) -> Solution:
    """Best piece of the contiguous partition of `elements` into <= c chunks
    of size <= k. One query per chunk; first chunk wins ties."""
    elements = tuple(elements)
    if len(elements) > c * k:
        raise ValidationError(f"partition_best got {len(elements)} elements, limit is c*k = {c * k}")
    metrics = Metrics()
    if not elements:
        return Solution((), 0.0, metrics, label="partition_best")
    best: tuple[int, ...] | None = None
    best_value = -math.inf
    for i in range(0, len(elements), k):
        chunk = elements[i : i + k]
        value = oracle.evaluate(chunk)
        metrics.queries += 1
        if value > best_value:
            best_value = value
            best = chunk
    assert best is not None
    return Solution(best, best_value, metrics, label="partition_best")


class _TopBlockTracker:
    """The k highest-gain blocks seen so far, in a sorted list.

    Insertion position is found by binary search on the (gain, -index) key,
    so a block costs at most ceil(log2(k + 1)) key comparisons; among equal
    gains the earlier block survives eviction. `comparisons` records the
    count per offer for the complexity test.
    """

    def __init__(self, k: int):
        self.k = k
        self._entries: list[tuple[float, int, tuple[int, ...]]] = []
        self.comparisons: list[int] = []

    def offer(self, gain: float, index: int, block: tuple[int, ...]) -> None:
        key = (gain, -index)
        lo, hi = 0, len(self._entries)
        steps = 0
        while lo < hi:
            mid = (lo + hi) // 2
            steps += 1
            if self._entries[mid][:2] < key:
                lo = mid + 1
            else:
                hi = mid
        self.comparisons.append(steps)
        self._entries.insert(lo, (gain, -index, block))
        if len(self._entries) > self.k:
            self._entries.pop(0)

    def stored_elements(self) -> int:
        return sum(len(e[2]) for e in self._entries)

    def blocks_in_stream_order(self) -> list[tuple[int, ...]]:
        return [e[2] for e in sorted(self._entries, key=lambda e: -e[1])]


def _run_block_stream(
    oracle,
    stream: Iterable[int],
    *,
    c: int,
    rate: float,
    size_bound: int,
    retain: int,
    metrics: Metrics,
    trace: Trace | None,
    tracker: _TopBlockTracker | None = None,
) -> CandidateBuffer:
    """Shared stream loop: threshold acceptance plus suffix deletion."""
    buf = CandidateBuffer()
    for index, block in enumerate(_blocks(stream, c)):
        metrics.observe(len(buf) + len(block))
        value_before = buf.value
        threshold = value_before * rate
        total = oracle.evaluate(buf.elements + block)
        metrics.queries += 1
        gain = total - value_before
        accepted = gain >= threshold
        if tracker is not None:
            tracker.offer(gain, index, block)
            metrics.observe(len(buf) + len(block) + tracker.stored_elements())
        deleted = False
        if accepted:
            buf.extend(block)
            buf.value = total
            metrics.observe(len(buf) + (tracker.stored_elements() if tracker else 0))
            if len(buf) > size_bound:
                buf.retain_last(retain)
                deleted = True
        if trace is not None:
            trace.record(
                BlockEvent(
                    index=index,
                    label="A",
                    gain=gain,
                    threshold=threshold,
                    accepted=accepted,
                    value_before=value_before,
                    value_after=buf.value,
                    deleted=deleted,
                    size_after=len(buf),
                    elements=block,
                )
            )
    return buf


def quickstream_c(oracle, config: QsConfig, stream: Iterable[int], trace: Trace | None = None) -> Solution:
    """Buffered-block streaming maximizer with the variable threshold f(A)/k.

    Accepts a block when its measured gain is at least the maintained value
    over k; trims the buffer to its most recent half-suffix when it outgrows
    the configured bound. The answer is the best piece of the contiguous
    partition of the last c*k retained elements. Query cost on n elements:
    ceil(n/c) during the stream plus at most c at the end.
    """
    k, c = config.k, config.c
    if k < 2:
        raise ValidationError("quickstream_c requires k >= 2; use dispatch_monotone for k = 1")
    log_k = buffer_log_factor(k)
    retain = c * config.ell * (k + 1) * log_k
    size_bound = 2 * retain
    metrics = Metrics(passes=1)
    if trace is not None:
        trace.rate = 1.0 / k
        trace.size_bound = size_bound
    start = oracle.query_count
    buf = _run_block_stream(
        oracle,
        stream,
        c=c,
        rate=1.0 / k,
        size_bound=size_bound,
        retain=retain,
        metrics=metrics,
        trace=trace,
    )
    if len(buf) == 0:
        metrics.queries = oracle.query_count - start
        return Solution((), 0.0, metrics, label="quickstream")
    aprime = buf.last(min(len(buf), c * k))
    part = partition_best(oracle, aprime, k, c)
    metrics.queries = oracle.query_count - start
    return Solution(part.elements, part.value, metrics, label="quickstream")


def quickstream_pp(oracle, config: QsConfig, stream: Iterable[int], trace: Trace | None = None) -> Solution:
    """quickstream_c plus recovery of high-gain blocks that deletion lost.

    Tracks the k blocks with the highest observed marginal gain (no extra
    queries mid-stream), then compares the best contiguous size-k piece of
    those tracked elements against the plain answer. At most 2c queries after
    the stream ends.
    """
    k, c = config.k, config.c
    if k < 2:
        raise ValidationError("quickstream_pp requires k >= 2; use dispatch_monotone for k = 1")
    log_k = buffer_log_factor(k)
    retain = c * config.ell * (k + 1) * log_k
    size_bound = 2 * retain
    metrics = Metrics(passes=1)
    if trace is not None:
        trace.rate = 1.0 / k
        trace.size_bound = size_bound
    tracker = _TopBlockTracker(k)
    start = oracle.query_count
    buf = _run_block_stream(
        oracle,
        stream,
        c=c,
        rate=1.0 / k,
        size_bound=size_bound,
        retain=retain,
        metrics=metrics,
        trace=trace,
        tracker=tracker,
    )
    if len(buf) == 0:
        metrics.queries = oracle.query_count - start
        return Solution((), 0.0, metrics, label="quickstream_pp")
    aprime = buf.last(min(len(buf), c * k))
    own = partition_best(oracle, aprime, k, c)
    tracked_elements = tuple(e for block in tracker.blocks_in_stream_order() for e in block)
    recovered = partition_best(oracle, tracked_elements, k, c)
    best = own if own.value >= recovered.value else recovered
    metrics.queries = oracle.query_count - start
    return Solution(best.elements, best.value, metrics, label="quickstream_pp")


def qs_small(oracle, k: int, c: int, stream: Iterable[int]) -> Solution:
    """Best-block scanner for the k = 1 regime.

    Keeps the strictly best block seen (ties keep the earliest), then returns
    the best singleton inside it. ceil(n/c) block queries plus at most c
    singleton queries; the singleton re-query is skipped when the kept block
    is itself a singleton.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if c < 1:
        raise ValidationError("c must be >= 1")
    metrics = Metrics(passes=1)
    best_block: tuple[int, ...] = ()
    best_value = 0.0
    stored = 0
    for block in _blocks(stream, c):
        metrics.observe(len(best_block) + len(block))
        value = oracle.evaluate(block)
        metrics.queries += 1
        if value > best_value:
            best_value = value
            best_block = block
        stored = max(stored, len(best_block))
    if not best_block:
        return Solution((), 0.0, metrics, label="qs_small")
    if len(best_block) == 1:
        return Solution(best_block, best_value, metrics, label="qs_small")
    best_single: tuple[int, ...] | None = None
    best_single_value = -math.inf
    for e in best_block:
        value = oracle.evaluate((e,))
        metrics.queries += 1
        if value > best_single_value:
            best_single_value = value
            best_single = (e,)
    assert best_single is not None
    return Solution(best_single, best_single_value, metrics, label="qs_small")


def quickstream_largek(oracle, k: int, c: int, stream: Iterable[int], trace: Trace | None = None) -> Solution:
    """Streaming maximizer tuned for k >= 8c/e: steeper threshold c*f(A)/k,
    no terminal partition, exactly ceil(n/c) queries.

    Returns the last min(|A|, k) retained elements directly. When the buffer
    outgrew k at some point, the value of the returned suffix was never
    queried; Solution.value is then None and callers evaluate it on demand.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if c < 1:
        raise ValidationError("c must be >= 1")
    if k < 8 * c / math.e:
        warnings.warn(
            f"quickstream_largek called with k={k} below the 8c/e regime (c={c}); no ratio guarantee",
            RuntimeWarning,
            stacklevel=2,
        )
    log_k = buffer_log_factor(k)
    retain = 2 * c * (k + 1) * log_k
    size_bound = 2 * retain
    metrics = Metrics(passes=1)
    if trace is not None:
        trace.rate = c / k
        trace.size_bound = size_bound
    start = oracle.query_count
    buf = _run_block_stream(
        oracle,
        stream,
        c=c,
        rate=c / k,
        size_bound=size_bound,
        retain=retain,
        metrics=metrics,
        trace=trace,
    )
    metrics.queries = oracle.query_count - start
    if len(buf) == 0:
        return Solution((), 0.0, metrics, label="quickstream_largek")
    aprime = buf.last(min(len(buf), k))
    # no deletion ever fired iff |A| <= k, in which case the bookkept value
    # is exactly the value of the returned set
    value = buf.value if len(buf) <= k else None
    return Solution(aprime, value, metrics, label="quickstream_largek")


def dispatch_monotone(oracle, k: int, c: int, eps: float, stream: Iterable[int], trace: Trace | None = None) -> Solution:
    """Route to the right single-pass algorithm for the given k.

    k = 1 goes to the best-block scanner, 1 < k < 8c/e to the f(A)/k
    threshold, and k >= 8c/e to the steep-threshold variant.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if k == 1:
        return qs_small(oracle, k, c, stream)
    if k < 8 * c / math.e:
        return quickstream_c(oracle, QsConfig(k=k, c=c, eps=eps), stream, trace)
    return quickstream_largek(oracle, k, c, stream, trace)


def dispatch_alpha(k: int, c: int, eps: float) -> float:
    """Worst-case approximation factor of the branch dispatch_monotone runs.

    Used by multi-pass boosting to size its threshold grid. The k = 1 branch
    is exactly 1/c. The middle branch constant comes from the deletion-loss
    accounting at the configured ell, divided by c for the terminal
    partition. The large-k branch constant is the closed form proved for the
    steep threshold.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    if k == 1:
        return 1.0 / c
    if k < 8 * c / math.e:
        ell = QsConfig(k=k, c=c, eps=eps).ell
        return 1.0 / (c * (4.0 + 2.0 / (float(k) ** ell - 1.0)))
    e = math.e
    lead = 1.0 / (1.0 + c + 1.0 / (float(k) ** 3 - 1.0))
    tail = 1.0 - 1.0 / e - (2.0 * c) / (k * e) - (c * c) / (k * k * e)
    return lead * tail
