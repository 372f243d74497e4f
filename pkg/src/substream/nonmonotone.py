"""Two-candidate-set single-pass maximizer for general submodular objectives,
plus the block reduction and the post-processing hook.

Non-monotonicity is controlled by keeping two disjoint buffers that compete
for each arriving element: the element is offered to the buffer where its
marginal gain is larger (ties prefer A) and accepted there when the gain
clears b*f(S)/k. Each buffer independently applies suffix-retention deletion.
Both buffer values are bookkept from the acceptance queries, which is what
holds the budget at exactly 2n + 2 queries: two marginals per element and two
terminal evaluations of the last-k suffixes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import BlockEvent, CandidateBuffer, Metrics, Solution, Trace, buffer_log_factor
from .errors import InvariantViolation, ValidationError
from .oracle import RestrictedOracle


@dataclass
class NmConfig:
    """Parameters of the two-set streaming maximizer.

    b scales the acceptance threshold; the default 1.49 optimizes the
    worst-case ratio at k = 10. beta and ell are derived: beta is the
    reciprocal of the fraction of buffer value concentrated in its last k
    elements, and ell (natural-log form) sizes the deletion suffix so that
    deletions cost at most an eps fraction of value.
    """

    k: int
    b: float = 1.49
    eps: float = 0.1
    c: int = 1
    beta: float = field(init=False)
    ell: int = field(init=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("k must be >= 1")
        if not self.b > 0:
            raise ValidationError("b must be > 0")
        if not self.eps > 0:
            raise ValidationError("eps must be > 0")
        if self.c < 1:
            raise ValidationError("c must be >= 1")
        self.beta = 1.0 / (1.0 - (1.0 + self.b / self.k) ** (-self.k))
        self.ell = max(3, math.ceil(math.log(6.0 * self.beta / self.eps + 1.0)) + 3)

    @property
    def retain_count(self) -> int:
        return math.ceil(self.ell * (self.k / self.b + 1.0) * buffer_log_factor(self.k))

    @property
    def size_bound(self) -> float:
        return 2.0 * self.ell * (self.k / self.b + 1.0) * buffer_log_factor(self.k)


def nm_ratio_bound(k: int, b: float, eps: float) -> float:
    """Worst-case OPT / f(answer) bound of the two-set single pass."""
    return (2.0 * b + 4.0) / (1.0 - (1.0 + b / k) ** (-k)) + eps


@dataclass
class NmState:
    """Final buffers of a run, for post-processing over what was retained."""

    solution: Solution
    a_elements: tuple[int, ...]
    b_elements: tuple[int, ...]


def _quickstream_nm_state(oracle, config: NmConfig, stream: Iterable[int], trace: Trace | None) -> NmState:
    k, b = config.k, config.b
    rate = b / k
    metrics = Metrics(passes=1)
    if trace is not None:
        trace.rate = rate
        trace.size_bound = config.size_bound
    start_queries = oracle.query_count
    bufs = {"A": CandidateBuffer(), "B": CandidateBuffer()}
    index = 0
    seen_any = False
    for e in stream:
        seen_any = True
        metrics.observe(len(bufs["A"]) + len(bufs["B"]) + 1)
        gains = {}
        totals = {}
        for lab in ("A", "B"):
            total = oracle.evaluate(bufs[lab].elements + (e,))
            totals[lab] = total
            gains[lab] = total - bufs[lab].value
        target = "A" if gains["A"] >= gains["B"] else "B"
        buf = bufs[target]
        value_before = buf.value
        threshold = value_before * rate
        gain = gains[target]
        accepted = gain >= threshold
        deleted = False
        if accepted:
            buf.extend((e,))
            buf.value = totals[target]
            metrics.observe(len(bufs["A"]) + len(bufs["B"]))
            if len(buf) > config.size_bound:
                buf.retain_last(config.retain_count)
                deleted = True
        if trace is not None:
            trace.record(
                BlockEvent(
                    index=index,
                    label=target,
                    gain=gain,
                    threshold=threshold,
                    accepted=accepted,
                    value_before=value_before,
                    value_after=buf.value,
                    deleted=deleted,
                    size_after=len(buf),
                    elements=(e,),
                )
            )
            if not bufs["A"].isdisjoint(bufs["B"]):
                raise InvariantViolation("candidate sets intersect")
        index += 1
    if not seen_any:
        return NmState(Solution((), 0.0, metrics, label="quickstream_nm"), (), ())
    candidates = {}
    for lab in ("A", "B"):
        suffix = bufs[lab].last(min(len(bufs[lab]), k))
        candidates[lab] = (suffix, oracle.evaluate(suffix))
    metrics.queries = oracle.query_count - start_queries
    a_prime, a_val = candidates["A"]
    b_prime, b_val = candidates["B"]
    if a_val >= b_val:
        sol = Solution(a_prime, a_val, metrics, label="quickstream_nm")
    else:
        sol = Solution(b_prime, b_val, metrics, label="quickstream_nm")
    return NmState(sol, bufs["A"].elements, bufs["B"].elements)


def quickstream_nm(oracle, config: NmConfig, stream: Iterable[int], trace: Trace | None = None) -> Solution:
    """Two-set single-pass maximizer; exactly 2n + 2 queries on n elements."""
    return _quickstream_nm_state(oracle, config, stream, trace).solution


# ---------------------------------------------------------------------------
# block reduction


def block_reduce(stream: Sequence[int], c: int) -> list[tuple[int, ...]]:
    """Group the stream into consecutive blocks of size c (last may be short)."""
    if c < 1:
        raise ValidationError("c must be >= 1")
    items = list(stream)
    return [tuple(items[i : i + c]) for i in range(0, len(items), c)]


class BlockOracle:
    """View of a parent oracle whose ground set is a list of element blocks.

    Evaluating a set of blocks evaluates the union of their elements with a
    single (counted) parent query.
    """

    def __init__(self, parent, blocks: Sequence[tuple[int, ...]]):
        self._parent = parent
        self.blocks = list(blocks)
        self.n = len(self.blocks)
        self.monotone = parent.monotone
        self.kind = f"blocked({parent.kind})"

    @property
    def query_count(self) -> int:
        return self._parent.query_count

    def evaluate(self, block_ids: Iterable[int]) -> float:
        flat: list[int] = []
        for bid in block_ids:
            if not (0 <= bid < self.n):
                raise ValidationError(f"block id {bid} out of range")
            flat.extend(self.blocks[bid])
        return self._parent.evaluate(flat)

    def ground(self) -> range:
        return range(self.n)


def unreduce(oracle, block_ids: Sequence[int], blocks: Sequence[tuple[int, ...]], k: int, c: int) -> Solution:
    """Flatten a block-level answer and return its best contiguous size-k
    chunk (at most c extra queries)."""
    from .monotone import partition_best

    flat: list[int] = []
    for bid in block_ids:
        flat.extend(blocks[bid])
    return partition_best(oracle, flat, k, c)


def run_blocked(algorithm: Callable, oracle, stream: Sequence[int], c: int, k: int) -> Solution:
    """Run `algorithm(block_oracle, block_stream)` on the c-reduced universe
    and lift its answer back to elements."""
    blocks = block_reduce(stream, c)
    view = BlockOracle(oracle, blocks)
    start_queries = oracle.query_count
    block_sol = algorithm(view, list(range(len(blocks))))
    lifted = unreduce(oracle, block_sol.elements, blocks, k, c)
    metrics = Metrics(
        queries=oracle.query_count - start_queries,
        peak_elements=block_sol.metrics.peak_elements * c,
        passes=block_sol.metrics.passes,
    )
    return Solution(lifted.elements, lifted.value, metrics, label=f"blocked_{block_sol.label}")


# ---------------------------------------------------------------------------
# post-processing


def qs_pp(
    oracle,
    config: NmConfig,
    stream: Sequence[int],
    post: Callable[[RestrictedOracle, int], Solution] | None = None,
    trace: Trace | None = None,
) -> Solution:
    """Two-set single pass followed by offline post-processing on the
    retained universe A union B; best of the three candidates.

    `post` receives an oracle restricted to the retained elements (queries
    count against the parent) and the cardinality bound. The default post
    runs the two-set booster with Gamma set to the single-pass value and
    alpha to its worst-case factor. Post-processing can only improve the
    answer; it is skipped when the single-pass value is zero.
    """
    state = _quickstream_nm_state(oracle, config, stream, trace)
    seed = state.solution
    metrics = Metrics(
        queries=seed.metrics.queries,
        peak_elements=seed.metrics.peak_elements,
        passes=seed.metrics.passes,
    )
    universe = state.a_elements + state.b_elements
    if seed.value is None or seed.value <= 0 or not universe:
        return Solution(seed.elements, seed.value, metrics, label="qs_pp")
    restricted = RestrictedOracle(oracle, universe)
    before = oracle.query_count
    if post is None:
        from .multipass import multipass_linear

        alpha = 1.0 / nm_ratio_bound(config.k, config.b, config.eps)
        improved = multipass_linear(restricted, config.k, config.eps, seed.value, alpha, list(universe))
    else:
        improved = post(restricted, config.k)
    metrics.queries += oracle.query_count - before
    metrics.passes += improved.metrics.passes
    metrics.peak_elements = max(metrics.peak_elements, improved.metrics.peak_elements)
    if improved.value is not None and improved.value > seed.value:
        return Solution(improved.elements, improved.value, metrics, label="qs_pp")
    return Solution(seed.elements, seed.value, metrics, label="qs_pp")
