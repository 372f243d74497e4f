"""Shared runtime machinery: candidate buffers, metrics, solutions, traces.

Peak-memory accounting counts stored element ids only; auxiliary scalars
(maintained objective values, thresholds) are not charged. Traces exist so
tests can replay every acceptance decision and deletion against the
invariants the algorithms promise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantViolation, ValidationError


def ceil_log2(k: int) -> int:
    """Smallest integer L with 2**L >= k; returns 0 for k = 1."""
    if k < 1:
        raise ValidationError("ceil_log2 requires k >= 1")
    return (k - 1).bit_length()


def buffer_log_factor(k: int) -> int:
    """ceil(log2 k) clamped to at least 1 so size bounds stay positive at k=1."""
    return max(1, ceil_log2(k))


@dataclass
class Metrics:
    """Per-run accounting: queries, peak stored elements, stream passes."""

    queries: int = 0
    peak_elements: int = 0
    passes: int = 0

    def observe(self, stored: int) -> None:
        if stored > self.peak_elements:
            self.peak_elements = stored


@dataclass
class Solution:
    """A feasible answer: at most k elements plus bookkeeping.

    `value` is the recorded oracle evaluation of `elements`. Algorithms whose
    query budget forbids a terminal evaluation return value=None; call
    :meth:`ensure_value` to fill it with one (counted) query.
    """

    elements: tuple[int, ...]
    value: float | None
    metrics: Metrics = field(default_factory=Metrics)
    label: str = ""

    def ensure_value(self, oracle) -> float:
        if self.value is None:
            self.value = oracle.evaluate(self.elements)
            self.metrics.queries += 1
        return self.value


class CandidateBuffer:
    """Insertion-ordered element sequence with suffix-retention deletion."""

    __slots__ = ("_items", "_members", "value")

    def __init__(self):
        self._items: list[int] = []
        self._members: set[int] = set()
        self.value = 0.0

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, e: int) -> bool:
        return e in self._members

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(self._items)

    def extend(self, block) -> None:
        for e in block:
            if e in self._members:
                raise InvariantViolation(f"duplicate element {e} in candidate buffer")
            self._items.append(e)
            self._members.add(e)

    def retain_last(self, count: int) -> None:
        if count < 0:
            raise ValidationError("retain count must be nonnegative")
        if count < len(self._items):
            dropped = self._items[: len(self._items) - count]
            self._items = self._items[len(self._items) - count:]
            self._members.difference_update(dropped)

    def last(self, count: int) -> tuple[int, ...]:
        if count <= 0:
            return ()
        return tuple(self._items[-count:])

    def isdisjoint(self, other: "CandidateBuffer") -> bool:
        return self._members.isdisjoint(other._members)


@dataclass
class BlockEvent:
    """One stream-loop decision, as recorded for invariant replay."""

    index: int
    label: str
    gain: float
    threshold: float
    accepted: bool
    value_before: float
    value_after: float
    deleted: bool
    size_after: int
    elements: tuple[int, ...] = ()


@dataclass
class Trace:
    """Decision log for one streaming run plus the bounds it must respect.

    rate: acceptance threshold as a fraction of the maintained value
    (1/k, c/k, or b/k depending on the algorithm). size_bound: maximum
    buffer length allowed at loop exit of any iteration.
    """

    rate: float = 0.0
    size_bound: float = float("inf")
    events: list[BlockEvent] = field(default_factory=list)
    tau_schedule: list[float] = field(default_factory=list)
    tau_start: float = 0.0
    tau_floor: float = 0.0
    tau_decay_first: bool = True
    early_exit: bool = False
    # (gain, active tau) per accepted element in descending-threshold passes
    accept_log: list[tuple[float, float]] = field(default_factory=list)

    def record(self, event: BlockEvent) -> None:
        self.events.append(event)

    def validate(self) -> None:
        """Replay every recorded decision against the promised invariants."""
        last_value: dict[str, float] = {}
        for ev in self.events:
            prev = last_value.get(ev.label, 0.0)
            if ev.value_before != prev:
                raise InvariantViolation(
                    f"maintained value discontinuity at block {ev.index}: {ev.value_before} != {prev}"
                )
            if ev.threshold != ev.value_before * self.rate:
                raise InvariantViolation(f"threshold mismatch at block {ev.index}")
            if ev.accepted != (ev.gain >= ev.threshold):
                raise InvariantViolation(f"acceptance branch mismatch at block {ev.index}")
            if ev.accepted and ev.value_after - ev.value_before != ev.gain:
                # the recorded gain is exactly the value step, so every
                # acceptance grows the value by at least the rate fraction
                raise InvariantViolation(f"gain replay mismatch at block {ev.index}")
            if ev.value_after < ev.value_before:
                raise InvariantViolation(f"maintained value decreased at block {ev.index}")
            if not ev.accepted and ev.value_after != ev.value_before:
                raise InvariantViolation(f"value changed on rejection at block {ev.index}")
            if ev.size_after > self.size_bound:
                raise InvariantViolation(
                    f"buffer size {ev.size_after} exceeds bound {self.size_bound} at block {ev.index}"
                )
            last_value[ev.label] = ev.value_after

    def validate_tau(self, eps: float) -> None:
        """The recorded per-pass thresholds must be exactly the geometric
        sequence the algorithm promises, and the loop must have stopped at
        the recorded floor unless it exited early (full solution)."""
        expected = self.tau_start * (1.0 - eps) if self.tau_decay_first else self.tau_start
        for i, tau in enumerate(self.tau_schedule):
            if tau != expected:
                raise InvariantViolation(f"tau schedule mismatch at pass {i}")
            expected = expected * (1.0 - eps)
        if self.tau_decay_first:
            # the loop condition inspects pre-decay values: start, used_1, ...
            check_values = [self.tau_start] + self.tau_schedule[:-1]
        else:
            check_values = list(self.tau_schedule)
        for v in check_values:
            if v < self.tau_floor:
                raise InvariantViolation("a pass ran below the tau floor")
        if not self.early_exit and self.tau_schedule:
            if self.tau_decay_first:
                # next iteration's pre-decay check value is the last used tau
                if self.tau_schedule[-1] >= self.tau_floor:
                    raise InvariantViolation("loop continued past the tau floor")
            else:
                if expected >= self.tau_floor:
                    raise InvariantViolation("loop continued past the tau floor")
        for gain, tau in self.accept_log:
            if gain < tau:
                raise InvariantViolation("acceptance below the active threshold")
