"""Deterministic pseudo-random primitives used by every randomized component.

All randomness in this package comes from a splitmix64 stream so that results
reproduce bit for bit across machines and so that an independent
implementation can regenerate identical instances from the same seed. The
generator is fixed exactly as follows (all arithmetic mod 2**64):

    state  <- state + 0x9E3779B97F4A7C15
    z      <- state
    z      <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9
    z      <- (z XOR (z >> 27)) * 0x94D049BB133111EB
    output <- z XOR (z >> 31)

Derived quantities:

* float in the open interval (0, 1):  u = ((output >> 11) + 0.5) * 2**-53
* bounded integer below m:            output mod m
* shuffle: Fisher-Yates from the last index down; at index i the swap
  partner is below(i + 1)
* sample without replacement: partial Fisher-Yates over a copy of the pool,
  taking the first `size` slots
"""

from __future__ import annotations

from typing import Iterable, Sequence

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """The package-wide pseudo-random stream. See module docstring."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix(self._state)

    def next_float(self) -> float:
        """Uniform binary64 in the open interval (0, 1)."""
        return ((self.next_u64() >> 11) + 0.5) * 2.0**-53

    def below(self, m: int) -> int:
        """Uniform integer in [0, m). Requires m >= 1."""
        if m < 1:
            raise ValueError("below() requires m >= 1")
        return self.next_u64() % m

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, pool: Sequence[int], size: int) -> list[int]:
        """`size` distinct items from pool, order random. size <= len(pool)."""
        if size > len(pool):
            raise ValueError("sample larger than pool")
        items = list(pool)
        for i in range(size):
            j = i + self.below(len(items) - i)
            items[i], items[j] = items[j], items[i]
        return items[:size]


def derive_seed(seed: int, salt: int) -> int:
    """A decorrelated 64-bit seed for a sub-stream (stream order, algorithm
    randomness, objective parameters) of one experiment seed."""
    return SplitMix64((seed ^ (salt * 0xD1B54A32D192ED03)) & _MASK64).next_u64()


def choice_weighted_prefix(gen: SplitMix64, cumulative: Sequence[int]) -> int:
    """Index drawn proportionally to consecutive differences of `cumulative`.

    Used by the preferential-attachment generator; cumulative must be
    strictly positive and non-decreasing.
    """
    total = cumulative[-1]
    r = gen.below(total)
    lo, hi = 0, len(cumulative) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if cumulative[mid] > r:
            hi = mid
        else:
            lo = mid + 1
    return lo


def shuffled(items: Iterable[int], seed: int) -> list[int]:
    out = list(items)
    SplitMix64(seed).shuffle(out)
    return out
