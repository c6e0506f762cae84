"""Count-based sliding window feeding an :class:`HLHitters` instance."""

from __future__ import annotations

from typing import Hashable

from .core import HitterEntry, HLHitters

__all__ = ["SlidingWindow"]


class SlidingWindow:
    """The most recent Q items of a stream, with exact hitter queries.

    Items go in at the back of a fixed ring buffer; once Q items are held,
    each push first evicts (and expires) the oldest one.

    Args:
        capacity: Window size Q.
        hitters_factory: Callable building the counting structure from Q.
            Tests use it to swap in instrumented variants.
    """

    def __init__(self, capacity: int, *, hitters_factory=HLHitters):
        if isinstance(capacity, bool) or not isinstance(capacity, int):
            raise TypeError(f"capacity must be an int, got {type(capacity).__name__}")
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self._capacity = capacity
        self._buffer: list[Hashable] = [None] * capacity
        self._start = 0
        self._length = 0
        self.hitters = hitters_factory(capacity)

    @property
    def capacity(self) -> int:
        return self._capacity

    def __len__(self) -> int:
        return self._length

    def push(self, item_set: Hashable):
        """Add one item; return the evicted oldest item, or None during warm-up."""
        evicted = None
        if self._length == self._capacity:
            evicted = self._buffer[self._start]
            self.hitters.expire(evicted)
            self._buffer[self._start] = item_set
            self._start += 1
            if self._start == self._capacity:
                self._start = 0
        else:
            end = self._start + self._length
            if end >= self._capacity:
                end -= self._capacity
            self._buffer[end] = item_set
            self._length += 1
        self.hitters.append(item_set)
        return evicted

    def extend(self, items) -> None:
        for item in items:
            self.push(item)

    def items(self) -> list:
        """Window contents, oldest first."""
        return [self._buffer[(self._start + i) % self._capacity] for i in range(self._length)]

    # query passthroughs

    @property
    def occupancy(self) -> int:
        return self.hitters.occupancy

    @property
    def distinct_count(self) -> int:
        return self.hitters.distinct_count

    def count(self, item_set: Hashable) -> int:
        return self.hitters.count(item_set)

    def counts(self) -> dict:
        return self.hitters.counts()

    def heaviest(self, k: int = 1) -> list[HitterEntry]:
        return self.hitters.query_heaviest(k)

    def lightest(self, k: int = 1) -> list[HitterEntry]:
        return self.hitters.query_lightest(k)

    def max_group(self) -> list[HitterEntry]:
        return self.hitters.query_max_group()

    def min_group(self) -> list[HitterEntry]:
        return self.hitters.query_min_group()

    def heaviest_fraction(self, theta) -> list[HitterEntry]:
        return self.hitters.query_heaviest_fraction(theta)

    def lightest_fraction(self, theta) -> list[HitterEntry]:
        return self.hitters.query_lightest_fraction(theta)

    def cumulative_heaviest(self, total: int | None = None, *, fraction=None) -> list[HitterEntry]:
        return self.hitters.query_cumulative_heaviest(total, fraction=fraction)

    def cumulative_lightest(self, total: int | None = None, *, fraction=None) -> list[HitterEntry]:
        return self.hitters.query_cumulative_lightest(total, fraction=fraction)

    def __repr__(self) -> str:
        return f"SlidingWindow(capacity={self._capacity}, length={self._length})"
