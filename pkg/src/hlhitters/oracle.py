"""Direct-counting baseline: recount the whole window on every query.

This is the ground truth for differential tests and the O(Q)-per-query
baseline of the benchmarks.  It deliberately keeps no incremental state
beyond the FIFO buffer.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from typing import Hashable

from .core import HitterEntry, as_fraction

__all__ = ["OracleWindow"]


class OracleWindow:
    """FIFO of the last Q items, answering queries by brute force."""

    def __init__(self, capacity: int):
        if isinstance(capacity, bool) or not isinstance(capacity, int):
            raise TypeError(f"capacity must be an int, got {type(capacity).__name__}")
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self._capacity = capacity
        self._buffer: deque = deque(maxlen=capacity)

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def occupancy(self) -> int:
        return len(self._buffer)

    def __len__(self) -> int:
        return len(self._buffer)

    def push(self, item_set: Hashable):
        evicted = self._buffer[0] if len(self._buffer) == self._capacity else None
        self._buffer.append(item_set)
        return evicted

    def items(self) -> list:
        return list(self._buffer)

    def counts(self) -> Counter:
        """A freshly built itemset -> count table for the current window."""
        return Counter(self._buffer)

    def query_heaviest(self, k: int) -> list[HitterEntry]:
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        if k == 0 or not self._buffer:
            return []
        if k == 1:
            # single pass, tracking the running heaviest
            table: dict = {}
            best, best_count = None, 0
            for item in self._buffer:
                c = table.get(item, 0) + 1
                table[item] = c
                if c > best_count:
                    best, best_count = item, c
            return [HitterEntry(best, best_count)]
        ranked = sorted(self.counts().items(), key=lambda kv: kv[1], reverse=True)
        return [HitterEntry(item, c) for item, c in ranked[:k]]

    def query_lightest(self, k: int) -> list[HitterEntry]:
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        ranked = sorted(self.counts().items(), key=lambda kv: kv[1])
        return [HitterEntry(item, c) for item, c in ranked[:k]]

    def query_max_group(self) -> list[HitterEntry]:
        table = self.counts()
        if not table:
            return []
        top = max(table.values())
        return [HitterEntry(item, c) for item, c in table.items() if c == top]

    def query_min_group(self) -> list[HitterEntry]:
        table = self.counts()
        if not table:
            return []
        low = min(table.values())
        return [HitterEntry(item, c) for item, c in table.items() if c == low]

    def query_heaviest_fraction(self, theta) -> list[HitterEntry]:
        threshold = max(1, math.ceil(as_fraction(theta) * len(self._buffer)))
        return [HitterEntry(item, c) for item, c in self.counts().items() if c >= threshold]

    def query_lightest_fraction(self, theta) -> list[HitterEntry]:
        threshold = math.floor(as_fraction(theta) * len(self._buffer))
        return [HitterEntry(item, c) for item, c in self.counts().items() if c <= threshold]
