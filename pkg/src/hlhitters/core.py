"""Exact heaviest/lightest hitters over a bounded multiset of itemsets.

Every itemset with at least one item in the window owns one ``CountNode``.
Nodes live in a single doubly linked list kept in nondecreasing count order
(head = lightest, tail = heaviest).  Nodes that share a count form a
contiguous run whose two ends are tracked in ``ranges[count]``, so moving a
node to a neighbouring count never walks the list.

Appending or expiring one item is O(1) (plus one hash-map access); querying
the k heaviest or lightest itemsets is O(k).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Hashable, Iterator, NamedTuple

__all__ = [
    "CapacityError",
    "CountNode",
    "CountRange",
    "DEFAULT_MAX_CAPACITY",
    "HLHitters",
    "HitterEntry",
    "HittersError",
    "InvariantError",
    "NotCountedError",
    "as_fraction",
]

# Upper bound on Q accepted by the constructor; the pool and the range array
# are both allocated up front.
DEFAULT_MAX_CAPACITY = 1 << 24


class HittersError(Exception):
    """Base class for errors raised by the hitters structures."""


class CapacityError(HittersError):
    """Raised when appending to a structure that already counts Q items."""


class NotCountedError(HittersError, KeyError):
    """Raised when expiring an itemset that has no item in the window."""


class InvariantError(HittersError, AssertionError):
    """Raised by :meth:`HLHitters.check_invariants` on a corrupted structure."""


class HitterEntry(NamedTuple):
    item_set: Hashable
    count: int


# skips NamedTuple's Python-level __new__; queries build many entries
_tuple_new = tuple.__new__


def _entry(item_set, count):
    return _tuple_new(HitterEntry, (item_set, count))


class CountNode:
    """List node holding one itemset and its exact in-window count."""

    __slots__ = ("item_set", "count", "previous", "next")

    # Total number of nodes ever constructed, for allocation accounting.
    allocated = 0

    def __init__(self) -> None:
        self.item_set: Hashable = None
        self.count = 0
        self.previous: CountNode | None = None
        self.next: CountNode | None = None
        CountNode.allocated += 1

    def __repr__(self) -> str:
        return f"CountNode({self.item_set!r}, count={self.count})"


class CountRange:
    """First and last node of the run of nodes sharing one count."""

    __slots__ = ("first", "last")

    def __init__(self) -> None:
        self.first: CountNode | None = None
        self.last: CountNode | None = None

    def __bool__(self) -> bool:
        return self.first is not None


def as_fraction(theta) -> Fraction:
    """Convert a window proportion to an exact fraction in (0, 1].

    Floats go through their shortest decimal form so that ``0.3`` means
    exactly 3/10 and thresholds such as ``ceil(0.3 * 10)`` come out as 3.
    """
    if type(theta) is Fraction and 0 < theta <= 1:
        return theta
    if isinstance(theta, bool):
        raise ValueError(f"theta must be a number in (0, 1], got {theta!r}")
    if isinstance(theta, float):
        if not math.isfinite(theta):
            raise ValueError(f"theta must be a number in (0, 1], got {theta!r}")
        frac = Fraction(repr(theta))
    elif isinstance(theta, (Rational, str)):
        frac = Fraction(theta)
    else:
        frac = Fraction(str(theta))
    if not 0 < frac <= 1:
        raise ValueError(f"theta must be in (0, 1], got {theta!r}")
    return frac


class HLHitters:
    """Exact heaviest-k and lightest-k hitters for a window of at most Q items.

    The structure only counts; it does not remember arrival order.  A window
    driver (see :class:`hlhitters.window.SlidingWindow`) pairs every append
    beyond capacity with an expire of the oldest item.

    Args:
        capacity: Maximum number of items counted at once (Q).
        max_capacity: Refuse capacities above this bound.

    Raises:
        ValueError: If ``capacity`` is not in ``[1, max_capacity]``.

    Example:
        >>> hh = HLHitters(8)
        >>> for x in "ABACBA":
        ...     hh.append(x)
        >>> hh.query_heaviest(2)
        [HitterEntry(item_set='A', count=3), HitterEntry(item_set='B', count=2)]
    """

    def __init__(self, capacity: int, *, max_capacity: int = DEFAULT_MAX_CAPACITY):
        if isinstance(capacity, bool) or not isinstance(capacity, int):
            raise TypeError(f"capacity must be an int, got {type(capacity).__name__}")
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        if capacity > max_capacity:
            raise ValueError(f"capacity {capacity} exceeds the configured bound {max_capacity}")
        self._capacity = capacity
        self._occupancy = 0
        self._item_sets: dict[Hashable, CountNode] = {}
        self._head: CountNode | None = None
        self._tail: CountNode | None = None
        # index = count; slot 0 is never used
        self._ranges = [CountRange() for _ in range(capacity + 1)]
        self._pool = [CountNode() for _ in range(capacity)]

    # -- list primitives -------------------------------------------------

    def _unlink(self, node: CountNode) -> None:
        prev, nxt = node.previous, node.next
        if prev is None:
            self._head = nxt
        else:
            prev.next = nxt
        if nxt is None:
            self._tail = prev
        else:
            nxt.previous = prev
        node.previous = node.next = None

    def _insert_before(self, ref: CountNode | None, node: CountNode) -> None:
        # ref None: append at the tail
        if ref is None:
            node.previous = self._tail
            node.next = None
            if self._tail is None:
                self._head = node
            else:
                self._tail.next = node
            self._tail = node
            return
        prev = ref.previous
        node.previous = prev
        node.next = ref
        ref.previous = node
        if prev is None:
            self._head = node
        else:
            prev.next = node

    def _insert_after(self, ref: CountNode | None, node: CountNode) -> None:
        # ref None: insert at the head
        if ref is None:
            node.previous = None
            node.next = self._head
            if self._head is None:
                self._tail = node
            else:
                self._head.previous = node
            self._head = node
            return
        nxt = ref.next
        node.previous = ref
        node.next = nxt
        ref.next = node
        if nxt is None:
            self._tail = node
        else:
            nxt.previous = node

    # -- range primitives ------------------------------------------------

    def _range_insert(self, node: CountNode) -> None:
        # node has just been linked immediately before the range's first node
        rng = self._ranges[node.count]
        if rng.first is None:
            rng.first = rng.last = node
        else:
            rng.first = node

    def _range_remove(self, node: CountNode) -> None:
        # must run while node is still linked
        rng = self._ranges[node.count]
        if rng.first is node:
            if rng.last is node:
                rng.first = rng.last = None
            else:
                rng.first = node.next
        elif rng.last is node:
            rng.last = node.previous

    # -- updates ---------------------------------------------------------

    def append(self, item_set: Hashable) -> None:
        """Count one more item of ``item_set``.

        Raises:
            CapacityError: If Q items are already counted.
        """
        if self._occupancy >= self._capacity:
            raise CapacityError(f"structure already counts {self._capacity} items")
        node = self._item_sets.get(item_set)
        if node is not None:
            target = self._ranges[node.count].last.next
            self._range_remove(node)
            self._unlink(node)
            node.count += 1
            self._insert_before(target, node)
            self._range_insert(node)
        else:
            node = self._pool.pop()
            node.item_set = item_set
            node.count = 1
            self._insert_before(self._head, node)
            self._range_insert(node)
            self._item_sets[item_set] = node
        self._occupancy += 1

    def expire(self, item_set: Hashable) -> None:
        """Remove one item of ``item_set`` from the counts.

        Raises:
            NotCountedError: If ``item_set`` has no item in the window.
        """
        node = self._item_sets.get(item_set)
        if node is None:
            raise NotCountedError(item_set)
        before = self._ranges[node.count].first.previous
        self._range_remove(node)
        self._unlink(node)
        node.count -= 1
        if node.count >= 1:
            if before is not None and before.count == node.count:
                self._insert_before(self._ranges[before.count].first, node)
            else:
                self._insert_after(before, node)
            self._range_insert(node)
        else:
            node.item_set = None
            self._pool.append(node)
            del self._item_sets[item_set]
        self._occupancy -= 1

    # -- queries ---------------------------------------------------------

    def query_heaviest(self, k: int) -> list[HitterEntry]:
        """Return up to ``k`` itemsets with the largest counts, heaviest first.

        Itemsets with equal counts come out in no particular order.
        """
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        out = []
        node = self._tail
        while node is not None and len(out) < k:
            out.append(_entry(node.item_set, node.count))
            node = node.previous
        return out

    def query_lightest(self, k: int) -> list[HitterEntry]:
        """Return up to ``k`` itemsets with the smallest counts, lightest first."""
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        out = []
        node = self._head
        while node is not None and len(out) < k:
            out.append(_entry(node.item_set, node.count))
            node = node.next
        return out

    def _group(self, count: int) -> list[HitterEntry]:
        rng = self._ranges[count]
        last = rng.last
        items = []
        node = rng.first
        while node is not last:
            items.append(node.item_set)
            node = node.next
        items.append(last.item_set)
        return [_tuple_new(HitterEntry, (item, count)) for item in items]

    def query_max_group(self) -> list[HitterEntry]:
        """All itemsets sharing the maximum count (O(size of the group))."""
        if self._tail is None:
            return []
        return self._group(self._tail.count)

    def query_min_group(self) -> list[HitterEntry]:
        """All itemsets sharing the minimum count."""
        if self._head is None:
            return []
        return self._group(self._head.count)

    def query_heaviest_fraction(self, theta) -> list[HitterEntry]:
        """Itemsets holding at least ``ceil(theta * W)`` of the W counted items.

        At most ``floor(1 / theta)`` itemsets can qualify, so this walks at
        most that many nodes from the tail.
        """
        frac = as_fraction(theta)
        num, den = frac.numerator, frac.denominator
        threshold = max(1, -(-num * self._occupancy // den))
        out = []
        for entry in self.query_heaviest(den // num):
            if entry.count < threshold:
                break
            out.append(entry)
        return out

    def query_lightest_fraction(self, theta) -> list[HitterEntry]:
        """Itemsets holding at most ``floor(theta * W)`` of the W counted items.

        Unlike the heaviest variant there is no bound on the result size;
        worst case O(Q).
        """
        frac = as_fraction(theta)
        threshold = frac.numerator * self._occupancy // frac.denominator
        out = []
        node = self._head
        while node is not None and node.count <= threshold:
            out.append(_entry(node.item_set, node.count))
            node = node.next
        return out

    def _cumulative_threshold(self, total, fraction) -> int:
        if (total is None) == (fraction is None):
            raise ValueError("give exactly one of total or fraction")
        if fraction is not None:
            frac = as_fraction(fraction)
            return -(-frac.numerator * self._occupancy // frac.denominator)
        if isinstance(total, bool) or not isinstance(total, int):
            raise TypeError(f"total must be an int, got {type(total).__name__}")
        if not 1 <= total <= self._occupancy:
            raise ValueError(f"total must be in [1, {self._occupancy}], got {total}")
        return total

    def _cumulative(self, start: CountNode | None, forward: bool, threshold: int) -> list[HitterEntry]:
        out = []
        acc = 0
        node = start
        while acc < threshold:
            out.append(_entry(node.item_set, node.count))
            acc += node.count
            node = node.next if forward else node.previous
        return out

    def query_cumulative_heaviest(self, total: int | None = None, *, fraction=None) -> list[HitterEntry]:
        """Shortest heaviest-first prefix whose counts add up to the threshold.

        The threshold is either an absolute item count ``total`` in
        ``[1, W]`` or ``ceil(fraction * W)``.  With an empty window a
        fractional threshold is 0 and the result is empty.  Worst case O(Q).
        """
        threshold = self._cumulative_threshold(total, fraction)
        return self._cumulative(self._tail, False, threshold)

    def query_cumulative_lightest(self, total: int | None = None, *, fraction=None) -> list[HitterEntry]:
        """Shortest lightest-first prefix whose counts add up to the threshold."""
        threshold = self._cumulative_threshold(total, fraction)
        return self._cumulative(self._head, True, threshold)

    # -- introspection ---------------------------------------------------

    @property
    def capacity(self) -> int:
        return self._capacity

    @property
    def occupancy(self) -> int:
        """Number of items currently counted (W)."""
        return self._occupancy

    @property
    def distinct_count(self) -> int:
        """Number of itemsets with a nonzero count."""
        return len(self._item_sets)

    @property
    def free_nodes(self) -> int:
        return len(self._pool)

    def __len__(self) -> int:
        return len(self._item_sets)

    def __contains__(self, item_set: Hashable) -> bool:
        return item_set in self._item_sets

    def count(self, item_set: Hashable) -> int:
        node = self._item_sets.get(item_set)
        return 0 if node is None else node.count

    def __iter__(self) -> Iterator[HitterEntry]:
        """Iterate over all entries, lightest first."""
        node = self._head
        while node is not None:
            yield _entry(node.item_set, node.count)
            node = node.next

    def counts(self) -> dict[Hashable, int]:
        """Snapshot of itemset -> count, read by walking the list."""
        out = {}
        node = self._head
        while node is not None:
            out[node.item_set] = node.count
            node = node.next
        return out

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(capacity={self._capacity}, "
            f"occupancy={self._occupancy}, distinct={len(self._item_sets)})"
        )

    def check_invariants(self) -> None:
        """Walk the whole structure and raise InvariantError on any breach.

        O(Q); intended for tests and debug runs.
        """

        def fail(msg):
            raise InvariantError(msg)

        q = self._capacity
        seen = {}
        total = 0
        prev = None
        prev_count = 0
        firsts = {}
        lasts = {}
        node = self._head
        while node is not None:
            if len(seen) >= q:
                fail("list longer than capacity (cycle?)")
            if node.previous is not prev:
                fail(f"broken back link at {node!r}")
            if not 1 <= node.count <= q:
                fail(f"count out of range at {node!r}")
            if node.count < prev_count:
                fail(f"list not sorted at {node!r} after count {prev_count}")
            if node.item_set in seen:
                fail(f"itemset {node.item_set!r} linked twice")
            if self._item_sets.get(node.item_set) is not node:
                fail(f"map does not point at {node!r}")
            if node.count != prev_count:
                firsts[node.count] = node
                if prev is not None:
                    lasts[prev_count] = prev
            seen[node.item_set] = node
            total += node.count
            prev, prev_count = node, node.count
            node = node.next
        if prev is not None:
            lasts[prev_count] = prev
        if self._tail is not prev:
            fail("tail does not match the last linked node")
        if len(seen) != len(self._item_sets):
            fail(f"map has {len(self._item_sets)} entries but list has {len(seen)} nodes")
        if total != self._occupancy:
            fail(f"counts sum to {total}, occupancy is {self._occupancy}")
        if self._occupancy > q:
            fail("occupancy exceeds capacity")
        if len(seen) + len(self._pool) != q:
            fail(f"{len(seen)} linked + {len(self._pool)} free nodes != capacity {q}")
        if len(self._ranges) != q + 1 or self._ranges[0]:
            fail("range array malformed")
        for c in range(1, q + 1):
            rng = self._ranges[c]
            if c in firsts:
                if rng.first is not firsts[c] or rng.last is not lasts[c]:
                    fail(f"range {c} does not bracket its nodes")
            elif rng.first is not None or rng.last is not None:
                fail(f"range {c} is set but no node has that count")
