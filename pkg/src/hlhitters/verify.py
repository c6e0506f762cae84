"""Differential verification of the window structures against the oracle.

A stream is replayed through :class:`SlidingWindow` and :class:`OracleWindow`
in lockstep.  After every push the two must agree on the evicted item, the
occupancy, every itemset's count, the count sequences of the k heaviest and
lightest itemsets, the max/min groups (as sets) and a heaviest-fraction
query.  The first disagreement is reported together with a shrunken stream
prefix that still reproduces it.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

from .core import HLHitters, as_fraction
from .oracle import OracleWindow
from .window import SlidingWindow
from .workload import WorkloadSpec, generate

__all__ = [
    "MUTANTS",
    "Mismatch",
    "SkipRangeInsert",
    "SwapInsert",
    "VerifyResult",
    "differential_run",
    "shrink_prefix",
    "verify_workload",
]

DEFAULT_KS = (1, 2, 5)
DEFAULT_FRACTION = 0.25
# shrinking replays the prefix many times; beyond this length only the
# plain failing prefix is reported
SHRINK_LIMIT = 5000


class SkipRangeInsert(HLHitters):
    """Deliberately broken: never records a node in its count range."""

    def _range_insert(self, node):
        pass


class SwapInsert(HLHitters):
    """Deliberately broken: InsertBefore and InsertAfter trade places."""

    def _insert_before(self, ref, node):
        HLHitters._insert_after(self, ref, node)

    def _insert_after(self, ref, node):
        HLHitters._insert_before(self, ref, node)


MUTANTS = {"skip-range-insert": SkipRangeInsert, "swap-insert": SwapInsert}


@dataclass
class Mismatch:
    step: int  # index of the push after which the check failed
    check: str
    expected: object
    actual: object
    prefix: list = field(default_factory=list)

    def describe(self) -> str:
        shown = self.prefix if len(self.prefix) <= 64 else self.prefix[:32] + ["..."] + self.prefix[-32:]
        return (
            f"step {self.step}: {self.check} mismatch\n"
            f"  expected: {self.expected!r}\n"
            f"  actual:   {self.actual!r}\n"
            f"  failing prefix ({len(self.prefix)} items): {' '.join(map(str, shown))}"
        )


@dataclass
class VerifyResult:
    q: int
    workload: str
    ops: int
    mismatch: Mismatch | None = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def _as_set(entries):
    return {(e.item_set, e.count) for e in entries}


def _group_ok(entries, table, size, accept) -> bool:
    # entries must be `size` distinct itemsets whose reported and true
    # counts agree and satisfy `accept`; with size computed from the
    # oracle this is set equality without building sets of pairs
    if len(entries) != size:
        return False
    if not size:
        return True
    items, counts = zip(*entries)
    if len(set(items)) != size or list(map(table.get, items)) != list(counts):
        return False
    return all(map(accept, counts))


def _check(window, oracle, evicted, expected_evicted, ks, fraction):
    """Return (check, expected, actual) for the first disagreement, else None.

    The oracle recounts its window once; every expectation below is
    derived from that fresh table.
    """
    if evicted != expected_evicted:
        return "evicted item", expected_evicted, evicted
    w = oracle.occupancy
    if window.occupancy != w or len(window) != w:
        return "occupancy", w, window.occupancy
    table = oracle.counts()
    got = window.counts()
    if got != table:
        return "counts", dict(table), got
    if window.distinct_count != len(table):
        return "distinct count", len(table), window.distinct_count
    ascending = sorted(table.values())
    descending = ascending[::-1]
    for k in ks:
        for name, query, want in (
            ("heaviest", window.heaviest, descending[:k]),
            ("lightest", window.lightest, ascending[:k]),
        ):
            entries = query(k)
            if [e.count for e in entries] != want or not _group_ok(entries, table, len(want), bool):
                return f"{name}({k})", want, entries
    if ascending:
        top, low = ascending[-1], ascending[0]
        groups = (
            ("max group", window.max_group(), ascending.count(top), top.__eq__),
            ("min group", window.min_group(), ascending.count(low), low.__eq__),
        )
    else:
        groups = (("max group", window.max_group(), 0, None), ("min group", window.min_group(), 0, None))
    for name, entries, size, accept in groups:
        if not _group_ok(entries, table, size, accept):
            want = oracle.query_max_group() if name == "max group" else oracle.query_min_group()
            return name, _as_set(want), _as_set(entries)
    if fraction is not None:
        entries = window.heaviest_fraction(fraction)
        threshold = max(1, math.ceil(fraction * w))
        size = len(ascending) - bisect.bisect_left(ascending, threshold)
        if not _group_ok(entries, table, size, threshold.__le__):
            want = oracle.query_heaviest_fraction(fraction)
            return f"heaviest fraction({fraction})", _as_set(want), _as_set(entries)
    return None


def differential_run(
    stream,
    q: int,
    *,
    hitters_factory=HLHitters,
    ks=DEFAULT_KS,
    fraction=DEFAULT_FRACTION,
) -> Mismatch | None:
    """Replay ``stream`` through both windows; return the first mismatch.

    Exceptions raised by the window under test count as mismatches.  The
    returned mismatch carries the unshrunk failing prefix.
    """
    if fraction is not None:
        fraction = as_fraction(fraction)
    window = SlidingWindow(q, hitters_factory=hitters_factory)
    oracle = OracleWindow(q)
    for step, item in enumerate(stream):
        expected_evicted = oracle.push(item)
        try:
            evicted = window.push(item)
            found = _check(window, oracle, evicted, expected_evicted, ks, fraction)
        except Exception as exc:
            found = ("exception", "no exception", f"{type(exc).__name__}: {exc}")
        if found is not None:
            return Mismatch(step, *found, prefix=list(stream[: step + 1]))
    return None


def shrink_prefix(prefix, q: int, *, hitters_factory=HLHitters, max_runs: int = 400, **kwargs) -> list:
    """Greedily drop chunks of a failing stream while it keeps failing."""

    def failing_length(candidate):
        found = differential_run(candidate, q, hitters_factory=hitters_factory, **kwargs)
        return None if found is None else found.step + 1

    items = list(prefix)
    runs = 0
    chunk = max(1, len(items) // 2)
    while runs < max_runs:
        removed = False
        i = 0
        while i < len(items) and runs < max_runs:
            candidate = items[:i] + items[i + chunk :]
            runs += 1
            n = failing_length(candidate) if candidate else None
            if n is not None:
                items = candidate[:n]
                removed = True
            else:
                i += chunk
        if chunk == 1 and not removed:
            break
        if not removed:
            chunk = max(1, chunk // 2)
    return items


def verify_workload(
    spec: WorkloadSpec,
    q: int,
    *,
    hitters_factory=HLHitters,
    shrink: bool = True,
    **kwargs,
) -> VerifyResult:
    """Generate ``spec``'s stream and run it differentially at window size q."""
    stream = generate(spec).tolist()
    found = differential_run(stream, q, hitters_factory=hitters_factory, **kwargs)
    if found is not None and shrink and len(found.prefix) <= SHRINK_LIMIT:
        small = shrink_prefix(found.prefix, q, hitters_factory=hitters_factory, **kwargs)
        again = differential_run(small, q, hitters_factory=hitters_factory, **kwargs)
        if again is not None:
            found = again
    return VerifyResult(q=q, workload=f"{spec.label} flows={spec.flows} seed={spec.seed}", ops=len(stream), mismatch=found)
