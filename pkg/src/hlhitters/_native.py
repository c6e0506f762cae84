"""Compiled (numba) versions of the window structures for benchmarking.

Python-level method dispatch costs more than the whole O(1) update, so the
benchmark loop runs here instead.  The layout mirrors :mod:`hlhitters.core`
with nodes as indices into parallel int64 arrays and a linear-probing hash
map sized to keep the load factor at or below 1/4.  The list is circular
through a sentinel node (index Q, count 0): its ``next`` is the head and its
``prev`` the tail, so linking never tests for an empty end.  Range slots use
-1 for "no such count".

Item ids are int64.  Everything is preallocated in :func:`new_hl` and
:func:`new_direct`; the kernels never allocate.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np
from numba import njit

# Kernels are compiled with _nrt=False: with reference counting on, every
# helper call increfs/decrefs each array it touches, which costs more than
# the update itself.  Nothing below allocates, so NRT is not needed.

NIL = -1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)

# meta slots of the HL-HITTERS state
_FREE_TOP, _OCC, _START, _LEN, _MASK, _SHIFT = range(6)
# meta slots of the direct-counting state
_D_START, _D_LEN, _D_GEN, _D_MASK, _D_SHIFT = range(5)

HLState = namedtuple(
    "HLState",
    ["meta", "prev", "next", "count", "item", "free", "first", "last", "keys", "vals", "buf"],
)
DirectState = namedtuple("DirectState", ["meta", "buf", "keys", "counts", "stamps"])


def _table_bits(q: int) -> int:
    bits = 4
    while (1 << bits) < 4 * q:
        bits += 1
    return bits


def new_hl(q: int) -> HLState:
    if q < 1:
        raise ValueError(f"capacity must be >= 1, got {q}")
    bits = _table_bits(q)
    size = 1 << bits
    meta = np.zeros(6, dtype=np.int64)
    meta[_FREE_TOP] = q
    meta[_MASK] = size - 1
    meta[_SHIFT] = 64 - bits
    return HLState(
        meta=meta,
        prev=np.full(q + 1, q, dtype=np.int64),
        next=np.full(q + 1, q, dtype=np.int64),
        count=np.zeros(q + 1, dtype=np.int64),
        item=np.zeros(q + 1, dtype=np.int64),
        free=np.arange(q, dtype=np.int64),
        first=np.full(q + 1, NIL, dtype=np.int64),
        last=np.full(q + 1, NIL, dtype=np.int64),
        keys=np.zeros(size, dtype=np.int64),
        vals=np.full(size, NIL, dtype=np.int64),
        buf=np.zeros(q, dtype=np.int64),
    )


def new_direct(q: int) -> DirectState:
    if q < 1:
        raise ValueError(f"capacity must be >= 1, got {q}")
    bits = _table_bits(q)
    size = 1 << bits
    meta = np.zeros(5, dtype=np.int64)
    meta[_D_MASK] = size - 1
    meta[_D_SHIFT] = 64 - bits
    return DirectState(
        meta=meta,
        buf=np.zeros(q, dtype=np.int64),
        keys=np.zeros(size, dtype=np.int64),
        counts=np.zeros(size, dtype=np.int64),
        stamps=np.zeros(size, dtype=np.int64),
    )


@njit(_nrt=False, inline="always")
def _home(key, shift):
    return np.int64((np.uint64(key) * _GOLDEN) >> np.uint64(shift))


@njit(_nrt=False, inline="always")
def _find(keys, vals, mask, shift, key):
    # slot holding key, or the empty slot where it would go
    i = _home(key, shift)
    while vals[i] != NIL:
        if keys[i] == key:
            return i
        i = (i + 1) & mask
    return i


@njit(_nrt=False, inline="always")
def _delete(keys, vals, mask, shift, slot):
    # backward-shift deletion keeps probe chains intact without tombstones
    i = slot
    j = slot
    while True:
        j = (j + 1) & mask
        if vals[j] == NIL:
            break
        h = _home(keys[j], shift)
        if i <= j:
            if i < h <= j:
                continue
        elif i < h or h <= j:
            continue
        keys[i] = keys[j]
        vals[i] = vals[j]
        i = j
    vals[i] = NIL


@njit(_nrt=False, inline="always")
def _unlink(s, x):
    p = s.prev[x]
    n = s.next[x]
    s.next[p] = n
    s.prev[n] = p


@njit(_nrt=False, inline="always")
def _insert_before(s, ref, x):
    p = s.prev[ref]
    s.prev[x] = p
    s.next[x] = ref
    s.next[p] = x
    s.prev[ref] = x


# The range updates are written as selects rather than nested ifs: with
# few flows most runs hold one node and the branches would be coin flips.


@njit(_nrt=False, inline="always")
def _range_insert(s, x):
    c = s.count[x]
    f = s.first[c]
    s.last[c] = x if f == NIL else s.last[c]
    s.first[c] = x


@njit(_nrt=False, inline="always")
def _range_remove(s, x):
    c = s.count[x]
    f = s.first[c]
    l = s.last[c]
    only = f == x and l == x
    s.first[c] = NIL if only else (s.next[x] if f == x else f)
    s.last[c] = NIL if only else (s.prev[x] if l == x else l)


@njit(_nrt=False, inline="always")
def hl_append(s, key):
    meta = s.meta
    slot = _find(s.keys, s.vals, meta[_MASK], meta[_SHIFT], key)
    x = s.vals[slot]
    if x != NIL:
        target = s.next[s.last[s.count[x]]]
        _range_remove(s, x)
        _unlink(s, x)
        s.count[x] += 1
        _insert_before(s, target, x)
        _range_insert(s, x)
    else:
        top = meta[_FREE_TOP] - 1
        x = s.free[top]
        meta[_FREE_TOP] = top
        s.item[x] = key
        s.count[x] = 1
        _insert_before(s, s.next[s.buf.shape[0]], x)
        _range_insert(s, x)
        s.keys[slot] = key
        s.vals[slot] = x
    meta[_OCC] += 1


@njit(_nrt=False, inline="always")
def hl_expire(s, key):
    meta = s.meta
    mask = meta[_MASK]
    shift = meta[_SHIFT]
    slot = _find(s.keys, s.vals, mask, shift, key)
    x = s.vals[slot]
    before = s.prev[s.first[s.count[x]]]
    _range_remove(s, x)
    _unlink(s, x)
    c = s.count[x] - 1
    s.count[x] = c
    if c >= 1:
        # join the run of count c if `before` heads into it, else start one
        # right after `before` (possibly the sentinel, whose count 0 never
        # matches); inserting after `before` is inserting before its next
        ref = s.first[c] if s.count[before] == c else s.next[before]
        _insert_before(s, ref, x)
        _range_insert(s, x)
    else:
        s.free[meta[_FREE_TOP]] = x
        meta[_FREE_TOP] += 1
        _delete(s.keys, s.vals, mask, shift, slot)
    meta[_OCC] -= 1


@njit(_nrt=False, inline="always")
def hl_push(s, key):
    meta = s.meta
    q = s.buf.shape[0]
    if meta[_LEN] == q:
        start = meta[_START]
        hl_expire(s, s.buf[start])
        s.buf[start] = key
        start += 1
        meta[_START] = 0 if start == q else start
    else:
        end = meta[_START] + meta[_LEN]
        s.buf[end - q if end >= q else end] = key
        meta[_LEN] += 1
    hl_append(s, key)


@njit(_nrt=False, cache=True)
def hl_run(s, stream, lo, hi):
    """Push stream[lo:hi], querying the heaviest itemset after every push."""
    acc = 0
    sentinel = s.buf.shape[0]
    for i in range(lo, hi):
        hl_push(s, stream[i])
        t = s.prev[sentinel]
        acc += s.item[t] ^ s.count[t]
    return acc


@njit(_nrt=False, cache=True)
def _hl_replay(s, stream, out):
    n = stream.shape[0]
    sentinel = s.buf.shape[0]
    for i in range(n):
        hl_push(s, stream[i])
        t = s.prev[sentinel]
        out[i, 0] = s.item[t]
        out[i, 1] = s.count[t]
        out[i, 2] = s.count[s.next[sentinel]]
        out[i, 3] = s.buf.shape[0] - s.meta[_FREE_TOP]


def hl_snapshot(s) -> list[tuple[int, int]]:
    """(item, count) pairs walking head to tail."""
    out = []
    sentinel = s.buf.shape[0]
    x = int(s.next[sentinel])
    while x != sentinel:
        out.append((int(s.item[x]), int(s.count[x])))
        x = int(s.next[x])
    return out


@njit(_nrt=False, inline="always")
def direct_push(s, key):
    meta = s.meta
    q = s.buf.shape[0]
    if meta[_D_LEN] == q:
        start = meta[_D_START]
        s.buf[start] = key
        start += 1
        meta[_D_START] = 0 if start == q else start
    else:
        end = meta[_D_START] + meta[_D_LEN]
        s.buf[end - q if end >= q else end] = key
        meta[_D_LEN] += 1


@njit(_nrt=False, inline="always")
def direct_query1(s):
    """Recount the window into a fresh table; return (heaviest item, its count)."""
    meta = s.meta
    gen = meta[_D_GEN] + 1
    # bumping the generation empties the table in O(1)
    meta[_D_GEN] = gen
    mask = meta[_D_MASK]
    shift = meta[_D_SHIFT]
    keys = s.keys
    counts = s.counts
    stamps = s.stamps
    best = 0
    best_count = 0
    # while filling, start stays 0 so buf[:len] is exactly the window
    for j in range(meta[_D_LEN]):
        key = s.buf[j]
        i = _home(key, shift)
        while stamps[i] == gen and keys[i] != key:
            i = (i + 1) & mask
        if stamps[i] != gen:
            stamps[i] = gen
            keys[i] = key
            counts[i] = 0
        c = counts[i] + 1
        counts[i] = c
        if c > best_count:
            best = key
            best_count = c
    return best, best_count


@njit(_nrt=False, cache=True)
def direct_run(s, stream, lo, hi):
    acc = 0
    for i in range(lo, hi):
        direct_push(s, stream[i])
        item, c = direct_query1(s)
        acc += item ^ c
    return acc


@njit(_nrt=False, cache=True)
def _direct_replay(s, stream, out):
    n = stream.shape[0]
    for i in range(n):
        direct_push(s, stream[i])
        item, c = direct_query1(s)
        out[i, 0] = item
        out[i, 1] = c


def hl_replay(s, stream) -> np.ndarray:
    """Per-step (heaviest item, max count, min count, distinct) after each push."""
    out = np.empty((len(stream), 4), dtype=np.int64)
    _hl_replay(s, stream, out)
    return out


def direct_replay(s, stream) -> np.ndarray:
    """Per-step (heaviest item, its count) after each push."""
    out = np.empty((len(stream), 2), dtype=np.int64)
    _direct_replay(s, stream, out)
    return out
