"""Steady-state timing of push + heaviest-1 query, HL-HITTERS vs direct counting.

For every grid point the stream (Q warm-up items followed by N timed
items) is generated before any timing starts.  Each run builds a fresh
structure, fills the window untimed, then times the N-item loop with a
monotonic clock; the per-item mean of each run feeds the reported mean
and standard deviation.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import astuple, dataclass, fields

import numpy as np

from .oracle import OracleWindow
from .window import SlidingWindow
from .workload import WorkloadSpec, generate

__all__ = ["ALGORITHMS", "BenchRecord", "CSV_HEADER", "ENGINES", "run_bench", "time_algorithm", "write_csv"]

ALGORITHMS = ("hl-hitters", "direct")
ENGINES = ("native", "python")


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    q: int
    flows: int
    distribution: str
    items: int
    mean_ns_per_item: float
    std_ns_per_item: float
    runs: int

    @property
    def items_per_second(self) -> float:
        return 1e9 / self.mean_ns_per_item if self.mean_ns_per_item > 0 else float("inf")


CSV_HEADER = [f.name for f in fields(BenchRecord)]


def _python_loop(algorithm, q, warm, timed):
    if algorithm == "hl-hitters":
        window = SlidingWindow(q)
        for x in warm:
            window.push(x)
        push, query = window.push, window.hitters.query_heaviest
    else:
        window = OracleWindow(q)
        for x in warm:
            window.push(x)
        push, query = window.push, window.query_heaviest
    t0 = time.perf_counter_ns()
    for x in timed:
        push(x)
        query(1)
    return time.perf_counter_ns() - t0


def _native_loop(algorithm, q, stream):
    from . import _native

    if algorithm == "hl-hitters":
        state, run = _native.new_hl(q), _native.hl_run
    else:
        state, run = _native.new_direct(q), _native.direct_run
    run(state, stream, 0, q)
    t0 = time.perf_counter_ns()
    run(state, stream, q, len(stream))
    return time.perf_counter_ns() - t0


def _warm_native():
    from . import _native

    tiny = np.zeros(4, dtype=np.int64)
    _native.hl_run(_native.new_hl(2), tiny, 0, 4)
    _native.direct_run(_native.new_direct(2), tiny, 0, 4)


def time_algorithm(algorithm: str, q: int, stream, runs: int, *, engine: str = "native") -> list[float]:
    """Per-run mean ns per item of the timed part of ``stream`` (after Q warm-up items)."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    n = len(stream) - q
    if n < 1:
        raise ValueError("stream must be longer than the warm-up")
    out = []
    if engine == "native":
        _warm_native()
        arr = np.ascontiguousarray(stream, dtype=np.uint64).view(np.int64)
        for _ in range(runs):
            out.append(_native_loop(algorithm, q, arr) / n)
    else:
        items = np.asarray(stream).tolist()
        warm, timed = items[:q], items[q:]
        for _ in range(runs):
            out.append(_python_loop(algorithm, q, warm, timed) / n)
    return out


def run_bench(
    qs,
    flows,
    distribution: str = "uniform",
    n: int = 10**6,
    runs: int = 10,
    *,
    seed: int = 0,
    alpha: float = 1.0,
    algorithms=ALGORITHMS,
    engine: str = "native",
    progress=None,
) -> list[BenchRecord]:
    """Time every (q, flows) grid point for each algorithm.

    ``progress``, if given, is called with each record as it completes.
    """
    for name, values in (("q", qs), ("flows", flows)):
        if not values or any(v < 1 for v in values):
            raise ValueError(f"{name} values must be >= 1")
    if n < 1 or runs < 1:
        raise ValueError("n and runs must be >= 1")
    records = []
    for q in qs:
        for f in flows:
            spec = WorkloadSpec(distribution, flows=f, length=q + n, seed=seed, alpha=alpha)
            stream = generate(spec)
            for algorithm in algorithms:
                per_run = time_algorithm(algorithm, q, stream, runs, engine=engine)
                rec = BenchRecord(
                    algorithm=algorithm,
                    q=q,
                    flows=f,
                    distribution=spec.label,
                    items=n,
                    mean_ns_per_item=statistics.fmean(per_run),
                    std_ns_per_item=statistics.stdev(per_run) if runs > 1 else 0.0,
                    runs=runs,
                )
                records.append(rec)
                if progress is not None:
                    progress(rec)
    return records


def write_csv(records, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        row = list(astuple(rec))
        row[5] = f"{rec.mean_ns_per_item:.3f}"
        row[6] = f"{rec.std_ns_per_item:.3f}"
        writer.writerow(row)
