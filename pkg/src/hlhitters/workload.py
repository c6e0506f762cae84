"""Seeded synthetic item streams.

All randomness comes from the raw 64-bit output of numpy's PCG64 bit
generator, turned into values by the arithmetic in this module only.  Raw
PCG64 output is fixed by the algorithm, so a given spec yields the same
stream on every numpy release.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DISTRIBUTIONS",
    "WorkloadSpec",
    "generate",
    "parse_workload",
    "read_stream",
    "write_stream",
]

DISTRIBUTIONS = ("uniform", "zipf", "constant", "all-distinct", "round-robin")


@dataclass(frozen=True)
class WorkloadSpec:
    """Description of a synthetic stream.

    ``alpha`` is only used by the zipf distribution.  Ids lie in
    ``[0, flows)`` except for ``all-distinct``, which emits ``0..length-1``.
    """

    distribution: str
    flows: int = 1
    length: int = 0
    seed: int = 0
    alpha: float = 1.0

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(
                f"unknown distribution {self.distribution!r}; expected one of {', '.join(DISTRIBUTIONS)}"
            )
        if self.flows < 1:
            raise ValueError(f"flows must be >= 1, got {self.flows}")
        if self.length < 0:
            raise ValueError(f"length must be >= 0, got {self.length}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.distribution == "zipf" and not (self.alpha > 0 and np.isfinite(self.alpha)):
            raise ValueError(f"zipf alpha must be a positive real, got {self.alpha}")

    @property
    def label(self) -> str:
        if self.distribution == "zipf":
            return f"zipf({self.alpha:g})"
        return self.distribution


def parse_workload(text: str, *, flows: int = 1, length: int = 0, seed: int = 0) -> WorkloadSpec:
    """Build a spec from ``"uniform"``, ``"zipf"``, ``"zipf(1.2)"`` or ``"zipf:1.2"``."""
    text = text.strip()
    alpha = 1.0
    name = text
    for open_, close in (("(", ")"), (":", "")):
        if open_ in text:
            name, _, rest = text.partition(open_)
            if close:
                if not rest.endswith(close):
                    raise ValueError(f"malformed distribution {text!r}")
                rest = rest[: -len(close)]
            try:
                alpha = float(rest)
            except ValueError:
                raise ValueError(f"malformed distribution parameter in {text!r}") from None
            break
    if name != "zipf" and name != text:
        raise ValueError(f"distribution {name!r} takes no parameter")
    return WorkloadSpec(name, flows=flows, length=length, seed=seed, alpha=alpha)


def _unit_floats(seed: int, n: int) -> np.ndarray:
    raw = np.random.PCG64(seed).random_raw(n)
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def generate(spec: WorkloadSpec) -> np.ndarray:
    """Return the stream described by ``spec`` as a uint64 array."""
    n, f = spec.length, spec.flows
    dist = spec.distribution
    if dist == "constant":
        return np.zeros(n, dtype=np.uint64)
    if dist == "round-robin":
        return (np.arange(n, dtype=np.uint64) % np.uint64(f)).astype(np.uint64)
    if dist == "all-distinct":
        return np.arange(n, dtype=np.uint64)
    u = _unit_floats(spec.seed, n)
    if dist == "uniform":
        ids = np.floor(u * f).astype(np.uint64)
        return np.minimum(ids, np.uint64(f - 1))
    # zipf: rank r (0-based) has weight 1 / (r + 1) ** alpha
    weights = 1.0 / np.arange(1, f + 1, dtype=np.float64) ** spec.alpha
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    ids = np.searchsorted(cdf, u, side="right").astype(np.uint64)
    return np.minimum(ids, np.uint64(f - 1))


def write_stream(dest, ids) -> None:
    """Write one decimal id per line to a path or text file object."""
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w") as fh:
            write_stream(fh, ids)
        return
    for x in ids:
        dest.write(f"{int(x)}\n")


def read_stream(src) -> list[int]:
    """Read a stream written by :func:`write_stream`."""
    if isinstance(src, (str, os.PathLike)):
        with open(src) as fh:
            return read_stream(fh)
    if isinstance(src, (bytes, bytearray)):
        src = io.StringIO(src.decode())
    return [int(line) for line in src if line.strip()]
