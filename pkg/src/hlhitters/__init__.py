"""Exact sliding-window heaviest-k and lightest-k hitters."""

from .collision import CollisionBound, CollisionBoundParams, compute_collision_bound
from .core import (
    CapacityError,
    CountNode,
    CountRange,
    HitterEntry,
    HittersError,
    HLHitters,
    InvariantError,
    NotCountedError,
)
from .oracle import OracleWindow
from .window import SlidingWindow
from .workload import WorkloadSpec, generate, read_stream, write_stream

__all__ = [
    "CapacityError",
    "CollisionBound",
    "CollisionBoundParams",
    "CountNode",
    "CountRange",
    "HLHitters",
    "HitterEntry",
    "HittersError",
    "InvariantError",
    "NotCountedError",
    "OracleWindow",
    "SlidingWindow",
    "WorkloadSpec",
    "compute_collision_bound",
    "generate",
    "read_stream",
    "write_stream",
]

__version__ = "0.1.0"
