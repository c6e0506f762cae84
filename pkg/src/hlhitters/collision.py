"""Probability bound for more than k collisions in a chained hash table.

With n buckets, m keys hashed uniformly and a collision cap k, the chance
that some bucket receives more than k keys is at most

    n * C(m, k+1) * (1/n)**(k+1)  <=  n * (e / (c * (k+1)))**(k+1),   c = n/m.

Both forms are evaluated in log space so tiny values do not underflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["CollisionBound", "CollisionBoundParams", "compute_collision_bound"]


@dataclass(frozen=True)
class CollisionBoundParams:
    n: int  # hash table entries
    m: int  # keys stored
    k: int  # collision cap
    z: float | None = None  # lifetime number of packets

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.n < self.m:
            raise ValueError(f"n must be >= m, got n={self.n}, m={self.m}")
        if self.k < 0:
            raise ValueError(f"k must be >= 0, got {self.k}")
        if self.z is not None and not self.z >= 0:
            raise ValueError(f"z must be >= 0, got {self.z}")

    @property
    def c(self) -> float:
        return self.n / self.m


@dataclass(frozen=True)
class CollisionBound:
    rho: float  # binomial bound
    log10_rho: float
    rho_loose: float  # the e/(c(k+1)) relaxation
    rho_times_z: float | None


def _exp10(log10_value: float) -> float:
    if log10_value == -math.inf:
        return 0.0
    try:
        return 10.0**log10_value
    except OverflowError:
        return math.inf


def compute_collision_bound(params: CollisionBoundParams) -> CollisionBound:
    n, m, k = params.n, params.m, params.k
    j = k + 1
    if j > m:
        # fewer keys than the cap: no bucket can overflow
        log_rho = -math.inf
    else:
        log_binom = math.lgamma(m + 1) - math.lgamma(j + 1) - math.lgamma(m - j + 1)
        # n * n**-(k+1) == n**-k
        log_rho = log_binom - k * math.log(n)
    log_loose = math.log(n) + j * (1 - math.log(params.c) - math.log(j))
    log10 = math.log10(math.e)
    rho = _exp10(log_rho * log10)
    rho_z = None
    if params.z is not None:
        rho_z = 0.0 if params.z == 0 or log_rho == -math.inf else _exp10((log_rho + math.log(params.z)) * log10)
    return CollisionBound(
        rho=rho,
        log10_rho=log_rho * log10,
        rho_loose=_exp10(log_loose * log10),
        rho_times_z=rho_z,
    )
