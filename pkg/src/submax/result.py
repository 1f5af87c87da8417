"""Common result and accounting types shared by all solvers."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class Limits:
    """Cooperative resource limits; solvers check them at node/iteration
    boundaries, so enforcement granularity is one node pop or CG iteration."""

    time_limit_s: Optional[float] = None
    node_cap: Optional[int] = None


class Deadline:
    def __init__(self, limits: Optional[Limits]):
        self.start = time.monotonic()
        self.limits = limits or Limits()

    def expired(self) -> bool:
        t = self.limits.time_limit_s
        return t is not None and time.monotonic() - self.start >= t

    def over_node_cap(self, nodes: int) -> bool:
        cap = self.limits.node_cap
        return cap is not None and nodes >= cap

    def elapsed(self) -> float:
        return time.monotonic() - self.start


@dataclass
class RunStats:
    wall_time_s: float = 0.0
    nodes_processed: int = 0
    bip_solves: int = 0
    oracle_distinct: int = 0
    oracle_total: int = 0
    # (node/iteration index, upper bound, incumbent value)
    bound_trace: list = field(default_factory=list)


@dataclass
class CgTrace:
    """Per-iteration record of a CG/ICG run: (z, incumbent, |Q|, |Q+|)."""

    iterations: list = field(default_factory=list)
    bip_solves: int = 0


@dataclass
class OptResult:
    best: int  # solution bitmask
    value: float
    proven_optimal: bool
    time_limit_hit: bool = False
    stats: RunStats = field(default_factory=RunStats)
    trace: Optional[CgTrace] = None
