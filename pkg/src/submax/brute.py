"""Exhaustive-enumeration reference solvers used as test oracles and as
the CLI `brute` algorithm."""

from __future__ import annotations

import time
from itertools import combinations

from .oracle import SubmodularOracle
from .result import OptResult, RunStats
from .sets import ids_from_mask, mask_from_ids

ENUM_CAP = 24


def brute_force_solve(oracle: SubmodularOracle, k: int, cap: int = ENUM_CAP) -> OptResult:
    """Optimum of max f(S) s.t. |S| <= k by enumerating all subsets."""
    if oracle.n > cap:
        raise ValueError(
            f"brute force enumerates all subsets up to size k; n={oracle.n} exceeds cap={cap}"
        )
    start = time.monotonic()
    best_mask, best_val = 0, oracle.value(0)
    ids = range(1, oracle.n + 1)
    for r in range(1, min(k, oracle.n) + 1):
        for combo in combinations(ids, r):
            m = mask_from_ids(combo)
            v = oracle.value(m)
            if v > best_val:
                best_mask, best_val = m, v
    stats = RunStats(wall_time_s=time.monotonic() - start)
    return OptResult(best=best_mask, value=best_val, proven_optimal=True, stats=stats)


def brute_force_completion(
    oracle: SubmodularOracle, s: int, c: int, p: int, cap: int = ENUM_CAP
) -> float:
    """max f(S u T) over T subset of C with |T| <= p, by enumeration."""
    ids = ids_from_mask(c)
    if len(ids) > cap:
        raise ValueError(f"candidate set of size {len(ids)} exceeds cap={cap}")
    best = oracle.value(s)
    for r in range(1, min(p, len(ids)) + 1):
        for combo in combinations(ids, r):
            best = max(best, oracle.value(s | mask_from_ids(combo)))
    return best
