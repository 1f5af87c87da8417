"""Best-first search over the prefix tree of solutions.

A node is a solution prefix S; its children append a single element with a
larger id than every member, so the tree enumerates each subset exactly
once. Nodes are ranked by f(S) plus an admissible completion bound over
the still-appendable elements.
"""

from __future__ import annotations

import heapq
import time
from typing import Optional

import numpy as np

from .bounds import MOD, BoundContext, h_dom, h_mod
from .greedy import greedy
from .oracle import EPS, SubmodularOracle
from .result import Deadline, Limits, OptResult, RunStats
from .sets import bit, ids_from_mask, size


def _candidates_after(oracle: SubmodularOracle, s: int) -> int:
    """Elements with ids above the largest member of s (all of N for s=0)."""
    top = s.bit_length()  # == max element id of the mask
    return oracle.full & ~((1 << top) - 1)


def astar_solve(
    oracle: SubmodularOracle,
    k: int,
    heuristic: str = MOD,
    initial: Optional[int] = None,
    limits: Optional[Limits] = None,
) -> OptResult:
    start = time.monotonic()
    h = h_mod if heuristic == MOD else h_dom
    if initial is None:
        initial = greedy(oracle, k).final
    s_star = initial
    f_star = oracle.value(initial)
    deadline = Deadline(limits)

    def fbar(s: int) -> float:
        return oracle.value(s) + h(
            oracle, BoundContext(s, _candidates_after(oracle, s), k - size(s))
        )

    # heap entries: (-fbar, -f(S), id tuple, mask); ties resolved by larger
    # f(S) then lexicographically smaller prefix, so runs are deterministic
    open_list = [(-fbar(0), -0.0, (), 0)]
    nodes = 0
    trace = []
    limit_hit = False
    while open_list:
        if deadline.expired() or deadline.over_node_cap(nodes):
            limit_hit = True
            break
        neg_fb, _, _, s = heapq.heappop(open_list)
        nodes += 1
        node_fbar = -neg_fb
        trace.append((nodes, node_fbar, f_star))
        if node_fbar <= f_star + EPS:
            continue
        cand = _candidates_after(oracle, s)
        completed = greedy(oracle, k, base=s, candidates=cand).final
        v = oracle.value(completed)
        if v > f_star + EPS:
            s_star, f_star = completed, v
        if size(s) >= k:
            continue
        cand_ids = ids_from_mask(cand)
        if not cand_ids:
            continue
        base_val = oracle.value(s)
        child_gains = oracle.gains_many(s, cand_ids)
        for j, gain in zip(cand_ids, child_gains):
            t = s | bit(j)
            t_fbar = base_val + float(gain) + h(
                oracle, BoundContext(t, _candidates_after(oracle, t), k - size(t))
            )
            if t_fbar > f_star + EPS:
                heapq.heappush(
                    open_list,
                    (-t_fbar, -(base_val + float(gain)), tuple(ids_from_mask(t)), t),
                )
    stats = RunStats(
        wall_time_s=time.monotonic() - start,
        nodes_processed=nodes,
        bound_trace=trace,
    )
    return OptResult(
        best=s_star,
        value=f_star,
        proven_optimal=not limit_hit,
        time_limit_hit=limit_hit,
        stats=stats,
    )
