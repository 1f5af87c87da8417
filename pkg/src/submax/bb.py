"""Depth-first branch-and-bound over variable fixings, driven by the
improved constraint generation pool.

Each node fixes a set of elements out (s0) and in (s1) and inherits its
parent's reduced-problem optimum as a free upper bound, so many nodes are
pruned without solving anything. The plus variant additionally prunes
with the dominant-element bound and improves the incumbent by local
search at every popped node.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import BoundContext, h_dom
from .cg import IcgEngine
from .greedy import greedy, local_search
from .oracle import EPS, SubmodularOracle
from .result import Deadline, Limits, OptResult, RunStats
from .sets import bit, ids_from_mask, size

BB_ICG = "bb-icg"
BB_ICG_PLUS = "bb-icg+"


@dataclass(frozen=True)
class BBNode:
    s0: int
    s1: int
    inherited_bound: float


def branch_element(oracle: SubmodularOracle, s0: int, s1: int) -> int:
    """Free element maximizing f(S1 u {i}), ties to the smallest id."""
    free = oracle.full & ~(s0 | s1)
    if not free:
        raise ValueError("no free element to branch on")
    ids = ids_from_mask(free)
    gains = oracle.gains_many(s1, ids)
    return ids[int(np.argmax(gains))]


def bb_solve(
    oracle: SubmodularOracle,
    k: int,
    lam: Optional[int] = None,
    seed: int = 0,
    variant: str = BB_ICG,
    initial: Optional[int] = None,
    limits: Optional[Limits] = None,
) -> OptResult:
    if variant not in (BB_ICG, BB_ICG_PLUS):
        raise ValueError(f"unknown variant {variant!r}")
    if lam is None:
        lam = 10 * k
    start = time.monotonic()
    deadline = Deadline(limits)
    plus = variant == BB_ICG_PLUS
    if initial is None:
        initial = greedy(oracle, k).final
    engine = IcgEngine(oracle, k, lam=lam, rng=np.random.default_rng(seed), initial=initial)

    def result(proven: bool, limit_hit: bool, nodes: int, trace: list) -> OptResult:
        stats = RunStats(
            wall_time_s=time.monotonic() - start,
            nodes_processed=nodes,
            bip_solves=engine.trace.bip_solves,
            bound_trace=trace,
        )
        return OptResult(
            best=engine.s_star,
            value=engine.f_star,
            proven_optimal=proven,
            time_limit_hit=limit_hit,
            stats=stats,
            trace=engine.trace,
        )

    # warm start: the first k root iterations of the improved generator
    for _ in range(k):
        if engine.iterate():
            return result(True, False, 0, [])
        if deadline.expired():
            return result(False, True, 0, [])

    stack = [BBNode(0, 0, math.inf)]
    nodes = 0
    trace: list = []
    while stack:
        if deadline.expired() or deadline.over_node_cap(nodes):
            return result(False, True, nodes, trace)
        node = stack.pop()
        nodes += 1
        node_fbar = math.inf
        if plus:
            ls = local_search(oracle, k, node.s0, node.s1)
            engine._improve(ls)
            node_fbar = oracle.value(node.s1) + h_dom(
                oracle,
                BoundContext(node.s1, oracle.full & ~(node.s0 | node.s1), k - size(node.s1)),
            )
        if min(node_fbar, node.inherited_bound) <= engine.f_star + EPS:
            trace.append((nodes, min(node_fbar, node.inherited_bound), engine.f_star))
            continue
        sol = engine.solve_node(node.s0, node.s1)
        z = sol.z
        trace.append((nodes, min(node_fbar, z), engine.f_star))
        if min(node_fbar, z) <= engine.f_star + EPS:
            continue
        free = oracle.full & ~(node.s0 | node.s1)
        if size(node.s1) <= k - 1 and free:
            i_star = branch_element(oracle, node.s0, node.s1)
            b = bit(i_star)
            # exclude-child below, include-child on top of the stack
            stack.append(BBNode(node.s0 | b, node.s1, z))
            stack.append(BBNode(node.s0, node.s1 | b, z))
    return result(True, False, nodes, trace)
