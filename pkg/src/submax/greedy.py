"""Greedy construction (eager and lazy) and the exchange-neighborhood
local search used by the improved branch-and-bound variant.

All tie-breaks pick the smallest element id, so every routine here is
deterministic and the lazy variant reproduces the eager trace exactly.
Zero-gain elements are still added while budget remains; the dominant
bound needs an ordered set of exactly k - |S| added elements.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .oracle import EPS, SubmodularOracle
from .sets import bit, ids_from_mask, iter_ids, size


@dataclass
class GreedyTrace:
    order: list  # chosen element ids in choice order
    gains: list  # marginal gain of each chosen element at its prefix
    final: int  # solution bitmask (base plus chosen elements)


def greedy(
    oracle: SubmodularOracle,
    k: int,
    base: int = 0,
    candidates: Optional[int] = None,
) -> GreedyTrace:
    """Repeatedly add the candidate with the largest marginal gain."""
    if candidates is None:
        candidates = oracle.full & ~base
    if candidates & base:
        raise ValueError("candidates must be disjoint from the base solution")
    cur = base
    cand = candidates
    order: list[int] = []
    gains: list[float] = []
    while size(cur) < k and cand:
        ids = ids_from_mask(cand)
        g = oracle.gains_many(cur, ids)
        j = int(np.argmax(g))  # first max = smallest id
        chosen = ids[j]
        order.append(chosen)
        gains.append(float(g[j]))
        cur |= bit(chosen)
        cand &= ~bit(chosen)
    return GreedyTrace(order=order, gains=gains, final=cur)


def lazy_greedy(
    oracle: SubmodularOracle,
    k: int,
    base: int = 0,
    candidates: Optional[int] = None,
) -> GreedyTrace:
    """Minoux-accelerated greedy; extensionally identical to greedy().

    Keeps stale marginal gains in a max-heap; submodularity guarantees a
    stale gain is an upper bound, so an entry whose refreshed gain still
    beats the heap top is the true argmax.
    """
    if candidates is None:
        candidates = oracle.full & ~base
    if candidates & base:
        raise ValueError("candidates must be disjoint from the base solution")
    cur = base
    order: list[int] = []
    gains: list[float] = []
    ids = ids_from_mask(candidates)
    if ids:
        g0 = oracle.gains_many(cur, ids)
        heap = [(-float(g), i) for g, i in zip(g0, ids)]
        heapq.heapify(heap)
        fresh_at = {i: cur for i in ids}
        while size(cur) < k and heap:
            neg_g, i = heapq.heappop(heap)
            if fresh_at[i] != cur:
                g = float(oracle.gains_many(cur, [i])[0])
                fresh_at[i] = cur
                if heap and (-g, i) > heap[0]:
                    heapq.heappush(heap, (-g, i))
                    continue
                neg_g = -g
            order.append(i)
            gains.append(-neg_g)
            cur |= bit(i)
    return GreedyTrace(order=order, gains=gains, final=cur)


def local_search(oracle: SubmodularOracle, k: int, s0: int = 0, s1: int = 0) -> int:
    """Greedy completion from s1 followed by best-improvement exchanges.

    Swaps one removable member (not fixed in via s1) for one admissible
    non-member (not fixed out via s0) until no exchange improves.
    """
    if s0 & s1:
        raise ValueError("fixed-in and fixed-out sets must be disjoint")
    if size(s1) > k:
        raise ValueError("fixed-in set exceeds the budget")
    cur = greedy(oracle, k, base=s1, candidates=oracle.full & ~(s0 | s1)).final
    cur_val = oracle.value(cur)
    while True:
        best_val = cur_val
        best_swap = None
        addable = oracle.full & ~(cur | s0)
        if not addable:
            break
        add_ids = ids_from_mask(addable)
        for i in iter_ids(cur & ~s1):
            reduced = cur ^ bit(i)
            base_val = oracle.value(reduced)
            g = oracle.gains_many(reduced, add_ids)
            j = int(np.argmax(g))
            val = base_val + float(g[j])
            if val > best_val + EPS:
                best_val = val
                best_swap = (i, add_ids[j])
        if best_swap is None:
            break
        i, j = best_swap
        cur = (cur ^ bit(i)) | bit(j)
        cur_val = best_val
    return cur
