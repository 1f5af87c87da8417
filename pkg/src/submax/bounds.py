"""Admissible upper bounds on the best feasible completion of a solution.

Both bounds are parameterized by an explicit candidate set C, so the
best-first search (which excludes by index order) and the branch-and-bound
(which excludes by fixings) share the same code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .greedy import greedy
from .oracle import SubmodularOracle
from .sets import bit, ids_from_mask, size

MOD = "mod"
DOM = "dom"


@dataclass(frozen=True)
class BoundContext:
    s: int  # current solution mask
    c: int  # candidate mask, disjoint from s
    p: int  # remaining budget

    def __post_init__(self):
        if self.s & self.c:
            raise ValueError("candidate set must be disjoint from the solution")
        if self.p < 0:
            raise ValueError("remaining budget must be nonnegative")


def h_mod(oracle: SubmodularOracle, ctx: BoundContext) -> float:
    """Modular bound: sum of the top-p singleton gains over C.

    When C fits the remaining budget the exact completion gain f_S(C) is
    returned instead, which is tight for non-decreasing f.
    """
    if ctx.p == 0 or ctx.c == 0:
        return 0.0
    ids = ids_from_mask(ctx.c)
    if len(ids) <= ctx.p:
        return oracle.value(ctx.s | ctx.c) - oracle.value(ctx.s)
    gains = oracle.gains_many(ctx.s, ids)
    if ctx.p == 1:
        return float(gains.max())
    top = np.partition(gains, len(ids) - ctx.p)[len(ids) - ctx.p :]
    return float(top.sum())


def h_dom(oracle: SubmodularOracle, ctx: BoundContext) -> float:
    """Dominant-element bound: greedy completion gain divided by the
    geometric shortfall of each greedy step against the modular bound.

    Every denominator used is guarded: a zero modular bound at any greedy
    prefix forces a zero optimal completion gain from that prefix, so the
    raw greedy gain is already tight and is returned as-is.
    """
    if ctx.p == 0 or ctx.c == 0:
        return 0.0
    if size(ctx.c) <= ctx.p:
        return oracle.value(ctx.s | ctx.c) - oracle.value(ctx.s)
    hm_root = h_mod(oracle, ctx)
    if hm_root <= 0.0:
        # no candidate has positive gain, so no completion does either
        return 0.0
    trace = greedy(oracle, k=size(ctx.s) + ctx.p, base=ctx.s, candidates=ctx.c)
    fs_t = float(sum(trace.gains))
    beta = 1.0
    prefix = ctx.s
    remaining = ctx.c
    hm = hm_root
    for elem, gain in zip(trace.order, trace.gains):
        if hm <= 0.0:
            return fs_t
        b = 1.0 - gain / hm
        beta *= min(max(b, 0.0), 1.0)
        prefix |= bit(elem)
        remaining &= ~bit(elem)
        # the denominator must bound the residual f_S(T*) - f_S(prefix); the
        # optimal completion T* need not contain any greedy pick, so the
        # budget stays at p even as the prefix grows
        hm = h_mod(oracle, BoundContext(prefix, remaining, ctx.p))
    denom = 1.0 - beta
    if denom <= 0.0:
        # unreachable (the first greedy gain equals the top singleton gain,
        # so beta_1 < 1 when hm_root > 0); the modular bound stays valid
        return hm_root
    # each factor is an admissible bound on its own; take the tighter one
    return min(fs_t / denom, hm_root)


def upper_value(oracle: SubmodularOracle, ctx: BoundContext, heuristic: str = MOD) -> float:
    h = h_mod if heuristic == MOD else h_dom
    return oracle.value(ctx.s) + h(oracle, ctx)
