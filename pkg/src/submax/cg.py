"""Constraint generation (CG) and the improved variant (ICG) that adds a
randomized batch of promising rows per iteration instead of one.

The engine below is shared: CG is the lambda = 0 degenerate case, and the
branch-and-bound solver reuses the same pool and iteration for its warm
start and per-node reduced solves.
"""

from __future__ import annotations

import time
from typing import Optional, Sequence

import numpy as np

from .bip import BipProblem, BipSolution, ConstraintRow, row_from_solution, solve_bip
from .greedy import greedy
from .oracle import EPS, SubmodularOracle
from .result import CgTrace, Deadline, Limits, OptResult, RunStats
from .sets import ids_from_mask, size


class Pool:
    """Stored solutions and their cached constraint rows.

    q holds the reduced-problem optima (drives occurrence counts); qplus
    additionally holds every generated solution and backs the row set.
    """

    def __init__(self, oracle: SubmodularOracle, k: int):
        self.oracle = oracle
        self.k = k
        self.q: list[int] = []
        self.q_set: set[int] = set()
        self.qplus: list[int] = []
        self.qplus_set: set[int] = set()
        self.rows: list[ConstraintRow] = []
        self.counts = np.zeros(oracle.n)

    def add_to_qplus(self, s: int) -> bool:
        if s in self.qplus_set:
            return False
        self.qplus_set.add(s)
        self.qplus.append(s)
        self.rows.append(row_from_solution(self.oracle, s))
        return True

    def add_to_q(self, s: int) -> bool:
        self.add_to_qplus(s)
        if s in self.q_set:
            return False
        self.q_set.add(s)
        self.q.append(s)
        for i in ids_from_mask(s):
            self.counts[i - 1] += 1
        return True


def occurrence_rates(pool: Pool) -> np.ndarray:
    """p_i = a_i / sum(a): frequency of each element among stored optima."""
    total = pool.counts.sum()
    if total <= 0:
        raise ValueError("occurrence rates undefined for an empty pool")
    return pool.counts / total


def sub_icg(
    pool: Pool,
    tight_sources: Sequence[int],
    s_t: int,
    k: int,
    lam: int,
    rng: np.random.Generator,
) -> list[int]:
    """Generate up to lam distinct feasible solutions biased toward
    frequently occurring elements.

    Each draw unions a random tight-row source with the current optimum
    and keeps the k elements with the largest random scores r_i drawn
    uniformly from [0, p_i] (ties to the smaller id). Total draws are
    capped so the loop cannot spin when few distinct subsets exist.
    """
    if not tight_sources:
        raise ValueError("need at least one tight row source")
    out: list[int] = []
    seen: set[int] = set()
    rates = occurrence_rates(pool)
    cap = max(10 * lam, 100)
    attempts = 0
    while len(out) < lam and attempts < cap:
        attempts += 1
        s_nat = tight_sources[int(rng.integers(len(tight_sources)))]
        union = s_nat | s_t
        ids = ids_from_mask(union)
        if len(ids) <= k:
            cand = union
        else:
            r = rng.uniform(0.0, rates[np.array(ids) - 1])
            keep = sorted(range(len(ids)), key=lambda t: (-r[t], ids[t]))[:k]
            cand = 0
            for t in keep:
                cand |= 1 << (ids[t] - 1)
        if cand not in seen:
            seen.add(cand)
            out.append(cand)
    return out


class IcgEngine:
    """One constraint-generation loop over a shared pool."""

    def __init__(
        self,
        oracle: SubmodularOracle,
        k: int,
        lam: int = 0,
        rng: Optional[np.random.Generator] = None,
        initial: Optional[int] = None,
    ):
        self.oracle = oracle
        self.k = k
        self.lam = lam
        self.rng = rng if rng is not None else np.random.default_rng(0)
        if initial is None:
            initial = greedy(oracle, k).final
        self.pool = Pool(oracle, k)
        self.pool.add_to_q(initial)
        self.s_star = initial
        self.f_star = oracle.value(initial)
        self.trace = CgTrace()
        self.proven = False

    def _improve(self, s: int) -> None:
        v = self.oracle.value(s)
        if v > self.f_star + EPS:
            self.s_star, self.f_star = s, v

    def _tight_sources(self, sol: BipSolution, sources: list[int]) -> list[int]:
        in_q = [sources[i] for i in sol.tight_rows if sources[i] in self.pool.q_set]
        if in_q:
            return in_q
        return [sources[i] for i in sol.tight_rows]

    def solve_node(self, s0: int = 0, s1: int = 0) -> BipSolution:
        """Solve the reduced problem over the current row set with the
        given fixings, then enrich the pool and scan for incumbents."""
        sources = list(self.pool.qplus)
        sol = solve_bip(BipProblem(rows=self.pool.rows, n=self.oracle.n, k=self.k, s0=s0, s1=s1))
        self.trace.bip_solves += 1
        self._improve(sol.y)
        if sol.z - self.f_star <= EPS and s0 == 0 and s1 == 0:
            return sol
        self.pool.add_to_q(sol.y)
        if self.lam > 0:
            generated = sub_icg(
                self.pool, self._tight_sources(sol, sources), sol.y,
                self.k, self.lam, self.rng,
            )
            for s in generated:
                self.pool.add_to_qplus(s)
                self._improve(s)
        return sol

    def iterate(self) -> bool:
        """One CG/ICG iteration at the root; True once optimality is proven."""
        if self.proven:
            return True
        sol = self.solve_node()
        self.trace.iterations.append(
            (sol.z, self.f_star, len(self.pool.q), len(self.pool.qplus))
        )
        if sol.z - self.f_star <= EPS:
            self.proven = True
        return self.proven


def _run_engine(engine: IcgEngine, limits: Optional[Limits]) -> OptResult:
    deadline = Deadline(limits)
    start = time.monotonic()
    limit_hit = False
    while not engine.iterate():
        if deadline.expired():
            limit_hit = True
            break
    stats = RunStats(
        wall_time_s=time.monotonic() - start,
        bip_solves=engine.trace.bip_solves,
        bound_trace=[(t, z, inc) for t, (z, inc, _, _) in enumerate(engine.trace.iterations, 1)],
    )
    return OptResult(
        best=engine.s_star,
        value=engine.f_star,
        proven_optimal=engine.proven,
        time_limit_hit=limit_hit,
        stats=stats,
        trace=engine.trace,
    )


def cg_solve(
    oracle: SubmodularOracle,
    k: int,
    initial: Optional[int] = None,
    limits: Optional[Limits] = None,
) -> OptResult:
    """Classic one-row-per-iteration constraint generation."""
    engine = IcgEngine(oracle, k, lam=0, initial=initial)
    return _run_engine(engine, limits)


def icg_solve(
    oracle: SubmodularOracle,
    k: int,
    lam: Optional[int] = None,
    seed: int = 0,
    initial: Optional[int] = None,
    limits: Optional[Limits] = None,
) -> OptResult:
    """Improved constraint generation; lam defaults to 10k."""
    if lam is None:
        lam = 10 * k
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    engine = IcgEngine(oracle, k, lam=lam, rng=np.random.default_rng(seed), initial=initial)
    return _run_engine(engine, limits)
