"""Exact solver for the reduced problem: maximize the minimum over a set
of linear constraint rows, subject to a cardinality budget and variable
fixings.

Each row comes from a stored solution S and reads
    z <= f(S) + sum of f({i}|S) * y_i over i outside S,
so with nonnegative coefficients the per-row unconstrained best completion
(fixed part plus the top-r free coefficients) gives a valid node bound.
The default solver is a depth-first branch-and-bound on the free
variables; a brute-force enumerator serves as its reference oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .oracle import EPS, SubmodularOracle
from .sets import bit, ids_from_mask, mask_from_ids, size

BIP_ENUM_CAP = 22


@dataclass(frozen=True)
class ConstraintRow:
    source: int  # mask of the solution S the row was built from
    base: float  # f(S)
    coeff: np.ndarray  # length n; f({i}|S) outside S, identically 0 on S

    def __post_init__(self):
        if self.base < -EPS or np.any(self.coeff < -EPS):
            raise ValueError("row base and coefficients must be nonnegative")


def row_from_solution(oracle: SubmodularOracle, s: int) -> ConstraintRow:
    base = oracle.value(s)
    coeff = np.zeros(oracle.n)
    outside = ids_from_mask(oracle.full & ~s)
    if outside:
        gains = oracle.gains_many(s, outside)
        # monotone oracles give nonnegative gains; clip float dust
        coeff[np.array(outside) - 1] = np.maximum(gains, 0.0)
    return ConstraintRow(source=s, base=base, coeff=coeff)


def row_value(row: ConstraintRow, y: int) -> float:
    total = row.base
    for i in ids_from_mask(y):
        total += row.coeff[i - 1]
    return float(total)


@dataclass
class BipProblem:
    rows: Sequence[ConstraintRow]
    n: int
    k: int
    s0: int = 0  # elements fixed out
    s1: int = 0  # elements fixed in

    def __post_init__(self):
        if not self.rows:
            raise ValueError("problem needs at least one constraint row")
        if self.s0 & self.s1:
            raise ValueError("fixed-in and fixed-out sets must be disjoint")
        if size(self.s1) > self.k:
            raise ValueError("fixed-in set exceeds the budget")


@dataclass
class BipSolution:
    y: int  # chosen element mask
    z: float
    tight_rows: list = field(default_factory=list)  # indices of rows at z


def _stack(prob: BipProblem):
    coeff = np.vstack([r.coeff for r in prob.rows])
    base = np.array([r.base for r in prob.rows])
    return coeff, base


def _evaluate(coeff: np.ndarray, base: np.ndarray, y: int) -> np.ndarray:
    idx = [i - 1 for i in ids_from_mask(y)]
    if idx:
        return base + coeff[:, idx].sum(axis=1)
    return base.copy()


def solve_bip(prob: BipProblem) -> BipSolution:
    """Exact max-min optimum via depth-first branch-and-bound.

    Branches on the free element with the largest coefficient in a row
    achieving the node bound (include-branch first, ties by smallest id).
    Deterministic: identical problems produce identical solutions.
    """
    coeff, base = _stack(prob)
    free_all = ((1 << prob.n) - 1) & ~prob.s0 & ~prob.s1

    best_y = prob.s1
    best_z = float(_evaluate(coeff, base, best_y).min())

    root_fixed = _evaluate(coeff, base, prob.s1)

    # incumbent seed: the budget-filling top coefficients of a bound row
    r0 = prob.k - size(prob.s1)
    if r0 > 0 and free_all:
        free_idx = np.array([i - 1 for i in ids_from_mask(free_all)])
        fc = coeff[:, free_idx]
        if r0 >= fc.shape[1]:
            tops = fc.sum(axis=1)
        else:
            tops = np.partition(fc, fc.shape[1] - r0, axis=1)[:, fc.shape[1] - r0 :].sum(axis=1)
        j = int(np.argmin(root_fixed + tops))
        order = np.argsort(-fc[j], kind="stable")[:r0]
        seed = prob.s1 | mask_from_ids(int(free_idx[i]) + 1 for i in order)
        z = float(_evaluate(coeff, base, seed).min())
        if z > best_z:
            best_y, best_z = seed, z

    def dfs(in_mask: int, free: int, fixed: np.ndarray) -> None:
        nonlocal best_y, best_z
        r = prob.k - size(in_mask)
        if r <= 0 or not free:
            z = float(fixed.min())
            if z > best_z:
                best_y, best_z = in_mask, z
            return
        free_idx = np.array([i - 1 for i in ids_from_mask(free)])
        fc = coeff[:, free_idx]
        if r >= fc.shape[1]:
            # coefficients are nonnegative: taking everything free is optimal here
            z = float((fixed + fc.sum(axis=1)).min())
            if z > best_z:
                best_y, best_z = in_mask | free, z
            return
        tops = np.partition(fc, fc.shape[1] - r, axis=1)[:, fc.shape[1] - r :].sum(axis=1)
        bounds = fixed + tops
        j = int(np.argmin(bounds))
        if bounds[j] <= best_z:
            return
        i_star = int(free_idx[int(np.argmax(fc[j]))]) + 1
        b = bit(i_star)
        dfs(in_mask | b, free & ~b, fixed + coeff[:, i_star - 1])
        dfs(in_mask, free & ~b, fixed)

    dfs(prob.s1, free_all, root_fixed)

    vals = _evaluate(coeff, base, best_y)
    z = float(vals.min())
    tight = [i for i, v in enumerate(vals) if v <= z + EPS]
    return BipSolution(y=best_y, z=z, tight_rows=tight)


def brute_force_bip(prob: BipProblem, cap: int = BIP_ENUM_CAP) -> BipSolution:
    """Reference solver: enumerate every feasible assignment."""
    free_ids = ids_from_mask(((1 << prob.n) - 1) & ~prob.s0 & ~prob.s1)
    if len(free_ids) > cap:
        raise ValueError(
            f"{len(free_ids)} free variables exceed enumeration cap={cap}"
        )
    coeff, base = _stack(prob)
    r_max = prob.k - size(prob.s1)
    best_y, best_z = None, -np.inf
    for r in range(0, min(r_max, len(free_ids)) + 1):
        for combo in combinations(free_ids, r):
            y = prob.s1 | mask_from_ids(combo)
            z = float(_evaluate(coeff, base, y).min())
            if z > best_z:
                best_y, best_z = y, z
    vals = _evaluate(coeff, base, best_y)
    tight = [i for i, v in enumerate(vals) if v <= best_z + EPS]
    return BipSolution(y=best_y, z=best_z, tight_rows=tight)


def brute_force_pricing(
    oracle: SubmodularOracle, k: int, y: int, cap: int = BIP_ENUM_CAP
) -> tuple[int, float]:
    """Minimize f(S) + sum of f({i}|S) y_i over |S| <= k by enumeration.

    Test-only certificate: at a proven optimum no row evaluated at y can
    fall below the final bound.
    """
    if oracle.n > cap:
        raise ValueError(f"n={oracle.n} exceeds enumeration cap={cap}")
    best_s: Optional[int] = None
    best_v = np.inf
    ids = range(1, oracle.n + 1)
    for r in range(0, k + 1):
        for combo in combinations(ids, r):
            s = mask_from_ids(combo)
            v = oracle.value(s)
            rest = y & ~s
            if rest:
                v += float(oracle.gains_many(s, ids_from_mask(rest)).sum())
            if v < best_v:
                best_s, best_v = s, v
    return best_s, float(best_v)
