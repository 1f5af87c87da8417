"""Value-oracle abstraction for non-decreasing submodular set functions.

An oracle evaluates f(S) for subsets S of {1..n} given as bitmasks
(see :mod:`submax.sets`). Wrappers add memoization and request counting.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .sets import bit, full_mask, ids_from_mask

# Absolute tolerance on objective-value comparisons used throughout the
# package. Benchmark objectives are sums of at most m values in [0, 1],
# so 1e-9 sits safely below any meaningful gap.
EPS = 1e-9

DEFAULT_VERIFY_CAP = 16


class SubmodularOracle:
    """Base class: a set function f with f(emptyset) = 0, carried n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"ground set size must be >= 1, got {n}")
        self.n = n
        self.full = full_mask(n)

    def value(self, mask: int) -> float:
        raise NotImplementedError

    def gains_many(self, mask: int, elems: Sequence[int]) -> np.ndarray:
        """Marginal gains f({i}|S) for each i in elems (i assumed not in S).

        Subclasses may vectorize this; the default just loops over value().
        """
        base = self.value(mask)
        return np.array([self.value(mask | bit(i)) - base for i in elems])

    def _check_mask(self, mask: int) -> None:
        if mask < 0 or mask & ~self.full:
            raise ValueError(
                f"subset contains element ids outside 1..{self.n}"
            )


class ExplicitOracle(SubmodularOracle):
    """Oracle backed by a full table of 2^n values, for small-n tests."""

    def __init__(self, n: int, table: Sequence[float]):
        super().__init__(n)
        if len(table) != 1 << n:
            raise ValueError("table must have exactly 2^n entries")
        self.table = list(table)

    def value(self, mask: int) -> float:
        self._check_mask(mask)
        return self.table[mask]


def marginal_gain(oracle: SubmodularOracle, i: int, mask: int) -> float:
    """f({i}|S) = f(S u {i}) - f(S); zero when i is already in S."""
    if not 1 <= i <= oracle.n:
        raise ValueError(f"element id {i} out of range 1..{oracle.n}")
    if mask & bit(i):
        return 0.0
    return oracle.value(mask | bit(i)) - oracle.value(mask)


@dataclass
class OracleReport:
    is_normalized: bool
    is_nondecreasing: bool
    is_submodular: bool
    counterexample: Optional[dict] = None

    @property
    def all_hold(self) -> bool:
        return self.is_normalized and self.is_nondecreasing and self.is_submodular


def verify_oracle(oracle: SubmodularOracle, cap: int = DEFAULT_VERIFY_CAP) -> OracleReport:
    """Exhaustively check f(0)=0, monotonicity and submodularity.

    Enumerates all subsets, so n is capped (default 16). Submodularity is
    checked in its diminishing-returns form f({i}|S) >= f({i}|S u {j}).
    """
    n = oracle.n
    if n > cap:
        raise ValueError(
            f"verify_oracle enumerates all 2^n subsets; n={n} exceeds cap={cap}"
        )
    vals = np.array([oracle.value(m) for m in range(1 << n)])
    report = OracleReport(True, True, True)

    if abs(vals[0]) > EPS:
        report.is_normalized = False
        report.counterexample = {"property": "normalized", "f_empty": float(vals[0])}

    masks = np.arange(1 << n)
    for i in range(n):
        bi = 1 << i
        without = masks[(masks & bi) == 0]
        bad = np.nonzero(vals[without | bi] < vals[without] - EPS)[0]
        if bad.size and report.is_nondecreasing:
            s = int(without[bad[0]])
            report.is_nondecreasing = False
            if report.counterexample is None:
                report.counterexample = {
                    "property": "nondecreasing",
                    "S": ids_from_mask(s),
                    "T": ids_from_mask(s | bi),
                }
    for i in range(n):
        bi = 1 << i
        for j in range(n):
            if j == i:
                continue
            bj = 1 << j
            without = masks[(masks & (bi | bj)) == 0]
            lhs = vals[without | bi] - vals[without]
            rhs = vals[without | bi | bj] - vals[without | bj]
            bad = np.nonzero(lhs < rhs - EPS)[0]
            if bad.size and report.is_submodular:
                s = int(without[bad[0]])
                report.is_submodular = False
                if report.counterexample is None:
                    report.counterexample = {
                        "property": "submodular",
                        "S": ids_from_mask(s | bi),
                        "T": ids_from_mask(s | bj),
                    }
    return report


@dataclass
class EvalCounter:
    """Tracks oracle usage: every request, and first-seen distinct subsets."""

    total_requests: int = 0
    distinct_evals: int = 0
    _seen: set = field(default_factory=set, repr=False)

    def record(self, mask: int) -> None:
        self.total_requests += 1
        if mask not in self._seen:
            self._seen.add(mask)
            self.distinct_evals += 1


class MemoOracle(SubmodularOracle):
    """Caches values keyed by subset mask; optional LRU entry cap."""

    def __init__(self, inner: SubmodularOracle, max_entries: Optional[int] = None):
        super().__init__(inner.n)
        self.inner = inner
        self.max_entries = max_entries
        self._cache: OrderedDict[int, float] = OrderedDict()

    def value(self, mask: int) -> float:
        cache = self._cache
        v = cache.get(mask)
        if v is not None:
            if self.max_entries is not None:
                cache.move_to_end(mask)
            return v
        v = self.inner.value(mask)
        cache[mask] = v
        if self.max_entries is not None and len(cache) > self.max_entries:
            cache.popitem(last=False)
        return v

    def gains_many(self, mask: int, elems: Sequence[int]) -> np.ndarray:
        base = self.value(mask)
        gains = self.inner.gains_many(mask, elems)
        cache = self._cache
        for i, g in zip(elems, gains):
            cache[mask | bit(i)] = base + float(g)
        if self.max_entries is not None:
            while len(cache) > self.max_entries:
                cache.popitem(last=False)
        return gains


class CountingOracle(SubmodularOracle):
    """Counts every value request (bulk gain queries count per subset)."""

    def __init__(self, inner: SubmodularOracle, counter: EvalCounter):
        super().__init__(inner.n)
        self.inner = inner
        self.counter = counter

    def value(self, mask: int) -> float:
        self.counter.record(mask)
        return self.inner.value(mask)

    def gains_many(self, mask: int, elems: Sequence[int]) -> np.ndarray:
        self.counter.record(mask)
        for i in elems:
            self.counter.record(mask | bit(i))
        return self.inner.gains_many(mask, elems)


def with_memo(oracle: SubmodularOracle, max_entries: Optional[int] = None) -> MemoOracle:
    return MemoOracle(oracle, max_entries=max_entries)


def with_counter(oracle: SubmodularOracle) -> tuple[CountingOracle, EvalCounter]:
    counter = EvalCounter()
    return CountingOracle(oracle, counter), counter
