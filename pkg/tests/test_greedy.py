import math

import numpy as np
import pytest

from submax import (
    EPS,
    brute_force_solve,
    gen_cov,
    gen_loc,
    greedy,
    lazy_greedy,
    local_search,
    with_counter,
    with_memo,
)
from submax.sets import bit, ids_from_mask, size
from conftest import mk, small_instances


def test_greedy_tiny_trace(tiny_oracle):
    trace = greedy(tiny_oracle, 2)
    assert trace.order == [2, 1]
    assert trace.gains == pytest.approx([0.8, 0.3], abs=EPS)
    assert trace.final == mk(1, 2)


def test_greedy_budget_exhausted(tiny_oracle):
    trace = greedy(tiny_oracle, 2, base=mk(1, 2))
    assert trace.order == [] and trace.final == mk(1, 2)


def test_greedy_no_candidates(tiny_oracle):
    trace = greedy(tiny_oracle, 2, base=mk(1), candidates=0)
    assert trace.final == mk(1)


def test_greedy_gains_nonincreasing():
    for inst in small_instances(6):
        trace = greedy(inst.oracle(), inst.k)
        for a, b in zip(trace.gains, trace.gains[1:]):
            assert b <= a + EPS


def test_lazy_matches_eager_tiny(tiny_oracle):
    eager = greedy(tiny_oracle, 2)
    lazy = lazy_greedy(tiny_oracle, 2)
    assert lazy.order == eager.order
    assert lazy.gains == pytest.approx(eager.gains, abs=EPS)


@pytest.mark.parametrize("seed", range(10))
def test_lazy_matches_eager_random(seed):
    inst = gen_loc(10, 11, 4, seed) if seed % 2 else gen_cov(10, 11, 4, 0.2, seed)
    oracle = inst.oracle()
    rng = np.random.default_rng(seed)
    base = 0
    for i in rng.choice(10, size=2, replace=False):
        base |= bit(int(i) + 1)
    base &= (1 << 10) - 1
    if size(base) > inst.k:
        base = 0
    eager = greedy(oracle, inst.k, base=base)
    lazy = lazy_greedy(oracle, inst.k, base=base)
    assert lazy.order == eager.order
    assert lazy.final == eager.final


def test_lazy_fewer_distinct_evals():
    inst = gen_loc(30, 31, 5, seed=3)
    eager_oracle, eager_counter = with_counter(inst.oracle())
    greedy(eager_oracle, 5)
    lazy_oracle, lazy_counter = with_counter(inst.oracle())
    lazy_greedy(lazy_oracle, 5)
    assert lazy_counter.distinct_evals <= eager_counter.distinct_evals


def test_greedy_approximation_ratio():
    ratio = 1.0 - 1.0 / math.e
    for inst in small_instances(10):
        oracle = with_memo(inst.oracle())
        opt = brute_force_solve(oracle, inst.k).value
        val = oracle.value(greedy(oracle, inst.k).final)
        assert val >= ratio * opt - EPS


def test_local_search_tiny(tiny_oracle):
    assert local_search(tiny_oracle, 2) == mk(1, 2)
    assert local_search(tiny_oracle, 2, s0=mk(2)) == mk(1, 3)


def test_local_search_never_degrades(tiny_oracle):
    best = mk(1, 2)
    out = local_search(tiny_oracle, 2, s1=best)
    assert tiny_oracle.value(out) >= tiny_oracle.value(best) - EPS


def test_local_search_is_local_optimum_and_respects_fixings():
    for idx, inst in enumerate(small_instances(6)):
        oracle = with_memo(inst.oracle())
        rng = np.random.default_rng(idx)
        s0 = int(rng.integers(1 << inst.n)) & ((1 << inst.n) - 1)
        s1_pool = ids_from_mask(((1 << inst.n) - 1) & ~s0)
        s1 = mk(*s1_pool[: min(2, inst.k)])
        out = local_search(oracle, inst.k, s0=s0, s1=s1)
        assert s1 & out == s1
        assert out & s0 == 0
        assert size(out) <= inst.k
        val = oracle.value(out)
        for i in ids_from_mask(out & ~s1):
            for j in ids_from_mask(((1 << inst.n) - 1) & ~(out | s0)):
                swapped = (out ^ bit(i)) | bit(j)
                assert oracle.value(swapped) <= val + EPS
