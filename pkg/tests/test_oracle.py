import numpy as np
import pytest

from submax import (
    EPS,
    ExplicitOracle,
    gen_cov,
    gen_loc,
    marginal_gain,
    verify_oracle,
    with_counter,
    with_memo,
)
from conftest import mk


def test_tiny_values(tiny_oracle):
    assert tiny_oracle.value(0) == 0.0
    assert tiny_oracle.value(mk(2)) == pytest.approx(0.8, abs=EPS)
    assert tiny_oracle.value(mk(1, 2, 3)) == pytest.approx(1.1, abs=EPS)


def test_marginal_gain(tiny_oracle):
    assert marginal_gain(tiny_oracle, 2, mk(1)) == pytest.approx(0.5, abs=EPS)
    assert marginal_gain(tiny_oracle, 1, mk(1)) == 0.0
    assert marginal_gain(tiny_oracle, 3, mk(1, 2)) == pytest.approx(0.0, abs=EPS)


def test_out_of_range_errors(tiny_oracle):
    with pytest.raises(ValueError):
        tiny_oracle.value(mk(4))
    with pytest.raises(ValueError):
        marginal_gain(tiny_oracle, 0, 0)


def test_verify_tiny(tiny_oracle):
    report = verify_oracle(tiny_oracle)
    assert report.all_hold
    assert report.counterexample is None


def test_verify_supermodular_counterexample():
    cardinality_squared = ExplicitOracle(3, [float(m.bit_count() ** 2) for m in range(8)])
    report = verify_oracle(cardinality_squared)
    assert not report.is_submodular
    assert report.counterexample["property"] == "submodular"


def test_verify_constant_zero():
    zero = ExplicitOracle(3, [0.0] * 8)
    assert verify_oracle(zero).all_hold


def test_verify_cap_refusal():
    inst = gen_loc(20, 21, 3, seed=1)
    with pytest.raises(ValueError, match="cap"):
        verify_oracle(inst.oracle())


def test_counter_semantics(tiny_oracle):
    oracle, counter = with_counter(tiny_oracle)
    oracle.value(mk(2))
    oracle.value(mk(2))
    assert counter.distinct_evals == 1
    assert counter.total_requests == 2
    oracle.value(mk(1, 2))
    assert counter.distinct_evals == 2
    assert counter.distinct_evals <= counter.total_requests


def test_memo_transparent(tiny_oracle):
    memo = with_memo(tiny_oracle)
    assert memo.value(mk(1, 2)) == pytest.approx(1.1, abs=EPS)
    for mask in range(8):
        assert memo.value(mask) == tiny_oracle.value(mask)


def test_memo_lru_cap(tiny_oracle):
    memo = with_memo(tiny_oracle, max_entries=2)
    for mask in range(8):
        assert memo.value(mask) == tiny_oracle.value(mask)
    assert len(memo._cache) <= 2


def test_gains_many_matches_loop(tiny_oracle):
    gains = tiny_oracle.gains_many(mk(1), [2, 3])
    assert gains == pytest.approx([0.5, 0.2], abs=EPS)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("kind", ["loc", "cov"])
def test_generated_instances_pass_verify(kind, seed):
    n = 6 + seed
    if kind == "loc":
        inst = gen_loc(n, n + 1, 3, seed)
    else:
        inst = gen_cov(n, n + 1, 3, 0.2, seed)
    assert verify_oracle(inst.oracle()).all_hold


@pytest.mark.parametrize("seed", range(3))
def test_diminishing_returns(seed):
    inst = gen_loc(7, 8, 3, seed)
    oracle = inst.oracle()
    rng = np.random.default_rng(seed)
    for _ in range(50):
        s = int(rng.integers(1 << 7))
        extra = int(rng.integers(1 << 7)) & ~s
        t = s | extra
        for i in range(1, 8):
            if not (t >> (i - 1)) & 1:
                assert marginal_gain(oracle, i, s) >= marginal_gain(oracle, i, t) - EPS
