import numpy as np
import pytest

from submax import EPS, ExplicitOracle, brute_force_completion, with_memo
from submax.bounds import DOM, MOD, BoundContext, h_dom, h_mod, upper_value
from submax.sets import ids_from_mask, size
from conftest import mk, small_instances


def test_hmod_tiny(tiny_oracle):
    assert h_mod(tiny_oracle, BoundContext(mk(1), mk(2, 3), 1)) == pytest.approx(0.5, abs=EPS)
    assert h_mod(tiny_oracle, BoundContext(0, mk(1, 2, 3), 2)) == pytest.approx(1.5, abs=EPS)
    assert h_mod(tiny_oracle, BoundContext(mk(1), mk(2, 3), 0)) == 0.0


def test_hmod_small_candidate_set(tiny_oracle):
    # |C| <= p: exact completion gain f_S(C)
    assert h_mod(tiny_oracle, BoundContext(mk(1), mk(2, 3), 2)) == pytest.approx(0.5, abs=EPS)


def test_hdom_tiny(tiny_oracle):
    assert h_dom(tiny_oracle, BoundContext(0, mk(1, 2, 3), 2)) == pytest.approx(1.1, abs=EPS)


def test_hdom_zero_hmod():
    zero = ExplicitOracle(3, [0.0] * 8)
    assert h_dom(zero, BoundContext(0, mk(1, 2, 3), 2)) == 0.0


def test_upper_value_tiny(tiny_oracle):
    assert upper_value(tiny_oracle, BoundContext(mk(1), mk(2, 3), 1), MOD) == pytest.approx(1.1, abs=EPS)
    assert upper_value(tiny_oracle, BoundContext(0, mk(1, 2, 3), 2), DOM) == pytest.approx(1.1, abs=EPS)
    assert upper_value(tiny_oracle, BoundContext(mk(1, 2), 0, 0), MOD) == pytest.approx(1.1, abs=EPS)


def _random_contexts(n, count, rng):
    full = (1 << n) - 1
    for _ in range(count):
        s = int(rng.integers(1 << n)) & full
        if size(s) > n - 2:
            s = 0
        c = int(rng.integers(1 << n)) & full & ~s
        p = int(rng.integers(0, 5))
        yield BoundContext(s, c, p)


def test_admissibility_and_dominance():
    rng = np.random.default_rng(7)
    for inst in small_instances(6, n_range=(6, 10)):
        oracle = with_memo(inst.oracle())
        for ctx in _random_contexts(inst.n, 25, rng):
            opt = brute_force_completion(oracle, ctx.s, ctx.c, ctx.p) - oracle.value(ctx.s)
            hm = h_mod(oracle, ctx)
            hd = h_dom(oracle, ctx)
            assert hm >= opt - EPS
            assert hd >= opt - EPS
            assert hd <= hm + EPS, (
                f"dominant bound exceeded modular bound: ctx={ctx} hd={hd} hm={hm}"
            )


def test_p1_equality():
    rng = np.random.default_rng(11)
    for inst in small_instances(4, n_range=(6, 9)):
        oracle = with_memo(inst.oracle())
        for ctx in _random_contexts(inst.n, 10, rng):
            ctx1 = BoundContext(ctx.s, ctx.c, 1)
            assert abs(h_dom(oracle, ctx1) - h_mod(oracle, ctx1)) <= EPS


def test_hmod_exact_for_modular_oracle():
    w = np.array([0.3, 0.9, 0.1, 0.5, 0.7])
    table = [sum(w[i] for i in range(5) if m >> i & 1) for m in range(32)]
    oracle = ExplicitOracle(5, table)
    rng = np.random.default_rng(3)
    for ctx in _random_contexts(5, 30, rng):
        opt = brute_force_completion(oracle, ctx.s, ctx.c, ctx.p) - oracle.value(ctx.s)
        assert h_mod(oracle, ctx) == pytest.approx(opt, abs=EPS)


def test_context_validation():
    with pytest.raises(ValueError):
        BoundContext(mk(1), mk(1, 2), 1)
    with pytest.raises(ValueError):
        BoundContext(0, mk(1), -1)
