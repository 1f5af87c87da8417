import pytest

from submax import EPS, astar_solve, brute_force_solve, gen_cov, with_memo
from submax.bounds import DOM, MOD
from submax.result import Limits
from conftest import mk, small_instances


def test_tiny(tiny_oracle):
    res = astar_solve(tiny_oracle, 2, heuristic=MOD)
    assert res.proven_optimal
    assert res.value == pytest.approx(1.1, abs=EPS)
    assert res.best == mk(1, 2)


def test_full_budget_minimal_expansion(tiny_oracle):
    res = astar_solve(tiny_oracle, 3, heuristic=MOD)
    assert res.value == pytest.approx(tiny_oracle.value(mk(1, 2, 3)), abs=EPS)
    assert res.stats.nodes_processed <= 2


@pytest.mark.parametrize("heuristic", [MOD, DOM])
def test_matches_brute_force(heuristic):
    for inst in small_instances(8, n_range=(7, 11)):
        oracle = with_memo(inst.oracle())
        opt = brute_force_solve(oracle, inst.k).value
        res = astar_solve(oracle, inst.k, heuristic=heuristic)
        assert res.proven_optimal
        assert res.value == pytest.approx(opt, abs=EPS)


def test_cov_dom_over_seeds():
    for seed in range(10):
        inst = gen_cov(10, 11, 3, 0.2, seed)
        oracle = with_memo(inst.oracle())
        opt = brute_force_solve(oracle, 3).value
        res = astar_solve(oracle, 3, heuristic=DOM)
        assert res.value == pytest.approx(opt, abs=EPS)


def test_dom_processes_no_more_nodes_in_median():
    mod_counts, dom_counts = [], []
    for idx, inst in enumerate(small_instances(9, n_range=(9, 12))):
        oracle = with_memo(inst.oracle())
        mod_counts.append(astar_solve(oracle, inst.k, heuristic=MOD).stats.nodes_processed)
        dom_counts.append(astar_solve(oracle, inst.k, heuristic=DOM).stats.nodes_processed)
    mod_counts.sort()
    dom_counts.sort()
    assert dom_counts[len(dom_counts) // 2] <= mod_counts[len(mod_counts) // 2]


def test_node_cap_returns_unproven():
    inst = small_instances(1, n_range=(12, 12))[0]
    oracle = with_memo(inst.oracle())
    res = astar_solve(oracle, inst.k, limits=Limits(node_cap=1))
    assert not res.proven_optimal
    assert res.time_limit_hit
    assert res.value <= brute_force_solve(oracle, inst.k).value + EPS
