"""Exact solvers for non-decreasing submodular maximization under a
cardinality constraint: best-first search, constraint generation and
branch-and-bound, with benchmark instance generators and a CLI."""

from .astar import astar_solve
from .bb import BB_ICG, BB_ICG_PLUS, bb_solve, branch_element
from .bip import (
    BipProblem,
    BipSolution,
    ConstraintRow,
    brute_force_bip,
    brute_force_pricing,
    row_from_solution,
    row_value,
    solve_bip,
)
from .bounds import DOM, MOD, BoundContext, h_dom, h_mod, upper_value
from .brute import brute_force_completion, brute_force_solve
from .cg import IcgEngine, Pool, cg_solve, icg_solve, occurrence_rates, sub_icg
from .greedy import GreedyTrace, greedy, lazy_greedy, local_search
from .instances import (
    FacilityLocationInstance,
    WeightedCoverageInstance,
    cov_value,
    gen_cov,
    gen_loc,
    load,
    loc_value,
    save,
)
from .oracle import (
    EPS,
    EvalCounter,
    ExplicitOracle,
    SubmodularOracle,
    marginal_gain,
    verify_oracle,
    with_counter,
    with_memo,
)
from .result import CgTrace, Limits, OptResult, RunStats
from .sets import ids_from_mask, mask_from_ids

__version__ = "0.1.0"
