"""Command-line front end: instance generation, solving, oracle
verification and a benchmark harness writing CSV summaries.

Result documents are JSON with sorted keys, so two runs with identical
inputs differ at most in the wall-time fields.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import instances
from .astar import astar_solve
from .bb import BB_ICG, BB_ICG_PLUS, bb_solve
from .bounds import DOM, MOD
from .brute import brute_force_solve
from .cg import cg_solve, icg_solve
from .greedy import greedy, lazy_greedy
from .oracle import verify_oracle, with_counter, with_memo
from .result import Limits, OptResult, RunStats
from .sets import ids_from_mask

ALGORITHMS = (
    "greedy",
    "lazy-greedy",
    "astar-mod",
    "astar-dom",
    "cg",
    "icg",
    "bb-icg",
    "bb-icg-plus",
    "brute",
)
EXACT_ALGORITHMS = frozenset(a for a in ALGORITHMS if a not in ("greedy", "lazy-greedy"))

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_TIME_LIMIT = 3

MEMO_CAP = 1_000_000


def _dispatch(algorithm: str, oracle, k: int, lam, seed: int, limits: Limits) -> OptResult:
    if algorithm in ("greedy", "lazy-greedy"):
        build = greedy if algorithm == "greedy" else lazy_greedy
        trace = build(oracle, k)
        return OptResult(
            best=trace.final,
            value=oracle.value(trace.final),
            proven_optimal=False,
            stats=RunStats(),
        )
    if algorithm == "astar-mod":
        return astar_solve(oracle, k, heuristic=MOD, limits=limits)
    if algorithm == "astar-dom":
        return astar_solve(oracle, k, heuristic=DOM, limits=limits)
    if algorithm == "cg":
        return cg_solve(oracle, k, limits=limits)
    if algorithm == "icg":
        return icg_solve(oracle, k, lam=lam, seed=seed, limits=limits)
    if algorithm == "bb-icg":
        return bb_solve(oracle, k, lam=lam, seed=seed, variant=BB_ICG, limits=limits)
    if algorithm == "bb-icg-plus":
        return bb_solve(oracle, k, lam=lam, seed=seed, variant=BB_ICG_PLUS, limits=limits)
    if algorithm == "brute":
        return brute_force_solve(oracle, k)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def run_algorithm(
    inst,
    algorithm: str,
    lam=None,
    seed: int = 0,
    time_limit_s: float = 3600.0,
    instance_label: str = "",
) -> dict:
    """Run one solver on one instance and return the result document."""
    oracle, counter = with_counter(with_memo(inst.oracle(), max_entries=MEMO_CAP))
    limits = Limits(time_limit_s=time_limit_s)
    res = _dispatch(algorithm, oracle, inst.k, lam, seed, limits)
    res.stats.oracle_distinct = counter.distinct_evals
    res.stats.oracle_total = counter.total_requests
    return {
        "algorithm": algorithm,
        "instance": instance_label,
        "seed": seed,
        "lambda": lam,
        "value": oracle.value(res.best),
        "solution": ids_from_mask(res.best),
        "proven_optimal": res.proven_optimal,
        "time_limit_hit": res.time_limit_hit,
        "stats": {
            "wall_time_s": res.stats.wall_time_s,
            "nodes_processed": res.stats.nodes_processed,
            "bip_solves": res.stats.bip_solves,
            "oracle_distinct": res.stats.oracle_distinct,
            "oracle_total": res.stats.oracle_total,
            "bound_trace": [list(t) for t in res.stats.bound_trace],
        },
    }


def _cmd_generate(args) -> int:
    m = args.m if args.m is not None else args.n + 1
    if args.type == "loc":
        inst = instances.gen_loc(args.n, m, args.k, args.seed)
    else:
        inst = instances.gen_cov(args.n, m, args.k, args.cover_prob, args.seed)
    instances.save(inst, args.out)
    return EXIT_OK


def _cmd_solve(args) -> int:
    inst = instances.load(args.instance)
    doc = run_algorithm(
        inst,
        args.algorithm,
        lam=getattr(args, "lambda"),
        seed=args.seed,
        time_limit_s=args.time_limit,
        instance_label=str(args.instance),
    )
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if doc["time_limit_hit"] and args.algorithm in EXACT_ALGORITHMS:
        return EXIT_TIME_LIMIT
    return EXIT_OK


def _cmd_verify(args) -> int:
    inst = instances.load(args.instance)
    report = verify_oracle(inst.oracle(), cap=args.cap)
    print(
        json.dumps(
            {
                "is_normalized": report.is_normalized,
                "is_nondecreasing": report.is_nondecreasing,
                "is_submodular": report.is_submodular,
                "counterexample": report.counterexample,
            },
            sort_keys=True,
            indent=2,
        )
    )
    return EXIT_OK if report.all_hold else EXIT_ERROR


def _as_list(v):
    return v if isinstance(v, list) else [v]


def _bench_runs(config: dict):
    """Expand a bench config into (class key, instance, algorithm, seed) runs."""
    base_seed = int(config.get("base_seed", 1))
    for ci, cls in enumerate(config.get("classes", [])):
        kind = cls["type"]
        seeds = cls.get("seeds", 5)
        for n in _as_list(cls["n"]):
            for k in _as_list(cls["k"]):
                m = cls.get("m") or n + 1
                if isinstance(seeds, list):
                    run_seeds = seeds
                else:
                    run_seeds = [
                        int(
                            np.random.SeedSequence(
                                entropy=base_seed, spawn_key=(ci, r)
                            ).generate_state(1)[0]
                        )
                        for r in range(int(seeds))
                    ]
                for ri, s in enumerate(run_seeds):
                    if kind == "loc":
                        inst = instances.gen_loc(n, m, k, s)
                    elif kind == "cov":
                        inst = instances.gen_cov(n, m, k, cls.get("cover_prob", 0.07), s)
                    else:
                        raise ValueError(f"field 'type': unknown class type {kind!r}")
                    for alg in config.get("algorithms", []):
                        yield (kind, n, k), inst, alg, s, ri


BENCH_COLUMNS = (
    "type", "n", "k", "algorithm", "runs", "solved",
    "mean_time_s", "mean_nodes", "mean_bip_solves", "mean_oracle_distinct",
)


def _cmd_bench(args) -> int:
    config = json.loads(Path(args.config).read_text())
    time_limit = float(config.get("time_limit_s", 3600.0))
    lam = config.get("lambda")
    out_csv = Path(args.out or config.get("out", "bench_results.csv"))
    runs_dir = Path(config.get("runs_dir", out_csv.with_suffix("").name + "_runs"))
    runs_dir.mkdir(parents=True, exist_ok=True)

    tasks = list(_bench_runs(config))

    def worker(task):
        key, inst, alg, seed, ri = task
        label = f"{key[0]}_n{key[1]}_k{key[2]}_s{seed}"
        try:
            doc = run_algorithm(
                inst, alg, lam=lam, seed=seed, time_limit_s=time_limit,
                instance_label=label,
            )
        except Exception as exc:  # failures are recorded, not fatal
            doc = {"algorithm": alg, "instance": label, "seed": seed, "error": str(exc)}
        (runs_dir / f"{label}_{alg}.json").write_text(
            json.dumps(doc, sort_keys=True, indent=2) + "\n"
        )
        return key, alg, doc

    workers = int(config.get("workers", 1))
    if workers > 1 and tasks:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(worker, tasks))
    else:
        results = [worker(t) for t in tasks]

    grouped: dict = {}
    for key, alg, doc in results:
        grouped.setdefault((key, alg), []).append(doc)

    with open(out_csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(BENCH_COLUMNS)
        for (key, alg), docs in sorted(grouped.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            ok = [d for d in docs if "error" not in d]
            solved = sum(1 for d in ok if d["proven_optimal"])
            def mean(field):
                if not ok:
                    return ""
                return sum(d["stats"][field] for d in ok) / len(ok)
            writer.writerow(
                [
                    key[0], key[1], key[2], alg, len(docs), solved,
                    mean("wall_time_s"), mean("nodes_processed"),
                    mean("bip_solves"), mean("oracle_distinct"),
                ]
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="submax",
        description="Exact submodular maximization under a cardinality constraint.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a seeded benchmark instance file")
    g.add_argument("--type", choices=("loc", "cov"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, default=None, help="defaults to n + 1")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--cover-prob", type=float, default=0.07)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_generate)

    s = sub.add_parser("solve", help="run one algorithm on an instance file")
    s.add_argument("--instance", required=True)
    s.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    s.add_argument("--lambda", type=int, default=None, help="rows generated per iteration (default 10k)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--time-limit", type=float, default=3600.0)
    s.add_argument("--out", default=None)
    s.set_defaults(func=_cmd_solve)

    b = sub.add_parser("bench", help="run a config cross product, write a CSV summary")
    b.add_argument("--config", required=True)
    b.add_argument("--out", default=None, help="CSV path (default bench_results.csv)")
    b.set_defaults(func=_cmd_bench)

    v = sub.add_parser("verify", help="exhaustively check oracle properties")
    v.add_argument("--instance", required=True)
    v.add_argument("--cap", type=int, default=16)
    v.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
