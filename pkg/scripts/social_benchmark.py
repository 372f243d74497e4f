#!/usr/bin/env python3
"""Benchmark the streaming algorithms against the baselines on a
social-network-shaped synthetic graph and write a sweep CSV.

The CSV feeds the plot tool in frontend/:

    python3 scripts/social_benchmark.py --n 4000 --out results/social.csv
    cd frontend && npm run plot -- --csv ../results/social.csv \
        --x k --y value_norm --out ../results/value_vs_k.svg
"""

import argparse
import os
import sys

from substream.harness import ExperimentConfig, sweep, write_csv
from substream.synth import ba_graph


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4000)
    parser.add_argument("--m", type=int, default=10, help="attachment edges per vertex")
    parser.add_argument("--objective", default="coverage",
                        choices=["coverage", "revenue_monotone", "maxcut", "revenue_nonmonotone"])
    parser.add_argument("--k", default="10,50,100")
    parser.add_argument("--algos", default="quickstream,quickstream_pp,qs_br,ltl,sieve,random")
    parser.add_argument("--reps", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="results/social.csv")
    args = parser.parse_args()

    graph = ba_graph(args.n, args.m, args.seed + 7)
    base = ExperimentConfig(
        graph=None,
        objective=args.objective,
        algo="greedy",
        k=10,
        seed=args.seed,
        reps=args.reps,
        order="shuffle",
        lazy=True,
    )
    ks = [int(x) for x in args.k.split(",")]
    algos = [a.strip() for a in args.algos.split(",")]
    rows = sweep(base, ks=ks, epss=[0.1], algos=algos, graph=graph)
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
