#!/usr/bin/env python3
"""Accuracy-parameter sweep: how solution quality and query counts react to
eps for the algorithms whose budgets depend on it."""

import argparse
import os
import sys

from substream.harness import ExperimentConfig, sweep, write_csv
from substream.synth import ba_graph


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--k", type=int, default=50)
    parser.add_argument("--eps", default="0.05,0.1,0.2,0.3,0.4")
    parser.add_argument("--algos", default="qs_br,ltl,sieve")
    parser.add_argument("--reps", type=int, default=3)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out", default="results/eps_sweep.csv")
    args = parser.parse_args()

    graph = ba_graph(args.n, 8, args.seed + 3)
    base = ExperimentConfig(
        graph=None,
        objective="coverage",
        algo="qs_br",
        k=args.k,
        seed=args.seed,
        reps=args.reps,
        order="shuffle",
        lazy=True,
    )
    epss = [float(x) for x in args.eps.split(",")]
    algos = [a.strip() for a in args.algos.split(",")]
    rows = sweep(base, ks=[args.k], epss=epss, algos=algos, graph=graph)
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
