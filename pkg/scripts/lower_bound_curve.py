#!/usr/bin/env python3
"""Detection frequency of the planted-twin instances as the query budget
grows, against the theoretical budget * (c-1) / n line."""

import argparse
import sys

from substream.harness import lower_bound_experiment


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=100)
    parser.add_argument("--c", type=int, default=2)
    parser.add_argument("--budgets", default="0,5,10,20,40,80")
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--prober", default="random", choices=["random", "exhaustive"])
    args = parser.parse_args()

    print("budget,frequency,bound")
    for budget in (int(x) for x in args.budgets.split(",")):
        freq = lower_bound_experiment(args.n, args.c, budget, args.trials, args.seed, args.prober)
        bound = budget * (args.c - 1) / args.n
        print(f"{budget},{freq:.6g},{min(bound, 1.0):.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
