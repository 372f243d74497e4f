"""Benchmark command line.

Subcommands: `run` (one experiment cell, from flags or a config file),
`sweep` (cartesian k/eps/algorithm sweep), `verify` (the brute-force ratio
and invariant battery), `lowerbound` (planted-twin budget experiment).

Exit codes: 0 success, 1 validation or usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ValidationError
from .harness import (
    ALGORITHMS,
    OBJECTIVES,
    ExperimentConfig,
    lower_bound_experiment,
    parse_config_file,
    run_experiment,
    sweep,
    write_csv,
)
from .verify import run_all

_DEFAULTS = {
    "graph": None,
    "objective": "coverage",
    "algo": None,
    "k": None,
    "c": 1,
    "eps": 0.1,
    "b": 1.49,
    "trials": None,
    "order": "file",
    "seed": 0,
    "reps": 1,
    "out": None,
    "lazy": False,
}

_CASTS = {
    "k": int,
    "c": int,
    "seed": int,
    "reps": int,
    "trials": int,
    "eps": float,
    "b": float,
}


def _parse_bool(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # map usage problems to exit code 1
        raise ValidationError(message)


def _add_common(p: argparse.ArgumentParser, *, none_defaults: bool) -> None:
    d = (lambda _key: None) if none_defaults else (lambda key: _DEFAULTS[key])
    p.add_argument("--graph", default=d("graph"), help="edge-list file path")
    p.add_argument("--objective", default=d("objective"), choices=OBJECTIVES)
    p.add_argument("--c", type=int, default=d("c"))
    p.add_argument("--eps", type=float, default=d("eps"))
    p.add_argument("--b", type=float, default=d("b"))
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--order", default=d("order"), choices=["file", "shuffle"])
    p.add_argument("--seed", type=int, default=d("seed"))
    p.add_argument("--reps", type=int, default=d("reps"))
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--lazy", type=_parse_bool, default=d("lazy"))


def _build_parser() -> _Parser:
    parser = _Parser(prog="substream", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="one experiment from flags or a config file")
    run_p.add_argument("--config", help="key = value file mirroring the flags")
    run_p.add_argument("--algo", choices=ALGORITHMS, default=None)
    run_p.add_argument("--k", type=int, default=None)
    _add_common(run_p, none_defaults=True)

    sweep_p = sub.add_parser("sweep", help="cartesian sweep over k, eps, algo lists")
    sweep_p.add_argument("--algo", required=True, help="comma-separated algorithm ids")
    sweep_p.add_argument("--k", required=True, help="comma-separated k values")
    sweep_p.add_argument("--eps-list", default=None, help="comma-separated eps values")
    _add_common(sweep_p, none_defaults=False)

    verify_p = sub.add_parser("verify", help="brute-force ratio and invariant battery")
    verify_p.add_argument("--max-n", type=int, default=16)
    verify_p.add_argument("--instances", type=int, default=120)
    verify_p.add_argument("--seed", type=int, default=7)

    lb_p = sub.add_parser("lowerbound", help="planted-twin query budget experiment")
    lb_p.add_argument("--n", type=int, default=100)
    lb_p.add_argument("--c", type=int, default=2)
    lb_p.add_argument("--budgets", default="5,10,20", help="comma-separated budgets")
    lb_p.add_argument("--trials", type=int, default=2000)
    lb_p.add_argument("--seed", type=int, default=0)
    lb_p.add_argument("--prober", default="random", choices=["random", "exhaustive"])
    return parser


def _config_from_run_args(args) -> ExperimentConfig:
    """Resolution order: explicit flag, then config file, then default."""
    file_values: dict[str, str] = {}
    if args.config:
        file_values = parse_config_file(args.config)
        for key in file_values:
            if key not in _DEFAULTS:
                raise ValidationError(f"unknown config key {key!r}")
    values = {}
    for key, default in _DEFAULTS.items():
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
        elif key in file_values:
            text = file_values[key]
            if key == "lazy":
                values[key] = _parse_bool(text)
            elif key in _CASTS:
                values[key] = _CASTS[key](text)
            else:
                values[key] = text
        else:
            values[key] = default
    if values["algo"] is None:
        raise ValidationError("--algo is required (flag or config file)")
    if values["k"] is None:
        raise ValidationError("--k is required (flag or config file)")
    if values["objective"] is None:
        values["objective"] = "coverage"
    if values["algo"] not in ALGORITHMS:
        raise ValidationError(f"unknown algorithm {values['algo']!r}")
    return ExperimentConfig(**values)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            config = _config_from_run_args(args)
            records, greedy_record = run_experiment(config)
            rows = records + [greedy_record]
            if config.out:
                write_csv(rows, config.out)
                print(f"wrote {len(rows)} rows to {config.out}")
            else:
                for rec in rows:
                    print(",".join(rec.row()))
            return 0
        if args.command == "sweep":
            ks = [int(x) for x in args.k.split(",") if x]
            algos = [x.strip() for x in args.algo.split(",") if x.strip()]
            for algo in algos:
                if algo not in ALGORITHMS:
                    raise ValidationError(f"unknown algorithm {algo!r}")
            epss = [float(x) for x in args.eps_list.split(",")] if args.eps_list else [args.eps]
            base = ExperimentConfig(
                graph=args.graph,
                objective=args.objective,
                algo=algos[0],
                k=ks[0],
                c=args.c,
                eps=epss[0],
                b=args.b,
                trials=args.trials,
                order=args.order,
                seed=args.seed,
                reps=args.reps,
                out=args.out,
                lazy=args.lazy,
            )
            rows = sweep(base, ks, epss, algos)
            if args.out:
                write_csv(rows, args.out)
                print(f"wrote {len(rows)} rows to {args.out}")
            else:
                for rec in rows:
                    print(",".join(rec.row()))
            return 0
        if args.command == "verify":
            results = run_all(max_n=args.max_n, instances=args.instances, seed=args.seed)
            ok = True
            for res in results:
                print(res.line())
                ok = ok and res.ok
            return 0 if ok else 1
        if args.command == "lowerbound":
            budgets = [int(x) for x in args.budgets.split(",") if x]
            print("budget,frequency,bound")
            for budget in budgets:
                freq = lower_bound_experiment(args.n, args.c, budget, args.trials, args.seed, args.prober)
                bound = budget * (args.c - 1) / args.n
                print(f"{budget},{freq:.6g},{bound:.6g}")
            return 0
        raise ValidationError(f"unknown command {args.command!r}")
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
