"""Command-line front-end: solve one problem, print raw enumeration
sequences, or run the benchmark harness."""

from __future__ import annotations

import argparse
import sys

from .bench import parse_config, run_bench, write_csv, write_scatter
from .engine import EngineConfig, solve
from .smt_parser import InputError, parse_problem
from .tuple_enum import Bounds, make_enumerator, parse_strategy


def _cmd_solve(args) -> int:
    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    try:
        problem = parse_problem(text)
        strategy = parse_strategy(args.strategy)
    except (InputError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    config = EngineConfig(strategy=strategy, failmask=not args.no_failmask,
                          max_rounds=args.max_rounds)
    result = solve(problem, config)
    print(result.verdict)
    if args.stats:
        print(result.stats.format_block(), file=sys.stderr)
    return 0


def _cmd_enumerate(args) -> int:
    try:
        strategy = parse_strategy(args.strategy)
        if args.vars < 1:
            raise ValueError("--vars must be >= 1")
        if args.limit < 0:
            raise ValueError("--limit must be >= 0")
        if args.bounds is not None:
            maxes = tuple(int(x) for x in args.bounds.split(","))
            if len(maxes) != args.vars:
                raise ValueError("--bounds needs %d entries" % args.vars)
        elif args.max is not None:
            maxes = (args.max,) * args.vars
        else:
            raise ValueError("one of --max or --bounds is required")
        bounds = Bounds(maxes)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    enum = make_enumerator(strategy, bounds)
    for _ in range(args.limit):
        t = enum.next()
        if t is None:
            break
        print(",".join(str(d) for d in t))
    return 0


def _cmd_bench(args) -> int:
    config_names = [c.strip() for c in args.strategies.split(",") if c.strip()]
    try:
        for name in config_names:
            parse_config(name)
        records = run_bench(args.directory, config_names,
                            timeout_s=args.timeout, jobs=args.jobs)
    except (FileNotFoundError, ValueError, InputError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    write_csv(records, args.csv)
    if args.scatter:
        pair, path = args.scatter
        names = pair.split(",")
        if len(names) != 2:
            print("error: --scatter expects two configuration names A,B", file=sys.stderr)
            return 2
        write_scatter(records, names[0], names[1], path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enuminst",
        description="Enumerative quantifier instantiation for EUF")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide one input file")
    p.add_argument("path")
    p.add_argument("--strategy", default="u",
                   help="u | sum | lmax | id:<k> | rwlk:<seed>")
    p.add_argument("--no-failmask", action="store_true")
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("enumerate", help="print an enumeration order")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--bounds", default=None, help="comma-separated per-position maxima")
    p.add_argument("--strategy", default="u")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("bench", help="run a directory of problems")
    p.add_argument("directory")
    p.add_argument("--strategies", required=True,
                   help="comma-separated configurations; append -no-failmask to disable masks")
    p.add_argument("--timeout", type=float, default=None, help="seconds per run")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", required=True)
    p.add_argument("--scatter", nargs=2, metavar=("A,B", "PATH"), default=None)
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
