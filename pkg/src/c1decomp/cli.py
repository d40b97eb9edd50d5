"""Command line front end.

Subcommands: gen (random corpora), decompose (one greedy run), pareto
(full two-phase search), oracle (exact bounded front for tiny matrices),
bench (CSV reports over random corpora).

Exit codes: 0 success, 2 unusable input (flags, file contents, ranges),
3 oracle refusal, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import BENCH_EXACT_BOUND, BenchReport, bench_rules, bench_search, write_report
from .core import evaluate
from .engel import Rule, decompose
from .instances import (GeneratorSpec, MatrixFormatError, OracleLimits,
                        OracleRefusalError, exact_front, gen_random,
                        read_matrix, write_matrix, write_results)
from .pareto import ParetoArchive, SolverConfig, two_phase
from .sequencing import DEFAULT_EXACT_BOUND, optimize_sequence

_RULES = [r.value for r in Rule]


def _cmd_gen(args) -> int:
    spec = GeneratorSpec(args.rows, args.cols, args.max_value, args.seed,
                         args.count)
    matrices = gen_random(spec, exclusive_upper=args.exclusive_upper)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, matrix in enumerate(matrices):
        path = out / f"matrix_{i:05d}.txt"
        write_matrix(matrix, path)
        print(path)
    return 0


def _cmd_decompose(args) -> int:
    matrix = read_matrix(args.infile)
    d = decompose(matrix, Rule(args.rule))
    if args.optimize_seq:
        d = optimize_sequence(d, args.exact_k_bound)
    y = evaluate(d)
    print(f"{y.dt} {y.dc} {y.su}")
    if args.out:
        archive = ParetoArchive()
        archive.add(d, y)
        write_results(archive, None, args.out)
    return 0


def _cmd_pareto(args) -> int:
    matrix = read_matrix(args.infile)
    config = SolverConfig(exact_k_bound=args.exact_k_bound)
    archive, stats = two_phase(matrix, config)
    for y in sorted(archive.vectors):
        print(f"{y.dt} {y.dc} {y.su}")
    print(f"pe={stats.pe_count} phases={stats.phases} "
          f"time={stats.wall_time:.3f}s")
    if args.out:
        write_results(archive, stats, args.out)
    return 0


def _cmd_oracle(args) -> int:
    matrix = read_matrix(args.infile)
    front = exact_front(matrix, OracleLimits(args.max_dt, args.max_dc))
    archive = ParetoArchive()
    for y, d in front.items():
        archive.add(d, y)
    for y in sorted(archive.vectors):
        print(f"{y.dt} {y.dc} {y.su}")
    if args.out:
        write_results(archive, None, args.out)
    return 0


def _cmd_bench(args) -> int:
    if args.l_min < 0 or args.l_min > args.l_max:
        raise ValueError("need 0 <= l-min <= l-max")
    l_values = range(args.l_min, args.l_max + 1)
    report = BenchReport(seed=args.seed, rows=args.rows, cols=args.cols)
    common = dict(rows=args.rows, cols=args.cols,
                  exclusive_upper=args.exclusive_upper,
                  exact_bound=args.exact_k_bound, threads=args.threads)
    if args.mode == "rules":
        rules = tuple(Rule(r) for r in args.rule) if args.rule else tuple(Rule)
        report.rule_rows = bench_rules(l_values, args.reps, args.seed,
                                       rules=rules, **common)
        count = len(report.rule_rows)
    else:
        report.search_rows = bench_search(l_values, args.reps, args.seed,
                                          **common)
        count = len(report.search_rows)
    write_report(report, args.out)
    print(f"{args.out}: {count} rows")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="c1decomp",
        description="Decompose nonnegative integer matrices into weighted "
                    "consecutive-ones segments.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a random matrix corpus")
    gen.add_argument("--rows", type=int, default=15)
    gen.add_argument("--cols", type=int, default=15)
    gen.add_argument("--max-value", type=int, required=True)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--exclusive-upper", action="store_true",
                     help="draw from {0..max-value-1} instead")
    gen.add_argument("--out", required=True, help="output directory")
    gen.set_defaults(func=_cmd_gen)

    dec = sub.add_parser("decompose", help="one greedy decomposition")
    dec.add_argument("--in", dest="infile", required=True)
    dec.add_argument("--rule", choices=_RULES, default=Rule.KALI.value)
    dec.add_argument("--optimize-seq", action="store_true",
                     help="reorder segments to cut travel cost")
    dec.add_argument("--exact-k-bound", type=int, default=DEFAULT_EXACT_BOUND)
    dec.add_argument("--out", help="results file")
    dec.set_defaults(func=_cmd_decompose)

    par = sub.add_parser("pareto", help="full two-phase search")
    par.add_argument("--in", dest="infile", required=True)
    par.add_argument("--exact-k-bound", type=int, default=DEFAULT_EXACT_BOUND)
    par.add_argument("--out", help="results file")
    par.set_defaults(func=_cmd_pareto)

    orc = sub.add_parser("oracle", help="exact bounded front (tiny matrices)")
    orc.add_argument("--in", dest="infile", required=True)
    orc.add_argument("--max-dt", type=int, required=True)
    orc.add_argument("--max-dc", type=int, required=True)
    orc.add_argument("--out", help="results file")
    orc.set_defaults(func=_cmd_oracle)

    ben = sub.add_parser("bench", help="CSV report over a random corpus")
    ben.add_argument("--mode", choices=["rules", "2ppls"], required=True)
    ben.add_argument("--l-min", type=int, default=3)
    ben.add_argument("--l-max", type=int, default=16)
    ben.add_argument("--reps", type=int, default=20)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--rows", type=int, default=15)
    ben.add_argument("--cols", type=int, default=15)
    ben.add_argument("--rule", action="append", choices=_RULES,
                     help="rules mode: restrict to this rule (repeatable)")
    ben.add_argument("--exact-k-bound", type=int, default=BENCH_EXACT_BOUND)
    ben.add_argument("--exclusive-upper", action="store_true")
    ben.add_argument("--threads", type=int, default=1)
    ben.add_argument("--out", required=True, help="CSV path")
    ben.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OracleRefusalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
