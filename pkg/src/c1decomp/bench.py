"""Benchmark harness over random corpora.

Two modes.  Rule mode times nothing and measures the greedy rules
themselves: mean segment count and mean travel cost (as built and after
resequencing) per (max value, rule) cell.  Search mode runs the full
two-phase search per instance and reports archive size, phase count,
wall time, and improvement percentages against the two resequenced
greedy baselines.

Instances are regenerated on demand from (seed, stream index), where the
stream index is (max_value << 32) + repetition, so any cell can be
reproduced in isolation and workers need no shared state.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import fmean

from .core import complexity, evaluate
from .engel import Rule, decompose
from .instances import GeneratorSpec, gen_random
from .pareto import SolverConfig, two_phase
from .sequencing import optimize_sequence

# Exact sequencing above this many segments costs seconds per call in the
# inner bench loop; 2-opt is near-exact there and orders of magnitude
# cheaper.
BENCH_EXACT_BOUND = 12

RULE_FIELDS = ("mode", "max_value", "rule", "reps", "mean_dc", "mean_su",
               "mean_su_opt")
SEARCH_FIELDS = ("mode", "max_value", "reps",
                 "pe_mean", "pe_min", "pe_max",
                 "phases_mean", "phases_min", "phases_max",
                 "time_mean", "time_min", "time_max",
                 "pct_su_kali", "pct_su_last", "pct_dc_kali",
                 "pct_su_kali_dtopt", "pct_su_last_dtopt", "pct_dc_kali_dtopt",
                 "pctavg_su_kali", "pctavg_su_last", "pctavg_dc_kali",
                 "pctavg_su_kali_dtopt", "pctavg_su_last_dtopt",
                 "pctavg_dc_kali_dtopt",
                 "dc_worse_count")
_HEADER_NOTE = ("# pct_* = mean over instances of 100*(baseline-best)/baseline; "
                "pctavg_* = 100*(mean(baseline)-mean(best))/mean(baseline); "
                "*_dtopt restricts the archive to entries whose dt equals the "
                "matrix complexity; time columns are wall seconds and vary "
                "between runs")


@dataclass(frozen=True)
class RuleRow:
    """One (max value, rule) cell of the rule-mode report."""

    max_value: int
    rule: str
    reps: int
    mean_dc: float
    mean_su: float
    mean_su_opt: float


@dataclass(frozen=True)
class SearchRow:
    """One max-value row of the search-mode report."""

    max_value: int
    reps: int
    pe_mean: float
    pe_min: int
    pe_max: int
    phases_mean: float
    phases_min: int
    phases_max: int
    time_mean: float
    time_min: float
    time_max: float
    pct_su_kali: float
    pct_su_last: float
    pct_dc_kali: float
    pct_su_kali_dtopt: float
    pct_su_last_dtopt: float
    pct_dc_kali_dtopt: float
    pctavg_su_kali: float
    pctavg_su_last: float
    pctavg_dc_kali: float
    pctavg_su_kali_dtopt: float
    pctavg_su_last_dtopt: float
    pctavg_dc_kali_dtopt: float
    dc_worse_count: int


@dataclass
class BenchReport:
    """Everything one bench invocation produced."""

    seed: int
    rows: int
    cols: int
    rule_rows: list[RuleRow] = field(default_factory=list)
    search_rows: list[SearchRow] = field(default_factory=list)


def _instance(seed, max_value, index, rows, cols, exclusive_upper):
    spec = GeneratorSpec(rows, cols, max_value, seed, 1)
    return gen_random(spec, exclusive_upper=exclusive_upper,
                      start_index=(max_value << 32) + index)[0]


def _rules_kernel(args):
    seed, max_value, index, rows, cols, exclusive_upper, rule_names, bound = args
    matrix = _instance(seed, max_value, index, rows, cols, exclusive_upper)
    out = []
    for name in rule_names:
        d = decompose(matrix, Rule(name))
        raw = evaluate(d)
        tuned = evaluate(optimize_sequence(d, bound))
        out.append((raw.dc, raw.su, tuned.su))
    return out


def _search_kernel(args):
    seed, max_value, index, rows, cols, exclusive_upper, bound, max_phases = args
    matrix = _instance(seed, max_value, index, rows, cols, exclusive_upper)
    kali = evaluate(optimize_sequence(decompose(matrix, Rule.KALI), bound))
    last = evaluate(optimize_sequence(decompose(matrix, Rule.LAST), bound))
    cfg = SolverConfig(exact_k_bound=bound, max_phases=max_phases)
    archive, stats = two_phase(matrix, cfg)
    cx = complexity(matrix)
    vectors = archive.vectors
    best_su = min(y.su for y in vectors)
    best_dc = min(y.dc for y in vectors)
    at_cx = [y for y in vectors if y.dt == cx]
    best_su_opt = min(y.su for y in at_cx)
    best_dc_opt = min(y.dc for y in at_cx)
    return (stats.pe_count, stats.phases, stats.wall_time,
            kali.dc, kali.su, last.su, cx,
            best_su, best_dc, best_su_opt, best_dc_opt)


def _run(kernel, tasks, threads):
    if threads <= 1:
        return [kernel(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(kernel, tasks, chunksize=4))


def bench_rules(l_values, reps, seed, *, rules=tuple(Rule), rows=15, cols=15,
                exclusive_upper=False, exact_bound=BENCH_EXACT_BOUND,
                threads=1) -> list[RuleRow]:
    """Mean dc / su / resequenced su per (max value, rule) cell."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    rule_names = tuple(r.value for r in rules)
    out = []
    for max_value in l_values:
        tasks = [(seed, max_value, i, rows, cols, exclusive_upper, rule_names,
                  exact_bound) for i in range(reps)]
        samples = _run(_rules_kernel, tasks, threads)
        for pos, name in enumerate(rule_names):
            cells = [s[pos] for s in samples]
            out.append(RuleRow(
                max_value, name, reps,
                fmean(c[0] for c in cells),
                fmean(c[1] for c in cells),
                fmean(c[2] for c in cells)))
    return out


def _pct(baseline: float, best: float) -> float:
    return 100.0 * (baseline - best) / baseline if baseline else 0.0


def bench_search(l_values, reps, seed, *, rows=15, cols=15,
                 exclusive_upper=False, exact_bound=BENCH_EXACT_BOUND,
                 max_phases=None, threads=1) -> list[SearchRow]:
    """Archive statistics and baseline improvements per max value."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    out = []
    for max_value in l_values:
        tasks = [(seed, max_value, i, rows, cols, exclusive_upper, exact_bound,
                  max_phases) for i in range(reps)]
        samples = _run(_search_kernel, tasks, threads)
        pe = [s[0] for s in samples]
        phases = [s[1] for s in samples]
        times = [s[2] for s in samples]
        kali_dc = [s[3] for s in samples]
        kali_su = [s[4] for s in samples]
        last_su = [s[5] for s in samples]
        best_su = [s[7] for s in samples]
        best_dc = [s[8] for s in samples]
        best_su_opt = [s[9] for s in samples]
        best_dc_opt = [s[10] for s in samples]
        out.append(SearchRow(
            max_value, reps,
            fmean(pe), min(pe), max(pe),
            fmean(phases), min(phases), max(phases),
            fmean(times), min(times), max(times),
            fmean(map(_pct, kali_su, best_su)),
            fmean(map(_pct, last_su, best_su)),
            fmean(map(_pct, kali_dc, best_dc)),
            fmean(map(_pct, kali_su, best_su_opt)),
            fmean(map(_pct, last_su, best_su_opt)),
            fmean(map(_pct, kali_dc, best_dc_opt)),
            _pct(fmean(kali_su), fmean(best_su)),
            _pct(fmean(last_su), fmean(best_su)),
            _pct(fmean(kali_dc), fmean(best_dc)),
            _pct(fmean(kali_su), fmean(best_su_opt)),
            _pct(fmean(last_su), fmean(best_su_opt)),
            _pct(fmean(kali_dc), fmean(best_dc_opt)),
            sum(1 for b, k in zip(best_dc, kali_dc) if b > k)))
    return out


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_report(report: BenchReport, path) -> None:
    """CSV with a leading '#' note documenting the percentage definitions.

    Rule rows and search rows carry distinct mode tags; a single run
    normally holds one kind.
    """
    with open(path, "w", newline="") as fh:
        fh.write(_HEADER_NOTE + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        if report.rule_rows:
            writer.writerow(RULE_FIELDS)
            for r in report.rule_rows:
                writer.writerow(["rules", r.max_value, r.rule, r.reps,
                                 _fmt(r.mean_dc), _fmt(r.mean_su),
                                 _fmt(r.mean_su_opt)])
        if report.search_rows:
            writer.writerow(SEARCH_FIELDS)
            for r in report.search_rows:
                writer.writerow(["2ppls", r.max_value, r.reps,
                                 _fmt(r.pe_mean), r.pe_min, r.pe_max,
                                 _fmt(r.phases_mean), r.phases_min, r.phases_max,
                                 f"{r.time_mean:.3f}", f"{r.time_min:.3f}",
                                 f"{r.time_max:.3f}",
                                 _fmt(r.pct_su_kali), _fmt(r.pct_su_last),
                                 _fmt(r.pct_dc_kali),
                                 _fmt(r.pct_su_kali_dtopt),
                                 _fmt(r.pct_su_last_dtopt),
                                 _fmt(r.pct_dc_kali_dtopt),
                                 _fmt(r.pctavg_su_kali), _fmt(r.pctavg_su_last),
                                 _fmt(r.pctavg_dc_kali),
                                 _fmt(r.pctavg_su_kali_dtopt),
                                 _fmt(r.pctavg_su_last_dtopt),
                                 _fmt(r.pctavg_dc_kali_dtopt),
                                 r.dc_worse_count])
