"""Decomposition of nonnegative integer matrices into positively weighted
consecutive-ones segments, with a three-objective Pareto search over
total coefficient, segment count, and inter-segment travel cost."""

from .bench import (BENCH_EXACT_BOUND, BenchReport, RuleRow, SearchRow,
                    bench_rules, bench_search, write_report)
from .core import (Decomposition, DifferenceMatrix, IntensityMatrix,
                   ObjectiveVector, Segment, complexity, difference_matrix,
                   evaluate, nonzero_diff_count, row_complexity,
                   segment_distance, subtract, validate)
from .engel import Rule, decompose, interval_order, max_coefficient, select_segment
from .instances import (GeneratorSpec, MatrixFormatError, OracleLimits,
                        OracleRefusalError, exact_front, gen_random,
                        oracle_estimate, read_matrix, read_results,
                        write_matrix, write_results)
from .neighborhood import enumerate_neighbors, merge_terms, rebuild
from .pareto import (ParetoArchive, RunStats, SolverConfig, add_solution,
                     dominates, initial_population, pls, two_phase)
from .sequencing import (DEFAULT_EXACT_BOUND, distance_matrix, exact_path,
                         optimize_sequence, path_cost, two_opt_path)

__version__ = "0.1.0"

__all__ = [
    "BENCH_EXACT_BOUND", "BenchReport", "RuleRow", "SearchRow",
    "bench_rules", "bench_search", "write_report",
    "Decomposition", "DifferenceMatrix", "IntensityMatrix",
    "ObjectiveVector", "Segment", "complexity", "difference_matrix",
    "evaluate", "nonzero_diff_count", "row_complexity", "segment_distance",
    "subtract", "validate",
    "Rule", "decompose", "interval_order", "max_coefficient", "select_segment",
    "GeneratorSpec", "MatrixFormatError", "OracleLimits",
    "OracleRefusalError", "exact_front", "gen_random", "oracle_estimate",
    "read_matrix", "read_results", "write_matrix", "write_results",
    "enumerate_neighbors", "merge_terms", "rebuild",
    "ParetoArchive", "RunStats", "SolverConfig", "add_solution", "dominates",
    "initial_population", "pls", "two_phase",
    "DEFAULT_EXACT_BOUND", "distance_matrix", "exact_path",
    "optimize_sequence", "path_cost", "two_opt_path",
    "__version__",
]
