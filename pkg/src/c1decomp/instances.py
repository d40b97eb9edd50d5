"""Random instances, matrix and results file I/O, and a tiny exact oracle.

The generator draws each entry uniformly from {0..max_value} using one
counter-based stream per matrix index, so any matrix in a corpus can be
regenerated without producing the ones before it.  The oracle enumerates
every bounded decomposition of a small matrix and returns the exact
non-dominated front together with witness decompositions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import (Decomposition, IntensityMatrix, ObjectiveVector, Segment,
                   complexity)
from .engel import interval_order
from .pareto import ParetoArchive, RunStats
from .sequencing import distance_matrix, exact_path, path_cost

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GeneratorSpec:
    """Shape and distribution of a random corpus.

    Entries are uniform over {0..max_value}; max_value 0 is allowed and
    yields all-zero matrices.  seed is truncated to 64 bits.
    """

    rows: int
    cols: int
    max_value: int
    seed: int
    count: int = 1

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be at least 1x1")
        if self.max_value < 0:
            raise ValueError("max_value must be nonnegative")
        if self.count < 1:
            raise ValueError("count must be at least 1")


def _stream(seed: int, index: int) -> np.random.Generator:
    # Philox key = 64-bit seed in the low word, matrix index in the next,
    # so streams are independent and addressable by index alone.
    return np.random.Generator(np.random.Philox(key=(seed & _MASK64) + (index << 64)))


def gen_random(spec: GeneratorSpec, *, exclusive_upper: bool = False,
               start_index: int = 0) -> list[IntensityMatrix]:
    """Generate spec.count matrices from streams start_index onwards.

    exclusive_upper draws from {0..max_value-1} instead, for checking how
    much the inclusive upper bound matters.
    """
    high = spec.max_value + (0 if exclusive_upper else 1)
    if high < 1:
        raise ValueError("exclusive_upper needs max_value >= 1")
    out = []
    for i in range(spec.count):
        draw = _stream(spec.seed, start_index + i).integers(0, high, size=(spec.rows, spec.cols))
        out.append(IntensityMatrix(tuple(tuple(int(v) for v in row) for row in draw)))
    return out


class MatrixFormatError(ValueError):
    """Malformed matrix file; kind plus 1-based line/column when known."""

    def __init__(self, kind: str, message: str, *, line: int | None = None,
                 column: int | None = None) -> None:
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.kind = kind
        self.line = line
        self.column = column


def write_matrix(matrix: IntensityMatrix, path) -> None:
    """Write "rows cols" then one line per row, LF endings."""
    lines = [f"{matrix.row_count} {matrix.col_count}"]
    lines.extend(" ".join(str(v) for v in row) for row in matrix.entries)
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix(path) -> IntensityMatrix:
    with open(path) as fh:
        raw = fh.read().split("\n")
    if raw and raw[-1] == "":
        raw.pop()
    if not raw:
        raise MatrixFormatError("header", "empty file", line=1)
    head = raw[0].split()
    if len(head) != 2:
        raise MatrixFormatError("header", "header must be two integers: rows cols", line=1)
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise MatrixFormatError("header", "header must be two integers: rows cols",
                                line=1) from None
    if m < 1 or n < 1:
        raise MatrixFormatError("header", "dimensions must be at least 1x1", line=1)
    if len(raw) - 1 != m:
        raise MatrixFormatError("row-count", f"expected {m} rows, found {len(raw) - 1}",
                                line=len(raw))
    rows = []
    for i, text in enumerate(raw[1:], start=2):
        tokens = text.split()
        if len(tokens) != n:
            raise MatrixFormatError("ragged-row", f"expected {n} entries, found {len(tokens)}",
                                    line=i)
        row = []
        for j, tok in enumerate(tokens, start=1):
            try:
                v = int(tok)
            except ValueError:
                raise MatrixFormatError("bad-token", f"not an integer: {tok!r}",
                                        line=i, column=j) from None
            if v < 0:
                raise MatrixFormatError("negative-entry", f"negative entry {v}",
                                        line=i, column=j)
            row.append(v)
        rows.append(row)
    return IntensityMatrix.from_rows(rows)


def write_results(archive: ParetoArchive, run_stats: RunStats | None, path) -> None:
    """One JSON record per line: solutions sorted by objective vector, then stats.

    A solution record carries the objective triple, the term count, and the
    ordered terms as [coefficient, [[l, r] per row]].  Missing stats fields
    are null.
    """
    entries = sorted(archive, key=lambda e: tuple(e[0]))
    with open(path, "w", newline="\n") as fh:
        for y, d in entries:
            record = {
                "type": "solution",
                "objectives": [y.dt, y.dc, y.su],
                "k": len(d),
                "terms": [[u, [list(p) for p in seg.pairs]] for u, seg in d],
            }
            fh.write(json.dumps(record, separators=(", ", ": ")) + "\n")
        stats = {
            "type": "stats",
            "pe_count": run_stats.pe_count if run_stats else None,
            "phases": run_stats.phases if run_stats else None,
            "neighbors": run_stats.neighbors if run_stats else None,
            "wall_time": run_stats.wall_time if run_stats else None,
        }
        fh.write(json.dumps(stats, separators=(", ", ": ")) + "\n")


def read_results(path) -> tuple[list[tuple[ObjectiveVector, Decomposition]], dict]:
    """Inverse of write_results; returns (solutions, stats dict)."""
    solutions = []
    stats: dict = {}
    with open(path) as fh:
        for text in fh:
            if not text.strip():
                continue
            record = json.loads(text)
            if record["type"] == "stats":
                stats = record
                continue
            terms = tuple((u, Segment.from_pairs((l, r) for l, r in pairs))
                          for u, pairs in record["terms"])
            d = Decomposition(terms)
            solutions.append((ObjectiveVector(*record["objectives"]), d))
    return solutions, stats


@dataclass(frozen=True)
class OracleLimits:
    """Search bounds for the exact oracle: dt at most max_dt, at most
    max_dc segments."""

    max_dt: int
    max_dc: int

    def __post_init__(self) -> None:
        if not self.max_dt >= self.max_dc >= 1:
            raise ValueError("need max_dt >= max_dc >= 1")


class OracleRefusalError(RuntimeError):
    """Search space too large; carries the state estimate that tripped."""

    def __init__(self, estimate: int, limit: int) -> None:
        super().__init__(
            f"estimated {estimate} candidate decompositions exceeds the "
            f"oracle limit of {limit}; tighten the bounds or shrink the matrix")
        self.estimate = estimate
        self.limit = limit


DEFAULT_ORACLE_STATES = 20_000_000


def _comb(n: int, k: int) -> int:
    from math import comb
    return comb(n, k) if 0 <= k <= n else 0


def oracle_estimate(matrix: IntensityMatrix, limits: OracleLimits) -> int:
    """Upper bound on enumerated decompositions before pruning."""
    per_row = len(interval_order(matrix.col_count))
    segments = per_row ** matrix.row_count - 1
    total = 0
    for k in range(1, limits.max_dc + 1):
        # strictly increasing segment tuples times positive coefficient
        # tuples with sum at most max_dt
        total += _comb(segments, k) * _comb(limits.max_dt, k)
    return total


def exact_front(matrix: IntensityMatrix, limits: OracleLimits, *,
                state_limit: int = DEFAULT_ORACLE_STATES,
                ) -> dict[ObjectiveVector, Decomposition]:
    """Exact non-dominated front under the given bounds, with witnesses.

    Enumerates every decomposition with at most max_dc distinct segments
    and coefficient sum at most max_dt (repeating a segment never helps:
    merging equal segments lowers dt-cost and dc without raising su), takes
    the best ordering of each segment set, and Pareto-filters the vectors.
    Returns {vector: witness}; each witness is stored in its best order so
    it evaluates to its key.  Raises OracleRefusalError when the unpruned
    search size estimate exceeds state_limit.
    """
    estimate = oracle_estimate(matrix, limits)
    if estimate > state_limit:
        raise OracleRefusalError(estimate, state_limit)
    if matrix.is_zero():
        return {}

    m, n = matrix.row_count, matrix.col_count
    pairs_menu = interval_order(n)
    candidates: list[tuple[tuple[tuple[int, int], ...], tuple[int, ...]]] = []
    stack = [((), ())]
    for _ in range(m):
        nxt = []
        for pref, mask in stack:
            for (l, r) in pairs_menu:
                row = tuple(1 if l < j < r else 0 for j in range(1, n + 1))
                nxt.append((pref + ((l, r),), mask + row))
        stack = nxt
    for pref, flat in stack:
        if any(flat):
            candidates.append((pref, flat))

    target = [v for row in matrix.entries for v in row]
    cx0 = complexity(matrix)
    if cx0 > limits.max_dt:
        return {}

    rows_cx = _flat_complexity_fn(m, n)
    front: dict[tuple[int, int, int], tuple] = {}

    def settle(chosen: list[tuple[int, int]]) -> None:
        # chosen: (candidate index, coefficient) per term
        segs = [Segment.from_pairs(candidates[ci][0]) for ci, _ in chosen]
        dist = distance_matrix(segs)
        order = exact_path(dist, len(segs))
        su = path_cost(order, dist)
        dt = sum(u for _, u in chosen)
        key = (dt, len(chosen), su)
        for other in front:
            if other[0] <= key[0] and other[1] <= key[1] and other[2] <= key[2]:
                return
        for other in list(front):
            if key[0] <= other[0] and key[1] <= other[1] and key[2] <= other[2]:
                del front[other]
        front[key] = tuple((chosen[i][1], segs[i]) for i in order)

    def dfs(residual: list[int], start: int, dt_left: int, dc_left: int,
            chosen: list[tuple[int, int]]) -> None:
        cx = rows_cx(residual)
        if cx == 0:
            if chosen:
                settle(chosen)
            return
        if dc_left == 0 or cx > dt_left:
            return
        for ci in range(start, len(candidates)):
            _, flat = candidates[ci]
            cap = dt_left
            for cell in range(m * n):
                if flat[cell]:
                    v = residual[cell]
                    if v < cap:
                        cap = v
                        if cap == 0:
                            break
            if cap == 0:
                continue
            nxt = residual[:]
            for u in range(1, cap + 1):
                for cell in range(m * n):
                    if flat[cell]:
                        nxt[cell] -= 1
                chosen.append((ci, u))
                dfs(nxt[:], ci + 1, dt_left - u, dc_left - 1, chosen)
                chosen.pop()

    dfs(target, 0, limits.max_dt, limits.max_dc, [])
    return {ObjectiveVector(*key): Decomposition(terms)
            for key, terms in sorted(front.items())}


def _flat_complexity_fn(m: int, n: int):
    def cx(flat: list[int]) -> int:
        best = 0
        for i in range(m):
            row = flat[i * n:(i + 1) * n]
            prev = 0
            acc = 0
            for v in row:
                if v > prev:
                    acc += v - prev
                prev = v
            if acc > best:
                best = acc
        return best
    return cx
