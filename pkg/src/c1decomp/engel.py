"""Greedy construction of beam-on-time optimal decompositions.

The sweep extracts one weighted segment at a time.  Every step uses
the largest coefficient u such that each row still has an interval that
(a) keeps all entries nonnegative after subtracting u, and
(b) leaves the row's complexity at most complexity(A) - u.

Condition (b) makes the overall complexity drop by exactly u per step, so
the finished decomposition reaches dt = complexity(A), the least possible
total coefficient.  Within a step each row picks independently among its
feasible intervals; the selection rule only steers dc and su.
"""

from __future__ import annotations

import enum
from typing import Sequence

from .core import Decomposition, IntensityMatrix, Segment, complexity

_BIG = 1 << 60


class Rule(enum.Enum):
    """Per-row interval selection rules."""

    FIRST = "first"   # first feasible interval in canonical order
    LAST = "last"     # last feasible interval in canonical order
    MIN = "min"       # feasible interval closest to the previous step's
    KALI = "kali"     # feasible interval leaving fewest nonzero differences

    @classmethod
    def from_name(cls, name: str) -> "Rule":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown rule {name!r}; choose from "
                             f"{', '.join(r.value for r in cls)}") from None


_FIRST, _LAST, _MIN, _KALI = range(4)
_RULE_CODE = {Rule.FIRST: _FIRST, Rule.LAST: _LAST, Rule.MIN: _MIN, Rule.KALI: _KALI}


def interval_order(col_count: int) -> list[tuple[int, int]]:
    """Canonical interval enumeration for rows of the given width.

    The empty interval (0, 1) comes first, then every (l, r) with
    r >= l + 2 in lexicographic order.  Length is 1 + n(n+1)/2.
    """
    if col_count < 1:
        raise ValueError("need at least one column")
    order = [(0, 1)]
    for l in range(col_count):
        for r in range(l + 2, col_count + 2):
            order.append((l, r))
    return order


def row_feasible(matrix: IntensityMatrix, row: int, interval: tuple[int, int],
                 u: int, target: int) -> bool:
    """Check one row interval against both step conditions.

    ``row`` is 1-based.  ``target`` is the complexity the whole matrix had
    when the step started; after subtracting u along the interval the row's
    own complexity must not exceed target - u, and no entry may go negative.
    This is the plain definition, kept independent of the closed forms used
    by the solver loop so the two can be checked against each other.
    """
    if not 1 <= row <= matrix.row_count:
        raise IndexError(f"row {row} out of range 1..{matrix.row_count}")
    n = matrix.col_count
    l, r = interval
    if not (0 <= l < r <= n + 1):
        raise ValueError(f"invalid interval ({l}, {r}) for {n} columns")
    if u < 1:
        raise ValueError(f"coefficient {u} is not positive")
    values = list(matrix.entries[row - 1])
    for j in range(l, r - 1):
        values[j] -= u
        if values[j] < 0:
            return False
    cx = 0
    prev = 0
    for x in values:
        if x > prev:
            cx += x - prev
        prev = x
    return cx <= target - u


# ---------------------------------------------------------------------------
# Raw row-level machinery.  Rows are mutable lists; intervals are (l, r)
# pairs in the same encoding as Segment.  Kept free of object churn because
# the local-search neighborhood calls this many thousands of times.


def _row_diffs(a: list[int], n: int) -> list[int]:
    d = [0] * (n + 1)
    prev = 0
    for j in range(n):
        x = a[j]
        d[j] = x - prev
        prev = x
    d[n] = -prev
    return d


def _row_cx(a: Sequence[int]) -> int:
    cx = 0
    prev = 0
    for x in a:
        if x > prev:
            cx += x - prev
        prev = x
    return cx


def _rows_cx(rows: list[list[int]]) -> int:
    return max(_row_cx(a) for a in rows)


def _row_max_u(a: list[int], n: int, d: list[int], slack: int, enough: int) -> int:
    """Largest coefficient this row can support, capped once it reaches
    ``enough`` (the running minimum over earlier rows)."""
    best = slack
    if best >= enough:
        return best
    for l in range(n):
        p = d[l]
        if p < 0:
            p = 0
        mn = _BIG
        for r in range(l + 2, n + 2):
            v = a[r - 2]
            if v < mn:
                if v == 0:
                    break
                mn = v
            q = d[r - 1]
            q = -q if q < 0 else 0
            if p <= q:
                lo, hi = p, q
            else:
                lo, hi = q, p
            if slack >= hi - lo:
                cap = (slack + lo + hi) >> 1
            else:
                cap = lo + slack
            u = mn if mn < cap else cap
            if u > best:
                best = u
                if best >= enough:
                    return best
    return best


def _row_pick(a: list[int], n: int, d: list[int], slack: int, u: int,
              rule: int, prev_pair: tuple[int, int] | None) -> tuple[int, int] | None:
    """Choose this row's interval at coefficient u under the given rule.

    Returns None when nothing is feasible, which cannot happen if u is the
    step coefficient computed by _row_max_u over the same rows.
    """
    empty_ok = u <= slack
    if rule == _FIRST or (rule == _MIN and prev_pair is None):
        if empty_ok:
            return (0, 1)
        for l in range(n):
            p = d[l]
            if p < 0:
                p = 0
            cap_p = u - p
            if cap_p < 0:
                cap_p = 0
            mn = _BIG
            for r in range(l + 2, n + 2):
                v = a[r - 2]
                if v < mn:
                    if v < u:
                        break
                    mn = v
                q = d[r - 1]
                q = -q if q < 0 else 0
                cap_q = u - q
                if cap_q < 0:
                    cap_q = 0
                if cap_p + cap_q <= slack:
                    return (l, r)
        return None

    best_pair = None
    if rule == _LAST:
        if empty_ok:
            best_pair = (0, 1)
        for l in range(n):
            p = d[l]
            if p < 0:
                p = 0
            cap_p = u - p
            if cap_p < 0:
                cap_p = 0
            mn = _BIG
            for r in range(l + 2, n + 2):
                v = a[r - 2]
                if v < mn:
                    if v < u:
                        break
                    mn = v
                q = d[r - 1]
                q = -q if q < 0 else 0
                cap_q = u - q
                if cap_q < 0:
                    cap_q = 0
                if cap_p + cap_q <= slack:
                    best_pair = (l, r)
        return best_pair

    if rule == _MIN:
        pl, pr = prev_pair  # type: ignore[misc]
        best_score = _BIG
        if empty_ok:
            dl = pl if pl > 0 else -pl
            dr = pr - 1 if pr > 1 else 1 - pr
            best_score = dl if dl > dr else dr
            best_pair = (0, 1)
        for l in range(n):
            p = d[l]
            if p < 0:
                p = 0
            cap_p = u - p
            if cap_p < 0:
                cap_p = 0
            mn = _BIG
            for r in range(l + 2, n + 2):
                v = a[r - 2]
                if v < mn:
                    if v < u:
                        break
                    mn = v
                q = d[r - 1]
                q = -q if q < 0 else 0
                cap_q = u - q
                if cap_q < 0:
                    cap_q = 0
                if cap_p + cap_q <= slack:
                    dl = l - pl if l > pl else pl - l
                    dr = r - pr if r > pr else pr - r
                    score = dl if dl > dr else dr
                    if score < best_score:
                        best_score = score
                        best_pair = (l, r)
        return best_pair

    # Kali: fewest nonzero differences after the subtraction, ties to the
    # latest interval in canonical order (matches published mean dc; the
    # earliest-position tie-break lands measurably higher).  Only positions
    # 0..n-1 of the difference row count; the trailing column is ignored.
    base = 0
    for j in range(n):
        if d[j] != 0:
            base += 1
    best_score = _BIG
    if empty_ok:
        best_score = base
        best_pair = (0, 1)
    for l in range(n):
        p = d[l]
        pp = p if p > 0 else 0
        cap_p = u - pp
        if cap_p < 0:
            cap_p = 0
        delta_l = (1 if p - u != 0 else 0) - (1 if p != 0 else 0)
        mn = _BIG
        for r in range(l + 2, n + 2):
            v = a[r - 2]
            if v < mn:
                if v < u:
                    break
                mn = v
            q = d[r - 1]
            qq = -q if q < 0 else 0
            cap_q = u - qq
            if cap_q < 0:
                cap_q = 0
            if cap_p + cap_q <= slack:
                score = base + delta_l
                if r <= n:
                    score += (1 if q + u != 0 else 0) - (1 if q != 0 else 0)
                if score <= best_score:
                    best_score = score
                    best_pair = (l, r)
    return best_pair


def _step(rows: list[list[int]], n: int, cx: int, rule: int,
          prev: list[tuple[int, int]] | None,
          strict: bool = True) -> tuple[int, list[tuple[int, int]]]:
    """One extraction: find the step coefficient, pick intervals, subtract."""
    m = len(rows)
    infos: list[tuple[list[int], int] | None] = [None] * m
    u = _BIG
    for i in range(m):
        a = rows[i]
        ci = _row_cx(a)
        if ci == 0:
            continue
        d = _row_diffs(a, n)
        infos[i] = (d, cx - ci)
        if u > 1:
            got = _row_max_u(a, n, d, cx - ci, u)
            if got < u:
                u = got
    if u == _BIG:
        raise RuntimeError("step on an all-zero matrix")
    pairs: list[tuple[int, int]] = []
    for i in range(m):
        info = infos[i]
        if info is None:
            pairs.append((0, 1))
            continue
        a = rows[i]
        d, slack = info
        if not strict:
            slack = _BIG >> 1
        pick = _row_pick(a, n, d, slack, u, rule, prev[i] if prev else None)
        if pick is None:
            raise RuntimeError(f"no feasible interval for row {i + 1} at u={u}")
        l, r = pick
        for j in range(l, r - 1):
            a[j] -= u
        pairs.append(pick)
    return u, pairs


def decompose_rows(rows: list[list[int]], n: int, rule: int,
                   strict: bool = True) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    """Run the full greedy on mutable rows.  Rows end up all zero."""
    out: list[tuple[int, tuple[tuple[int, int], ...]]] = []
    cx = _rows_cx(rows)
    prev: list[tuple[int, int]] | None = None
    while cx > 0:
        u, pairs = _step(rows, n, cx, rule, prev, strict)
        out.append((u, tuple(pairs)))
        prev = pairs
        if strict:
            cx -= u
        else:
            cx = _rows_cx(rows)
    return out


# ---------------------------------------------------------------------------
# Public wrappers.


def max_coefficient(matrix: IntensityMatrix) -> int:
    """Largest u >= 1 every row can support in the next extraction step."""
    if matrix.is_zero():
        raise ValueError("zero matrix has no extraction step")
    n = matrix.col_count
    cx = complexity(matrix)
    u = _BIG
    for row in matrix.entries:
        a = list(row)
        ci = _row_cx(a)
        if ci == 0:
            continue
        got = _row_max_u(a, n, _row_diffs(a, n), cx - ci, u)
        if got < u:
            u = got
    return u


def select_segment(matrix: IntensityMatrix, u: int, rule: Rule,
                   prev: Segment | None = None) -> Segment:
    """Pick one segment at coefficient u under the rule.

    ``u`` must not exceed max_coefficient(matrix); a row without a feasible
    interval indicates a caller bug and raises RuntimeError.
    """
    if u < 1:
        raise ValueError(f"coefficient {u} is not positive")
    n = matrix.col_count
    cx = complexity(matrix)
    code = _RULE_CODE[rule]
    prev_pairs = list(prev.pairs) if prev is not None else None
    pairs = []
    for i, row in enumerate(matrix.entries):
        a = list(row)
        ci = _row_cx(a)
        if ci == 0:
            pairs.append((0, 1))
            continue
        pick = _row_pick(a, n, _row_diffs(a, n), cx - ci, u, code,
                         prev_pairs[i] if prev_pairs else None)
        if pick is None:
            raise RuntimeError(f"no feasible interval for row {i + 1} at u={u}")
        pairs.append(pick)
    return Segment.from_pairs(pairs)


def decompose(matrix: IntensityMatrix, rule: Rule = Rule.KALI, *,
              strict_complexity: bool = True) -> Decomposition:
    """Greedy decomposition of a nonnegative integer matrix.

    With ``strict_complexity`` (the default) every step honours condition
    (b) above and the result satisfies dt = complexity(matrix).  Turning it
    off drops condition (b) from the row selection, which is only useful
    for experiments; the dt guarantee is void then.

    An all-zero matrix yields the empty decomposition.
    """
    rows = [list(row) for row in matrix.entries]
    raw = decompose_rows(rows, matrix.col_count, _RULE_CODE[rule], strict_complexity)
    return Decomposition(tuple((u, Segment.from_pairs(pairs)) for u, pairs in raw))
