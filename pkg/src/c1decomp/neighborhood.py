"""Neighbor generation for the Pareto local search.

A neighbor keeps most of the current decomposition but forces one
segment, possibly re-shaped, to the front:

  1. pick a term (u, S) of the current decomposition;
  2. optionally shift one row interval of S by one step on either end;
  3. restart from the full matrix with the shifted segment first, trying
     every coefficient it supports;
  4. re-add the remaining terms in their old order, clipping each
     coefficient to what the residual allows and skipping terms that no
     longer fit;
  5. clear the remaining intensity with the greedy sweep (Last rule);
  6. fold equal or mergeable terms together as each one lands;
  7. re-order the finished term list with the 2-opt pass.

Neighbors may spend more total coefficient than the matrix complexity;
the archive keeps whichever survive dominance filtering.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .core import Decomposition, IntensityMatrix, Segment
from .engel import _LAST, decompose_rows
from .sequencing import two_opt_path

_BIG = 1 << 60

Pairs = tuple[tuple[int, int], ...]
RawTerm = tuple[int, Pairs]

# single-line shifts, each end moved by at most one step
_SHIFTS = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


def _pairs_mu(pa: Pairs, pb: Pairs) -> int:
    best = 0
    for (la, ra), (lb, rb) in zip(pa, pb):
        d = la - lb if la > lb else lb - la
        e = ra - rb if ra > rb else rb - ra
        if e > d:
            d = e
        if d > best:
            best = d
    return best


def _union_pairs(pa: Pairs, pb: Pairs) -> Pairs | None:
    """Row-wise union of two segments, or None when any row's blocks are
    neither disjoint-and-adjacent nor trivially absorbable."""
    out = []
    for (la, ra), (lb, rb) in zip(pa, pb):
        if ra == la + 1:
            out.append((lb, rb))
        elif rb == lb + 1:
            out.append((la, ra))
        elif ra == lb + 1:
            out.append((la, rb))
        elif rb == la + 1:
            out.append((lb, ra))
        else:
            return None
    return tuple(out)


def _merge_add(terms: list[list], u: int, pairs: Pairs) -> None:
    """Append a term, folding it into existing terms while possible.

    Two terms fold when their segments are identical (coefficients add) or
    when their coefficients are equal and the row-wise union is again a
    valid segment.  The combined term lands at the earliest slot any of
    its ingredients held; scanning restarts until nothing folds.
    """
    pos = len(terms)
    i = len(terms) - 1
    while i >= 0:
        ui, pi = terms[i]
        if pi == pairs:
            u += ui
        elif ui == u:
            joined = _union_pairs(pi, pairs)
            if joined is None:
                i -= 1
                continue
            pairs = joined
        else:
            i -= 1
            continue
        del terms[i]
        if i < pos:
            pos = i
        i = len(terms) - 1
    terms.insert(pos, [u, pairs])


def _support_min(rows: list[list[int]], pairs: Pairs) -> int:
    mn = _BIG
    for a, (l, r) in zip(rows, pairs):
        for j in range(l, r - 1):
            v = a[j]
            if v < mn:
                if v == 0:
                    return 0
                mn = v
    return mn


def _rebuild_raw(base: list[list[int]], n: int, lead_u: int, lead_pairs: Pairs,
                 rest: Sequence[RawTerm],
                 mu_cache: dict | None = None) -> tuple[int, int, int, tuple[RawTerm, ...]]:
    """Core of the neighbor move; returns (dt, dc, su, ordered terms)."""
    rows = [a[:] for a in base]
    for a, (l, r) in zip(rows, lead_pairs):
        for j in range(l, r - 1):
            a[j] -= lead_u
    terms: list[list] = [[lead_u, lead_pairs]]
    for u_r, pairs_r in rest:
        cap = _support_min(rows, pairs_r)
        if cap < 1 or cap == _BIG:
            continue
        c = u_r if u_r < cap else cap
        for a, (l, r) in zip(rows, pairs_r):
            for j in range(l, r - 1):
                a[j] -= c
        _merge_add(terms, c, pairs_r)
    for u_e, pairs_e in decompose_rows(rows, n, _LAST):
        _merge_add(terms, u_e, pairs_e)

    k = len(terms)
    dt = sum(t[0] for t in terms)
    if k <= 1:
        return dt, k, 0, tuple((u, p) for u, p in terms)
    dist = [[0] * k for _ in range(k)]
    if mu_cache is None:
        for i in range(k):
            pi = terms[i][1]
            row = dist[i]
            for j in range(i + 1, k):
                row[j] = dist[j][i] = _pairs_mu(pi, terms[j][1])
    else:
        for i in range(k):
            pi = terms[i][1]
            row = dist[i]
            for j in range(i + 1, k):
                pj = terms[j][1]
                key = (pi, pj) if pi <= pj else (pj, pi)
                d = mu_cache.get(key)
                if d is None:
                    d = _pairs_mu(pi, pj)
                    mu_cache[key] = d
                row[j] = dist[j][i] = d
    order = two_opt_path(range(k), dist)
    su = 0
    for t in range(k - 1):
        su += dist[order[t]][order[t + 1]]
    return dt, k, su, tuple((terms[i][0], terms[i][1]) for i in order)


def _shifted_segments(pairs: Pairs, n: int) -> list[Pairs]:
    """The segment itself plus every valid single-line one-step variant,
    deduplicated, all-empty results dropped."""
    seen = {pairs}
    out = [pairs]
    for i, (l, r) in enumerate(pairs):
        for dl, dr in _SHIFTS:
            nl = l + dl
            nr = r + dr
            if nl < 0 or nr > n + 1 or nl >= nr:
                continue
            if nr == nl + 1:
                nl, nr = 0, 1
                empty = True
            else:
                empty = False
            cand = pairs[:i] + ((nl, nr),) + pairs[i + 1:]
            if cand in seen:
                continue
            seen.add(cand)
            if empty and all(rr == ll + 1 for ll, rr in cand):
                continue
            out.append(cand)
    return out


def _raw_neighbors(base: list[list[int]], n: int, terms: Sequence[RawTerm],
                   mu_cache: dict | None = None,
                   max_coefficient: int | None = None,
                   ) -> Iterator[tuple[int, int, int, tuple[RawTerm, ...]]]:
    for k in range(len(terms)):
        rest = tuple(terms[:k]) + tuple(terms[k + 1:])
        for cand in _shifted_segments(terms[k][1], n):
            cap = _support_min(base, cand)
            if cap < 1 or cap == _BIG:
                continue
            if max_coefficient is not None and cap > max_coefficient:
                cap = max_coefficient
            for u in range(1, cap + 1):
                yield _rebuild_raw(base, n, u, cand, rest, mu_cache)


def _to_decomposition(raw: Sequence[RawTerm]) -> Decomposition:
    return Decomposition(tuple((u, Segment.from_pairs(p)) for u, p in raw))


def rebuild(matrix: IntensityMatrix, lead: tuple[int, Segment],
            rest: Sequence[tuple[int, Segment]]) -> Decomposition:
    """Build a full decomposition around a chosen first term.

    The lead is subtracted as given, the rest terms are re-added in order
    with clipped coefficients, the residual is cleared greedily, and the
    final term list is 2-opt ordered.  Raises ValueError when the lead
    does not fit the matrix.
    """
    lead_u, lead_seg = lead
    if lead_u < 1:
        raise ValueError(f"coefficient {lead_u} is not positive")
    base = [list(row) for row in matrix.entries]
    if _support_min(base, lead_seg.pairs) < lead_u:
        raise ValueError("lead segment does not fit the matrix at that coefficient")
    raw_rest = tuple((u, seg.pairs) for u, seg in rest)
    _, _, _, ordered = _rebuild_raw(base, matrix.col_count, lead_u,
                                    lead_seg.pairs, raw_rest)
    return _to_decomposition(ordered)


def merge_terms(d: Decomposition) -> Decomposition:
    """Replay the decomposition through the folding step.

    Identical segments collapse with coefficients summed; equal-coefficient
    terms whose union is a valid segment collapse into the union.  The
    weighted segment sum is preserved exactly; the total coefficient never
    grows and drops whenever a union fires.
    """
    terms: list[list] = []
    for u, seg in d:
        _merge_add(terms, u, seg.pairs)
    return _to_decomposition([(u, p) for u, p in terms])


def enumerate_neighbors(matrix: IntensityMatrix, d: Decomposition, *,
                        max_coefficient: int | None = None) -> list[Decomposition]:
    """Every neighbor of a decomposition, in deterministic order.

    For each term, each single-line shift of its segment (plus the
    unshifted segment) and each coefficient the matrix supports yields one
    rebuilt decomposition.  max_coefficient caps the per-segment
    coefficient sweep; by default the full range is tried, which is what
    the crude K*L*(8m+1) neighbor bound assumes.
    """
    base = [list(row) for row in matrix.entries]
    terms = tuple((u, seg.pairs) for u, seg in d)
    out = []
    for _, _, _, raw in _raw_neighbors(base, matrix.col_count, terms,
                                       max_coefficient=max_coefficient):
        out.append(_to_decomposition(raw))
    return out
