"""Ordering the segments of a decomposition to cut setup effort.

The su objective is the cost of a Hamiltonian path through the segments
under the leaf-shift distance.  A path over K nodes is the same thing as
a tour over K+1 nodes once a dummy node at distance zero from everything
is added; both searches below work on that cycle form, with the dummy
pinned at the front.

Small instances get an exact Held-Karp sweep, larger ones a first
improvement 2-opt descent seeded with the order at hand.  Both are
deterministic.
"""

from __future__ import annotations

from typing import Sequence

from .core import Decomposition, Segment, segment_distance

DEFAULT_EXACT_BOUND = 14


def distance_matrix(segments: Sequence[Segment]) -> list[list[int]]:
    """Pairwise leaf-shift distances, a symmetric K x K table."""
    k = len(segments)
    dist = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            d = segment_distance(segments[i], segments[j])
            dist[i][j] = d
            dist[j][i] = d
    return dist


def _check_order(order: Sequence[int], k: int) -> list[int]:
    order = list(order)
    if sorted(order) != list(range(k)):
        raise ValueError(f"order must be a permutation of 0..{k - 1}")
    return order


def path_cost(order: Sequence[int], dist: Sequence[Sequence[int]]) -> int:
    """Total distance along the path visiting nodes in the given order."""
    order = _check_order(order, len(dist))
    return sum(dist[order[t]][order[t + 1]] for t in range(len(order) - 1))


def two_opt_path(order: Sequence[int], dist: Sequence[Sequence[int]]) -> list[int]:
    """First-improvement 2-opt descent on the dummy-closed tour.

    Moves are scanned lexicographically and the scan restarts after every
    accepted move, so the outcome is deterministic.  The returned path
    never costs more than the seed order.
    """
    k = len(dist)
    tour = [-1] + _check_order(order, k)
    if k <= 2:
        return tour[1:]
    improved = True
    while improved:
        improved = False
        for i in range(1, k):
            a = tour[i - 1]
            b = tour[i]
            row_a = dist[a] if a >= 0 else None
            row_b = dist[b]
            for j in range(i + 1, k + 1):
                c = tour[j]
                e = tour[j + 1] if j < k else -1
                delta = 0 if row_a is None else row_a[c] - row_a[b]
                if e >= 0:
                    delta += row_b[e] - dist[c][e]
                if delta < 0:
                    tour[i:j + 1] = tour[i:j + 1][::-1]
                    improved = True
                    break
            if improved:
                break
    return tour[1:]


def exact_path(dist: Sequence[Sequence[int]], bound: int = DEFAULT_EXACT_BOUND) -> list[int]:
    """Minimum-cost Hamiltonian path by Held-Karp over subsets.

    Refuses instances above ``bound`` nodes; callers fall back to
    two_opt_path there.  Ties resolve toward lower node indices, so equal
    inputs give equal outputs.
    """
    k = len(dist)
    if k == 0:
        raise ValueError("empty distance matrix")
    if k > bound:
        raise ValueError(f"{k} nodes exceed the exact-search bound {bound}")
    if k == 1:
        return [0]
    full = (1 << k) - 1
    big = 1 << 60
    size = 1 << k
    dp = [[big] * k for _ in range(size)]
    parent = [[-1] * k for _ in range(size)]
    for v in range(k):
        dp[1 << v][v] = 0
    for mask in range(1, size):
        row = dp[mask]
        for last in range(k):
            cur = row[last]
            if cur >= big or not (mask >> last) & 1:
                continue
            drow = dist[last]
            for nxt in range(k):
                if (mask >> nxt) & 1:
                    continue
                nm = mask | (1 << nxt)
                cand = cur + drow[nxt]
                if cand < dp[nm][nxt]:
                    dp[nm][nxt] = cand
                    parent[nm][nxt] = last
    row = dp[full]
    best = 0
    for v in range(1, k):
        if row[v] < row[best]:
            best = v
    path = [best]
    mask = full
    while parent[mask][path[-1]] >= 0:
        prev = parent[mask][path[-1]]
        mask ^= 1 << path[-1]
        path.append(prev)
    path.reverse()
    return path


def optimize_sequence(d: Decomposition, exact_bound: int = DEFAULT_EXACT_BOUND) -> Decomposition:
    """Reorder the terms of a decomposition to reduce su.

    Uses the exact search when the term count fits under ``exact_bound``,
    otherwise a 2-opt descent from the current order.  The term multiset
    is unchanged and su never increases.
    """
    k = len(d.terms)
    if k <= 1:
        return d
    dist = distance_matrix([seg for _, seg in d.terms])
    if k <= exact_bound:
        order = exact_path(dist, bound=exact_bound)
    else:
        order = two_opt_path(list(range(k)), dist)
    if order == list(range(k)):
        return d
    return Decomposition(tuple(d.terms[t] for t in order))
