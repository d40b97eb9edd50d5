"""Core value types and objective arithmetic.

A nonnegative integer matrix is decomposed into a positively weighted sum
of binary segments whose rows satisfy the consecutive-ones property.  Each
segment row is stored as a half-open position pair (l, r): the row has a 1
in every column j with l < j < r (columns are numbered from 1).  A row with
no ones is always stored canonically as (0, 1).

Three objectives are tracked for a decomposition:

* ``dt``  total beam-on time, the sum of the coefficients
* ``dc``  cardinality, the number of segments
* ``su``  setup effort, the summed leaf-travel distance between
          consecutive segments

All types are immutable; operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple


class ObjectiveVector(NamedTuple):
    """Objective triple (dt, dc, su), comparable lexicographically."""

    dt: int
    dc: int
    su: int


@dataclass(frozen=True)
class IntensityMatrix:
    """Immutable nonnegative integer matrix, at least 1x1."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ValueError(f"ragged matrix: row {i + 1} has {len(row)} entries, expected {width}")
            for j, x in enumerate(row):
                if x < 0:
                    raise ValueError(f"negative entry {x} at row {i + 1}, column {j + 1}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntensityMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def row_count(self) -> int:
        return len(self.entries)

    @property
    def col_count(self) -> int:
        return len(self.entries[0])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def total(self) -> int:
        """Sum of all entries."""
        return sum(sum(row) for row in self.entries)


@dataclass(frozen=True)
class Segment:
    """Binary consecutive-ones segment, one (l, r) position pair per row.

    Row i has ones exactly in columns j with left[i] < j < right[i].
    Empty rows are normalised to (0, 1) so equal segments compare equal.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self) -> None:
        left = tuple(int(x) for x in self.left)
        right = tuple(int(x) for x in self.right)
        if len(left) != len(right) or not left:
            raise ValueError("left and right must be equal-length, non-empty")
        norm_l = []
        norm_r = []
        for l, r in zip(left, right):
            if l < 0 or r <= l:
                raise ValueError(f"invalid row interval ({l}, {r})")
            if r == l + 1:
                l, r = 0, 1
            norm_l.append(l)
            norm_r.append(r)
        object.__setattr__(self, "left", tuple(norm_l))
        object.__setattr__(self, "right", tuple(norm_r))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Segment":
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.left, self.right))

    @property
    def row_count(self) -> int:
        return len(self.left)

    def is_zero(self) -> bool:
        return all(r == l + 1 for l, r in zip(self.left, self.right))

    def as_rows(self, col_count: int) -> list[list[int]]:
        """Expand to 0/1 rows of the given width."""
        out = []
        for l, r in zip(self.left, self.right):
            if r > col_count + 1:
                raise ValueError(f"row interval ({l}, {r}) does not fit {col_count} columns")
            out.append([1 if l < j < r else 0 for j in range(1, col_count + 1)])
        return out


@dataclass(frozen=True)
class Decomposition:
    """Ordered sequence of (coefficient, segment) terms."""

    terms: tuple[tuple[int, Segment], ...] = field(default=())

    def __post_init__(self) -> None:
        terms = tuple((int(u), seg) for u, seg in self.terms)
        rows = None
        for u, seg in terms:
            if u < 1:
                raise ValueError(f"coefficient {u} is not positive")
            if rows is None:
                rows = seg.row_count
            elif seg.row_count != rows:
                raise ValueError("segments disagree on row count")
        object.__setattr__(self, "terms", terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[int, Segment]]:
        return iter(self.terms)

    @property
    def segments(self) -> tuple[Segment, ...]:
        return tuple(seg for _, seg in self.terms)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.terms)


@dataclass(frozen=True)
class DifferenceMatrix:
    """Row-wise forward differences with zero padding, shape m x (n+1)."""

    entries: tuple[tuple[int, ...], ...]


def difference_matrix(matrix: IntensityMatrix) -> DifferenceMatrix:
    """Differences d[i][j] = a[i][j] - a[i][j-1], with a[i][0] = a[i][n+1] = 0.

    The result has one more column than the input; entry j (0-based) of a
    result row is the change when stepping into column j+1 of the matrix.
    """
    out = []
    for row in matrix.entries:
        prev = 0
        diffs = []
        for x in row:
            diffs.append(x - prev)
            prev = x
        diffs.append(-prev)
        out.append(tuple(diffs))
    return DifferenceMatrix(tuple(out))


def row_complexity(matrix: IntensityMatrix, row: int) -> int:
    """Sum of the positive differences of one row.  Rows are numbered from 1."""
    if not 1 <= row <= matrix.row_count:
        raise IndexError(f"row {row} out of range 1..{matrix.row_count}")
    prev = 0
    total = 0
    for x in matrix.entries[row - 1]:
        if x > prev:
            total += x - prev
        prev = x
    return total


def complexity(matrix: IntensityMatrix) -> int:
    """Maximum row complexity.  Equals the least achievable dt."""
    return max(row_complexity(matrix, i) for i in range(1, matrix.row_count + 1))


def nonzero_diff_count(matrix: IntensityMatrix) -> int:
    """Number of nonzero differences, ignoring the trailing padding column."""
    count = 0
    for row in matrix.entries:
        prev = 0
        for x in row:
            if x != prev:
                count += 1
            prev = x
    return count


def segment_distance(a: Segment, b: Segment) -> int:
    """Largest per-row leaf shift between two segments.

    For every row the shift is max(|l_a - l_b|, |r_a - r_b|); the distance
    is the maximum over rows.  This is a metric on segments with a fixed
    row count.
    """
    if a.row_count != b.row_count:
        raise ValueError("segments disagree on row count")
    best = 0
    for la, ra, lb, rb in zip(a.left, a.right, b.left, b.right):
        dl = la - lb
        if dl < 0:
            dl = -dl
        dr = ra - rb
        if dr < 0:
            dr = -dr
        if dl > best:
            best = dl
        if dr > best:
            best = dr
    return best


def evaluate(d: Decomposition) -> ObjectiveVector:
    """Objective triple of a decomposition in its stored sequence order."""
    dt = sum(u for u, _ in d.terms)
    dc = len(d.terms)
    su = 0
    for k in range(dc - 1):
        su += segment_distance(d.terms[k][1], d.terms[k + 1][1])
    return ObjectiveVector(dt, dc, su)


def validate(matrix: IntensityMatrix, d: Decomposition) -> bool:
    """True iff the weighted segments sum exactly to the matrix.

    Raises ValueError when the decomposition's shape cannot match the
    matrix at all (wrong row count, or an interval past the last column).
    """
    m, n = matrix.row_count, matrix.col_count
    acc = [[0] * n for _ in range(m)]
    for u, seg in d.terms:
        if seg.row_count != m:
            raise ValueError("segment row count does not match the matrix")
        if u < 1:
            return False
        for i, (l, r) in enumerate(zip(seg.left, seg.right)):
            if r > n + 1:
                raise ValueError(f"row interval ({l}, {r}) does not fit {n} columns")
            row = acc[i]
            for j in range(l, r - 1):
                row[j] += u
    return all(tuple(acc[i]) == matrix.entries[i] for i in range(m))


def subtract(matrix: IntensityMatrix, u: int, seg: Segment) -> IntensityMatrix:
    """Subtract u copies of a segment.  Any negative result cell is an error."""
    if u < 1:
        raise ValueError(f"coefficient {u} is not positive")
    m, n = matrix.row_count, matrix.col_count
    if seg.row_count != m:
        raise ValueError("segment row count does not match the matrix")
    rows = [list(row) for row in matrix.entries]
    for i, (l, r) in enumerate(zip(seg.left, seg.right)):
        if r > n + 1:
            raise ValueError(f"row interval ({l}, {r}) does not fit {n} columns")
        row = rows[i]
        for j in range(l, r - 1):
            row[j] -= u
            if row[j] < 0:
                raise ValueError(f"subtraction drives row {i + 1}, column {j + 1} below zero")
    return IntensityMatrix.from_rows(rows)
