"""Non-dominated archive and the two-phase Pareto local search driver.

Solutions are compared on (dt, dc, su).  The archive keeps mutually
non-dominated vectors, one decomposition per vector, first solution wins
on ties.  The search seeds the archive with the two greedy solutions and
explores the rebuild neighborhood until a full phase adds nothing new.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .core import Decomposition, IntensityMatrix, ObjectiveVector, evaluate
from .engel import Rule, decompose
from .neighborhood import _raw_neighbors, _to_decomposition
from .sequencing import DEFAULT_EXACT_BOUND, optimize_sequence


def dominates(y1: ObjectiveVector, y2: ObjectiveVector) -> bool:
    """True when y1 is at least as good everywhere and better somewhere."""
    return (y1 != y2
            and y1[0] <= y2[0] and y1[1] <= y2[1] and y1[2] <= y2[2])


class ParetoArchive:
    """Mutually non-dominated (vector, decomposition) pairs, insertion ordered."""

    __slots__ = ("entries",)

    def __init__(self) -> None:
        self.entries: list[tuple[ObjectiveVector, Decomposition]] = []

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[ObjectiveVector, Decomposition]]:
        return iter(self.entries)

    @property
    def vectors(self) -> list[ObjectiveVector]:
        return [y for y, _ in self.entries]

    @property
    def decompositions(self) -> list[Decomposition]:
        return [d for _, d in self.entries]

    def _add_lazy(self, y: ObjectiveVector,
                  factory: Callable[[], Decomposition]) -> bool:
        """Insert unless some entry is at least as good everywhere; the
        decomposition is only built when the vector survives."""
        dt, dc, su = y
        for yo, _ in self.entries:
            if yo[0] <= dt and yo[1] <= dc and yo[2] <= su:
                return False
        self.entries = [(yo, do) for yo, do in self.entries
                        if not (dt <= yo[0] and dc <= yo[1] and su <= yo[2])]
        self.entries.append((y, factory()))
        return True

    def add(self, d: Decomposition, y: ObjectiveVector | None = None) -> bool:
        if y is None:
            y = evaluate(d)
        return self._add_lazy(y, lambda: d)


def add_solution(archive: ParetoArchive, d: Decomposition,
                 y: ObjectiveVector | None = None) -> bool:
    """Archive update; mutates the archive, True when the solution got in."""
    return archive.add(d, y)


@dataclass
class RunStats:
    """Telemetry from one search run."""

    phases: int = 0
    neighbors: int = 0
    pe_count: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SolverConfig:
    """Knobs for two_phase.

    exact_k_bound: largest term count sequenced exactly; beyond it the
    2-opt descent is used.  max_phases bounds the search (None = run until
    a phase adds nothing).  second_rule picks the greedy variant for the
    second seed.  max_coefficient caps the per-segment coefficient sweep
    in the neighborhood (None = every feasible value).
    """

    exact_k_bound: int = DEFAULT_EXACT_BOUND
    max_phases: int | None = None
    second_rule: Rule = Rule.LAST
    max_coefficient: int | None = None


def pls(matrix: IntensityMatrix, population: Sequence[Decomposition],
        neighbor_fn: Callable[[Decomposition], Iterable[Decomposition]] | None = None,
        *, max_phases: int | None = None, max_coefficient: int | None = None,
        stats: RunStats | None = None) -> ParetoArchive:
    """Pareto local search from the given starting solutions.

    Each phase explores every neighbor of every solution that entered the
    archive during the previous phase, including solutions the phase
    itself later dominates.  A neighbor weakly dominated by its origin is
    dropped without touching the archive.  Runs until a phase adds
    nothing (or max_phases).  With the default neighbor_fn the rebuild
    neighborhood runs on a raw representation and decompositions are only
    materialised for archived vectors; a custom neighbor_fn receives and
    returns Decomposition objects.
    """
    archive = ParetoArchive()
    pop: list = []
    fast = neighbor_fn is None
    for d in population:
        y = evaluate(d)
        if archive.add(d, y):
            pop.append((y, tuple((u, seg.pairs) for u, seg in d) if fast else d))
    base = [list(row) for row in matrix.entries]
    n = matrix.col_count
    mu_cache: dict = {}
    phases = 0
    neighbors = 0
    while pop and (max_phases is None or phases < max_phases):
        phases += 1
        aux: list = []
        for y_p, payload in pop:
            pdt, pdc, psu = y_p
            if fast:
                for dt, dc, su, raw in _raw_neighbors(base, n, payload, mu_cache,
                                                      max_coefficient):
                    neighbors += 1
                    if pdt <= dt and pdc <= dc and psu <= su:
                        continue
                    y2 = ObjectiveVector(dt, dc, su)
                    if archive._add_lazy(y2, lambda raw=raw: _to_decomposition(raw)):
                        aux.append((y2, raw))
            else:
                for d2 in neighbor_fn(payload):
                    neighbors += 1
                    y2 = evaluate(d2)
                    if pdt <= y2[0] and pdc <= y2[1] and psu <= y2[2]:
                        continue
                    if archive.add(d2, y2):
                        aux.append((y2, d2))
        pop = aux
    if stats is not None:
        stats.phases = phases
        stats.neighbors = neighbors
        stats.pe_count = len(archive)
    return archive


def initial_population(matrix: IntensityMatrix, *,
                       second_rule: Rule = Rule.LAST,
                       exact_bound: int = DEFAULT_EXACT_BOUND) -> list[Decomposition]:
    """The two sequence-optimised greedy seeds, dominated one dropped.

    Seed one favours few segments (Kali rule), seed two favours smooth
    sequences (Last rule by default).  At most two solutions come back;
    one if either dominates the other or both are identical.
    """
    seeds = ParetoArchive()
    seeds.add(optimize_sequence(decompose(matrix, Rule.KALI), exact_bound))
    seeds.add(optimize_sequence(decompose(matrix, second_rule), exact_bound))
    return seeds.decompositions


def two_phase(matrix: IntensityMatrix,
              config: SolverConfig | None = None) -> tuple[ParetoArchive, RunStats]:
    """Full solver run: greedy seeds, Pareto local search, final resequencing.

    Every archived decomposition is sequence-optimised at the end and the
    archive re-filtered, since a better ordering can create dominance.
    """
    cfg = config if config is not None else SolverConfig()
    stats = RunStats()
    start = time.perf_counter()
    population = initial_population(matrix, second_rule=cfg.second_rule,
                                    exact_bound=cfg.exact_k_bound)
    rough = pls(matrix, population, max_phases=cfg.max_phases,
                max_coefficient=cfg.max_coefficient, stats=stats)
    archive = ParetoArchive()
    for _, d in rough:
        archive.add(optimize_sequence(d, cfg.exact_k_bound))
    stats.pe_count = len(archive)
    stats.wall_time = time.perf_counter() - start
    return archive, stats
