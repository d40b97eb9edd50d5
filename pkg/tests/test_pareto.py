import random

import pytest

from c1decomp import (Decomposition, IntensityMatrix, ObjectiveVector,
                      ParetoArchive, Rule, RunStats, Segment, SolverConfig,
                      add_solution, decompose, dominates, enumerate_neighbors,
                      evaluate, initial_population, optimize_sequence, pls,
                      two_phase, validate)
from conftest import random_corpus


def vec(dt, dc, su):
    return ObjectiveVector(dt, dc, su)


def dummy(dt):
    return Decomposition(((dt, Segment.from_pairs([(0, 2)])),))


class TestDominates:
    def test_truth_table(self):
        assert dominates(vec(1, 2, 3), vec(2, 2, 3))
        assert dominates(vec(1, 2, 3), vec(1, 2, 4))
        assert not dominates(vec(1, 2, 3), vec(1, 2, 3))
        assert not dominates(vec(2, 1, 3), vec(1, 2, 3))
        assert not dominates(vec(2, 2, 4), vec(1, 2, 3))


class TestParetoArchive:
    def test_keeps_non_dominated_only(self):
        archive = ParetoArchive()
        assert add_solution(archive, dummy(1), vec(5, 5, 5))
        assert add_solution(archive, dummy(2), vec(4, 6, 5))
        assert not add_solution(archive, dummy(3), vec(5, 6, 5))
        assert add_solution(archive, dummy(4), vec(4, 5, 5))
        assert archive.vectors == [vec(4, 5, 5)]

    def test_first_solution_wins_ties(self):
        archive = ParetoArchive()
        first = dummy(1)
        add_solution(archive, first, vec(3, 3, 3))
        assert not add_solution(archive, dummy(2), vec(3, 3, 3))
        assert archive.decompositions == [first]

    def test_insertion_order_kept(self):
        archive = ParetoArchive()
        add_solution(archive, dummy(1), vec(1, 9, 9))
        add_solution(archive, dummy(2), vec(9, 1, 9))
        add_solution(archive, dummy(3), vec(9, 9, 1))
        assert archive.vectors == [vec(1, 9, 9), vec(9, 1, 9), vec(9, 9, 1)]

    def test_randomised_mutual_nondominance(self):
        rng = random.Random(3)
        archive = ParetoArchive()
        for _ in range(600):
            y = vec(rng.randint(1, 9), rng.randint(1, 9), rng.randint(1, 9))
            add_solution(archive, dummy(1), y)
        vs = archive.vectors
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                assert not dominates(a, b) and not dominates(b, a)


class TestInitialPopulation:
    def test_seeds_are_optimised_and_filtered(self, a2):
        pop = initial_population(a2)
        assert 1 <= len(pop) <= 2
        for d in pop:
            assert validate(a2, d)
            # seeds come out already resequenced, so a second pass is a no-op
            assert evaluate(optimize_sequence(d)).su == evaluate(d).su

    def test_dominated_seed_dropped(self):
        m = IntensityMatrix.from_rows([[1, 1], [1, 1]])
        pop = initial_population(m)
        assert len(pop) == 1


class TestPls:
    def test_small_known_archive(self, a1):
        archive = pls(a1, initial_population(a1))
        assert sorted(tuple(y) for y in archive.vectors) == \
               [(5, 4, 4), (6, 3, 4)]
        for y, d in archive:
            assert validate(a1, d)
            assert evaluate(d) == y

    def test_raw_and_decomposition_paths_agree(self):
        for matrix in random_corpus(91, 6, 2, 3, 3):
            if matrix.is_zero():
                continue
            seeds = initial_population(matrix)
            fast = pls(matrix, seeds)
            slow = pls(matrix, seeds,
                       neighbor_fn=lambda d, m=matrix: enumerate_neighbors(m, d))
            assert sorted(map(tuple, fast.vectors)) == \
                   sorted(map(tuple, slow.vectors))

    def test_max_phases_caps_work(self, a2):
        stats = RunStats()
        pls(a2, initial_population(a2), max_phases=1, stats=stats)
        assert stats.phases == 1
        assert stats.neighbors > 0

    def test_dominated_parents_still_explored(self, a2):
        # a solution that enters the archive is explored next phase even
        # if a later addition in the same phase dominates it; dropping it
        # early would lose reference point (10, 4, 4)
        archive, _ = two_phase(a2)
        assert (10, 4, 4) in {tuple(y) for y in archive.vectors}


class TestTwoPhase:
    def test_reference_archive(self, a2):
        archive, stats = two_phase(a2)
        assert sorted(tuple(y) for y in archive.vectors) == \
               [(9, 4, 6), (10, 4, 4), (14, 3, 3)]
        assert stats.pe_count == 3
        assert stats.phases >= 1
        assert stats.wall_time > 0
        for y, d in archive:
            assert validate(a2, d)
            assert evaluate(d) == y

    def test_conflicting_objectives_matrix(self, a1):
        archive, _ = two_phase(a1)
        got = sorted(tuple(y) for y in archive.vectors)
        assert got == [(5, 4, 4), (6, 3, 4)]

    def test_deterministic(self, a2):
        first, _ = two_phase(a2)
        second, _ = two_phase(a2)
        assert [tuple(y) for y in first.vectors] == \
               [tuple(y) for y in second.vectors]

    def test_zero_matrix(self):
        archive, stats = two_phase(IntensityMatrix.from_rows([[0]]))
        assert archive.vectors == [vec(0, 0, 0)]
        assert stats.pe_count == 1

    def test_config_caps_coefficients(self, a2):
        capped, _ = two_phase(a2, SolverConfig(max_coefficient=1))
        free, _ = two_phase(a2)
        assert len(capped.vectors) >= 1
        for y, d in capped:
            assert validate(a2, d)


class TestSolverConfig:
    def test_defaults(self):
        cfg = SolverConfig()
        assert cfg.exact_k_bound == 14
        assert cfg.max_phases is None
        assert cfg.second_rule is Rule.LAST
        assert cfg.max_coefficient is None
