import pytest

from c1decomp import GeneratorSpec, IntensityMatrix, gen_random


@pytest.fixture
def a1() -> IntensityMatrix:
    # smallest known matrix whose three objectives genuinely conflict
    return IntensityMatrix.from_rows([[3, 2, 3], [2, 5, 1]])


@pytest.fixture
def a2() -> IntensityMatrix:
    return IntensityMatrix.from_rows([[8, 5, 6], [5, 3, 6]])


def random_corpus(seed: int, count: int, rows: int, cols: int,
                  max_value: int) -> list[IntensityMatrix]:
    return gen_random(GeneratorSpec(rows, cols, max_value, seed, count))
