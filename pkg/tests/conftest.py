import pytest

from birough import BinaryRelation, UniversePair

U5 = ("x1", "x2", "x3", "x4", "x5")
V6 = ("y1", "y2", "y3", "y4", "y5", "y6")

SAMPLE_MATRIX = [
    [1, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 1],
    [0, 1, 0, 1, 0, 0],
    [1, 0, 1, 1, 1, 1],
    [1, 1, 0, 0, 1, 0],
]


@pytest.fixture(scope="session")
def universes():
    return UniversePair(U5, V6)


@pytest.fixture(scope="session")
def sample(universes):
    return BinaryRelation.from_rows(universes, SAMPLE_MATRIX)
