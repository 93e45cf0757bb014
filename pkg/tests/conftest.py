import numpy as np
import pytest

from iblt_lffz import MappingMatrix

# 5x6 worked example used throughout: rows 1-2 split the universe in halves,
# rows 3-5 pair up elements i and i+3.
EXAMPLE_BITS = [
    [1, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 1, 1],
    [1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 1],
]


@pytest.fixture
def example_matrix():
    return MappingMatrix.from_dense(np.array(EXAMPLE_BITS, dtype=np.uint8))
