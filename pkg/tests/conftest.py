import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import EXAMPLE_8_4_4  # noqa: E402

from socodes.gf2 import BinaryMatrix  # noqa: E402


@pytest.fixture
def example_matrix() -> BinaryMatrix:
    return BinaryMatrix.from_rows(EXAMPLE_8_4_4)


def random_full_rank(rng: random.Random, k: int, n: int) -> BinaryMatrix:
    from socodes.gf2 import rank

    while True:
        m = BinaryMatrix(k, n, tuple(rng.getrandbits(n) for _ in range(k)))
        if rank(m) == k:
            return m


def random_so(rng: random.Random, k: int, n: int) -> BinaryMatrix:
    """Full-rank SO matrix built from doubled columns; needs n >= 2k."""
    from socodes.gf2 import is_self_orthogonal, rank

    while True:
        # doubling every column gives a zero Gram matrix
        half = [rng.randrange(1, 1 << k) for _ in range(n // 2)]
        cols = half + half + [0] * (n % 2)
        rng.shuffle(cols)
        m = BinaryMatrix.from_columns(k, cols)
        if rank(m) == k and is_self_orthogonal(m):
            return m
