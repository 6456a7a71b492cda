import math

import numpy as np
import pytest

from modscramble import ImageGrid, SequenceFamily

# First 18 terms of each named series, 1-indexed (golden reference rows).
SERIES_TERMS = {
    SequenceFamily.FIB11: [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584],
    SequenceFamily.LUCAS: [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199, 322, 521, 843, 1364, 2207, 3571],
    SequenceFamily.FIB32: [3, 2, 5, 7, 12, 19, 31, 50, 81, 131, 212, 343, 555, 898, 1453, 2351, 3804, 6155],
    SequenceFamily.FIB31: [3, 1, 4, 5, 9, 14, 23, 37, 60, 97, 157, 254, 411, 665, 1076, 1741, 2817, 4558],
}


def grid(rows) -> ImageGrid:
    return ImageGrid(np.array(rows, dtype=np.uint8))


def random_gray(n: int, seed: int = 0, lo: int = 0, hi: int = 256) -> ImageGrid:
    rng = np.random.default_rng(seed)
    return ImageGrid(rng.integers(lo, hi, (n, n), dtype=np.uint8))


def random_rgb(n: int, seed: int = 0) -> ImageGrid:
    rng = np.random.default_rng(seed)
    return ImageGrid(rng.integers(0, 256, (n, n, 3), dtype=np.uint8))


def permutation_order(vm) -> int:
    """Independent oracle: order of the induced point permutation, via cycle lengths.

    Uses only the reduced entries; no matrix powers, no period().
    """
    a, b, c, d = vm.reduced
    n = vm.n
    dest = [((a * x + b * y) % n) * n + ((c * x + d * y) % n)
            for x in range(n) for y in range(n)]
    seen = [False] * (n * n)
    order = 1
    for start in range(n * n):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = dest[j]
            length += 1
        order = math.lcm(order, length)
    return order


@pytest.fixture
def reference_a() -> ImageGrid:
    """The 3x3 grid 1..9 used by every golden scrambling table."""
    return grid([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
