"""Integer recurrences (Fibonacci, Lucas, and seeded variants) behind every map family.

All sequences are 1-indexed and satisfy term(n) = term(n-1) + term(n-2) for
n >= 3. Exact terms are computed with checked 64-bit arithmetic so that
downstream determinant identities stay exact; use :func:`term_mod` for
arbitrarily large indices.
"""

import enum
import functools

from .errors import SequenceOverflowError

INT64_MAX = 2**63 - 1


class SequenceFamily(enum.Enum):
    """The five named seed pairs. Arbitrary seeds are out of scope; use raw maps."""

    FIB01 = (0, 1)
    FIB11 = (1, 1)
    FIB32 = (3, 2)
    FIB31 = (3, 1)
    LUCAS = (2, 1)

    @property
    def seeds(self) -> tuple[int, int]:
        return self.value


#: Seeded-Fibonacci families usable on the numerator row of a Fibonacci-Lucas map.
FLT_SERIES = (SequenceFamily.FIB11, SequenceFamily.FIB32, SequenceFamily.FIB31)


@functools.lru_cache(maxsize=None)
def max_index(family: SequenceFamily) -> int:
    """Largest n whose exact term still fits in a signed 64-bit integer."""
    a, b = family.seeds
    n = 2
    while b <= INT64_MAX:
        a, b = b, a + b
        n += 1
    return n - 1


def term(family: SequenceFamily, n: int) -> int:
    """Exact n-th term (1-indexed); raises SequenceOverflowError past 64 bits."""
    if n < 1:
        raise ValueError(f"sequence index must be >= 1, got {n}")
    if n > max_index(family):
        raise SequenceOverflowError(family.name, n, max_index(family))
    a, b = family.seeds
    if n == 1:
        return a
    for _ in range(n - 2):
        a, b = b, a + b
    return b


def term_mod(family: SequenceFamily, n: int, modulus: int) -> int:
    """term(family, n) mod modulus, computed in modular arithmetic (never overflows)."""
    if n < 1:
        raise ValueError(f"sequence index must be >= 1, got {n}")
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    a, b = (s % modulus for s in family.seeds)
    if n == 1:
        return a
    for _ in range(n - 2):
        a, b = b, (a + b) % modulus
    return b
