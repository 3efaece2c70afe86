import random
from itertools import combinations

import pytest

from zsinv.abelian import AbelianGroup, Sequence


@pytest.fixture
def rng():
    return random.Random(20241016)


def brute_partial_sums(S: Sequence) -> set:
    """Sums of all non-empty sub-multisets, by index subsets."""
    A = S.group
    elems = [e.code for e in S]
    out = set()
    for r in range(1, len(elems) + 1):
        for idx in combinations(range(len(elems)), r):
            c = 0
            for i in idx:
                c = A.add_codes(c, elems[i])
            out.add(c)
    return out


def c(*orders):
    return AbelianGroup(orders)
