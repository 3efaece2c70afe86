from functools import lru_cache
from itertools import combinations_with_replacement

import pytest

from zsinv._search import BudgetExceeded
from zsinv.abelian import AbelianGroup, Sequence, is_zero_sum_free
from zsinv.zerosum import (
    InfeasibleError,
    PreconditionError,
    cd_check,
    classify_maximal_zsf,
    davenport,
    davenport_k,
    davenport_search,
    factor_k,
    find_short_zero_sum,
    max_factorization,
    nullak_factor,
    olson_formula,
    separ_factor,
)
from zsinv.suite import random_nullak_instance, random_separ_instance, separ_ok

from conftest import brute_partial_sums, c


def brute_davenport(A: AbelianGroup) -> int:
    """1 + longest zero-sum free multiset, by plain enumeration."""
    best = 0
    for n in range(1, A.order):
        found = False
        for combo in combinations_with_replacement(range(1, A.order), n):
            if 0 not in brute_partial_sums(Sequence.of(A, [A.from_code(x) for x in combo])):
                found = True
                break
        if not found:
            break
        best = n
    return best + 1


def brute_max_length(S: Sequence) -> int:
    """Maximal number of disjoint non-empty zero-sum blocks, by recursion on counts."""
    A = S.group

    @lru_cache(maxsize=None)
    def rec(counts):
        best = 0
        items = [i for i, k in enumerate(counts) if k]
        # enumerate non-empty zero-sum sub-multisets containing the first item
        if not items:
            return 0
        first = items[0]

        def sub(pos, cur, total):
            nonlocal best
            if pos == len(counts):
                if cur[first] and total == 0:
                    rest = tuple(a - b for a, b in zip(counts, cur))
                    best = max(best, 1 + rec(rest))
                return
            for t in range(counts[pos] + 1):
                cur[pos] = t
                sub(pos + 1, cur, A.add_codes(total, A.encode([t * x for x in A.decode(pos)])))
            cur[pos] = 0

        sub(0, [0] * len(counts), 0)
        # or drop one copy of the first item into the remainder
        dropped = list(counts)
        dropped[first] -= 1
        return max(best, rec(tuple(dropped)))

    counts = [0] * A.order
    for code, k in S.counts().items():
        counts[code] = k
    return rec(tuple(counts))


@pytest.mark.parametrize(
    "orders, expected",
    [((1,), 1), ((3, 3), 5), ((2, 2, 2), 4), ((6,), 6), ((2, 4), 5), ((4,), 4)],
)
def test_davenport_examples(orders, expected):
    assert davenport(AbelianGroup(orders)) == expected


@pytest.mark.parametrize("orders", [(2,), (3,), (4,), (5,), (6,), (2, 2), (2, 4), (3, 3), (7,)])
def test_davenport_matches_brute_force(orders):
    A = AbelianGroup(orders)
    assert davenport(A) == brute_davenport(A)


def test_davenport_witness():
    r = davenport_search(c(3, 3))
    assert r.witness.is_zero_sum() and len(r.witness) == r.value
    assert max_factorization(r.witness).length == 1


def test_davenport_budget():
    with pytest.raises(BudgetExceeded, match="81"):
        davenport(c(3, 3, 3, 3))


def test_olson_formula():
    assert olson_formula(3, (1, 1)) == 5
    assert olson_formula(3, (1, 1, 1)) == 7
    assert olson_formula(2, (1, 1, 1)) == 4
    with pytest.raises(PreconditionError):
        olson_formula(4, (1,))


@pytest.mark.parametrize("k, expected", [(1, 5), (2, 8), (3, 11)])
def test_davenport_k_c3x3(k, expected):
    assert davenport_k(c(3, 3), k) == expected


def test_davenport_k_c5x5():
    assert davenport_k(c(5, 5), 2) == 14


@pytest.mark.parametrize("orders, k", [((3,), 2), ((2, 2), 2), ((4,), 2), ((3,), 3), ((2, 2), 3)])
def test_davenport_k_methods_agree(orders, k):
    A = AbelianGroup(orders)
    assert davenport_k(A, k) == davenport_k(A, k, method="exhaustive")


def test_davenport_k_witness():
    r = davenport_search(c(3, 3), 2)
    assert r.witness.is_zero_sum() and len(r.witness) == 8
    assert max_factorization(r.witness).length <= 2


def test_max_factorization_examples():
    C3 = c(3)
    f = max_factorization(Sequence.repeat(C3(0), 4))
    assert f.length == 4 and all(len(b) == 1 for b in f.factors)
    f = max_factorization(Sequence.repeat(C3(1), 3))
    assert f.length == 1 and not f.remainder
    S = Sequence.from_counts(C3, {1: 5, 2: 2})
    f = max_factorization(S)
    assert f.is_valid_for(S) and f.length == 3 == brute_max_length(S)
    assert max_factorization(Sequence.empty(C3)).length == 0


def test_max_factorization_matches_brute_force(rng):
    for A in (c(3), c(4), c(2, 2), c(3, 3)):
        for _ in range(15):
            S = Sequence.of(A, [A.from_code(rng.randrange(A.order)) for _ in range(rng.randint(0, 8))])
            f = max_factorization(S)
            assert f.is_valid_for(S)
            assert f.length == brute_max_length(S)


def test_factor_k_examples():
    C3 = c(3)
    f = factor_k(Sequence.repeat(C3(0), 3), 3)
    assert f.length == 3 and not f.remainder
    A = c(3, 3)
    S = Sequence.from_counts(A, {A(1, 0).code: 3, A(0, 1).code: 3})
    f = factor_k(S, 1)
    assert f.is_valid_for(S) and f.length == 1


def test_factor_k_any_length_8_over_c3x3(rng):
    A = c(3, 3)
    for _ in range(200):
        S = Sequence.of(A, [A.from_code(rng.randrange(9)) for _ in range(8)])
        f = factor_k(S, 2)
        assert f.is_valid_for(S) and f.length == 2


def test_factor_k_infeasible():
    with pytest.raises(InfeasibleError):
        factor_k(Sequence.repeat(c(3)(1), 4), 2)


def test_cd_examples():
    assert cd_check(Sequence.repeat(c(3)(1), 2)) == (2, 2, True)
    size, bound, ok = cd_check(Sequence.of(c(7), [1, 2, 4]))
    assert size >= 3 and bound == 3 and ok
    assert cd_check(Sequence.repeat(c(7)(3), 10)) == (7, 7, True)
    with pytest.raises(PreconditionError):
        cd_check(Sequence.of(c(7), [0, 1]))
    with pytest.raises(PreconditionError):
        cd_check(Sequence.of(c(9), [1]))


def test_classify_maximal_zsf():
    def as_set(found):
        return {tuple(sorted(S.counts().items())) for S in found}

    assert as_set(classify_maximal_zsf(3)) == {((1, 2),), ((2, 2),)}
    assert as_set(classify_maximal_zsf(5)) == {((a, 4),) for a in range(1, 5)}
    assert as_set(classify_maximal_zsf(2)) == {((1, 1),)}
    with pytest.raises(BudgetExceeded):
        classify_maximal_zsf(11)


def test_classify_against_brute_force():
    for p in (3, 5, 7):
        A = c(p)
        brute = [
            combo
            for combo in combinations_with_replacement(range(1, p), p - 1)
            if is_zero_sum_free(Sequence.of(A, list(combo)))
        ]
        assert len(brute) == len(classify_maximal_zsf(p)) == p - 1


def test_find_short_zero_sum(rng):
    A = c(3, 3)
    X = find_short_zero_sum(Sequence.repeat(A(1, 0), 7))
    assert X == Sequence.repeat(A(1, 0), 3)
    with pytest.raises(PreconditionError):
        find_short_zero_sum(Sequence.repeat(A(1, 0), 6))
    B = c(5, 5)
    for _ in range(50):
        S = Sequence.of(B, [B.from_code(rng.randrange(25)) for _ in range(13)])
        X = find_short_zero_sum(S)
        assert X.divides(S) and X.is_zero_sum() and len(X) in (5, 10)


def test_nullak_examples(rng):
    C3 = c(3)
    S = Sequence.from_counts(C3, {0: 4, 1: 3, 2: 1})
    f = nullak_factor(S)
    assert f.is_valid_for(S) and f.length >= 5
    assert nullak_factor(Sequence.repeat(C3(0), 8)).length == 8
    C5 = c(5)
    for _ in range(20):
        S = Sequence.of(C5, [0] * 6 + [rng.randrange(1, 5) for _ in range(18)])
        f = nullak_factor(S)
        assert f.is_valid_for(S) and f.length >= 9
    for _ in range(50):
        S = random_nullak_instance(rng, 3)
        assert nullak_factor(S).length >= 5
    with pytest.raises(PreconditionError):
        nullak_factor(Sequence.from_counts(C3, {0: 3, 1: 5}))


def test_separ_random(rng):
    for _ in range(30):
        S, T = random_separ_instance(rng)
        r = separ_factor(S, T)
        assert separ_ok(r, S, T, 5)
        assert r.length == 4


def test_separ_preconditions():
    A = c(5, 5)
    S = Sequence.from_counts(A, {A(0, 1).code: 6, A(1, 0).code: 18})
    with pytest.raises(PreconditionError, match="project to 0"):
        separ_factor(S)
    B = c(3, 3)
    with pytest.raises(PreconditionError, match="p must be"):
        separ_factor(Sequence.repeat(B(1, 0), 8))
    short = Sequence.repeat(A(1, 0), 10)
    with pytest.raises(PreconditionError, match="must be >="):
        separ_factor(short)
