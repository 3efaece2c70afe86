"""Davenport-type constants and constructive zero-sum factorizations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime

from .abelian import AbelianGroup, GroupElement, Sequence, partial_sum_codes
from ._search import BudgetExceeded, longest_avoiding

DEFAULT_BUDGET = 64
CLASSIFY_BOUND = 7


class PreconditionError(ValueError):
    """An input violates the hypothesis of the statement being applied."""


class InfeasibleError(RuntimeError):
    """Search proved that the requested factorization does not exist."""


@dataclass(frozen=True)
class Factorization:
    factors: tuple[Sequence, ...]
    remainder: Sequence

    @property
    def length(self) -> int:
        return len(self.factors)

    def product(self) -> Sequence:
        out = self.remainder
        for f in self.factors:
            out = out * f
        return out

    def is_valid_for(self, S: Sequence) -> bool:
        return self.product() == S and all(f and f.is_zero_sum() for f in self.factors)

    def __str__(self) -> str:
        blocks = " | ".join(f"[{f}]" for f in self.factors)
        return f"{blocks} ; R=[{self.remainder}]"


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")


def _seq(group: AbelianGroup, codes) -> Sequence:
    return Sequence.of(group, (group.from_code(c) for c in codes))


# -- constants ---------------------------------------------------------------


def olson_formula(p: int, exponents) -> int:
    """``D(C_{p^n_1} x ... x C_{p^n_r}) = sum(p^n_i - 1) + 1``."""
    _require_prime(p)
    exponents = list(exponents)
    if any(n < 1 for n in exponents):
        raise PreconditionError("exponents must be >= 1")
    return sum(p**n - 1 for n in exponents) + 1


@dataclass(frozen=True)
class DavenportResult:
    group: AbelianGroup
    k: int
    value: int
    witness: Sequence  # zero-sum, length == value, max factorization length <= k
    nodes: int


def _check_budget(A: AbelianGroup, budget: int) -> None:
    if A.order > budget:
        raise BudgetExceeded(f"group of size {A.order} exceeds search budget {budget}")


@lru_cache(maxsize=None)
def _avoiding_table(A: AbelianGroup, blocks: int) -> tuple:
    """Longest zero-free sequences with fewer than j disjoint zero-sum
    subsequences, for j = 1..blocks: tuple of (length, codes, nodes)."""
    out = []
    prev = None
    for j in range(1, blocks + 1):
        r = longest_avoiding(A, j, prev_max=prev)
        out.append((r.length, tuple(r.witness), r.nodes))
        prev = r.length
    return tuple(out)


def davenport_search(A: AbelianGroup, k: int = 1, *, budget: int = DEFAULT_BUDGET) -> DavenportResult:
    """Exact ``D_k(A)`` with a witness.

    A zero-sum ``S`` has no factorization into ``k+1`` non-empty zero-sum parts
    iff removing any one element leaves a sequence without ``k`` disjoint
    non-empty zero-sum subsequences; the search maximizes the latter and
    closes the witness with ``-sigma``.  Zeros each form a block on their own,
    so a sequence with ``t`` zeros may carry ``k - t`` blocks less.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_budget(A, budget)
    table = _avoiding_table(A, k)
    best = None
    for t in range(k):
        length, codes, _ = table[k - 1 - t]
        if best is None or t + length > best[0]:
            best = (t + length, t, codes)
    length, zeros, codes = best
    body = _seq(A, codes) * Sequence.from_counts(A, {0: zeros})
    witness = body * Sequence.of(A, [-body.sigma()])
    return DavenportResult(A, k, length + 1, witness, sum(r[2] for r in table))


def davenport(A: AbelianGroup, *, budget: int = DEFAULT_BUDGET) -> int:
    return davenport_search(A, 1, budget=budget).value


def davenport_k(A: AbelianGroup, k: int, *, budget: int = DEFAULT_BUDGET, method: str = "search") -> int:
    if method == "search":
        return davenport_search(A, k, budget=budget).value
    if method == "exhaustive":
        return _davenport_k_exhaustive(A, k)
    raise ValueError(f"unknown method {method!r}")


def _davenport_k_exhaustive(A: AbelianGroup, k: int) -> int:
    """Enumerate every zero-sum multiset of length <= k*D(A) and take the
    longest one whose maximal factorization has at most k blocks."""
    if A.order > 9:
        raise BudgetExceeded(f"exhaustive D_k limited to |A| <= 9, got {A.order}")
    D = davenport(A)
    best = 0
    for L in range(1, k * D + 1):
        for combo in itertools.combinations_with_replacement(range(A.order), L):
            S = _seq(A, combo)
            if S.is_zero_sum() and L > best and max_factorization(S).length <= k:
                best = L
    return best


# -- factorizations ----------------------------------------------------------


def _atoms_with(A: AbelianGroup, e: int, counts: tuple[int, ...]):
    """Minimal zero-sum sub-multisets containing ``e`` (a nonzero code) of the
    multiset given by ``counts``; yields count tuples in a fixed order."""
    n = A.order
    add = A._add_table
    avail = list(counts)
    avail[e] -= 1
    target = A.neg_code(e)
    chosen = [0] * n

    def rec(start: int, total: int, sums: int):
        if total == target:
            chosen[e] += 1
            yield tuple(chosen)
            chosen[e] -= 1
            return
        for c in range(start, n):
            if avail[c] - chosen[c] <= 0:
                continue
            row = add[c]
            new = sums | (1 << c)
            m = sums
            while m:
                low = m & -m
                new |= 1 << row[low.bit_length() - 1]
                m ^= low
            if new & 1:
                continue
            chosen[c] += 1
            yield from rec(c, row[total], new)
            chosen[c] -= 1

    yield from rec(1, 0, 0)


def max_factorization(S: Sequence) -> Factorization:
    """A factorization ``S = S_1 ... S_l R`` with the maximum number of
    non-empty zero-sum blocks."""
    A = S.group
    n = A.order
    counts = [0] * n
    for c, m in S.items:
        counts[c] = m
    zeros = counts[0]
    counts[0] = 0

    @lru_cache(maxsize=None)
    def best(state: tuple[int, ...]) -> tuple[int, tuple]:
        e = next((i for i, c in enumerate(state) if c), None)
        if e is None:
            return 0, ()
        rest = list(state)
        rest[e] -= 1
        value, plan = best(tuple(rest))
        choice = (value, plan)
        for atom in _atoms_with(A, e, state):
            after = tuple(s - a for s, a in zip(state, atom))
            v, pl = best(after)
            if v + 1 > choice[0]:
                choice = (v + 1, (atom,) + pl)
        return choice

    _, plan = best(tuple(counts))
    factors = [Sequence.from_counts(A, {0: 1}) for _ in range(zeros)]
    for atom in plan:
        factors.append(Sequence.from_counts(A, dict(enumerate(atom))))
    used = Sequence.empty(A)
    for f in factors:
        used = used * f
    return Factorization(tuple(factors), S / used)


def shortest_zero_sum(S: Sequence) -> Sequence | None:
    """A shortest non-empty zero-sum subsequence, or None if ``S`` is
    zero-sum free.  Dynamic programming over prefixes, not subset enumeration."""
    A = S.group
    codes = S.codes()
    n = A.order
    INF = len(codes) + 1
    add = A._add_table
    neg = A._neg_table
    table = [[INF] * n]
    table[0][0] = 0
    best = None
    for i, a in enumerate(codes):
        prev = table[-1]
        cand = prev[neg[a]] + 1
        if cand < INF and (best is None or cand < best[0]):
            best = (cand, i)
        row = list(prev)
        for g in range(n):
            v = prev[g] + 1
            h = add[a][g]
            if v < row[h]:
                row[h] = v
        table.append(row)
    if best is None:
        return None
    length, i = best
    picked = [codes[i]]
    g = neg[codes[i]]
    need = length - 1
    j = i
    while need:
        # table[j] covers codes[:j]
        if table[j - 1][g] == need:
            j -= 1
            continue
        a = codes[j - 1]
        picked.append(a)
        g = add[g][neg[a]]
        need -= 1
        j -= 1
    return _seq(A, picked)


def _greedy_blocks(S: Sequence, k: int | None) -> Factorization:
    A = S.group
    factors = []
    rest = S
    while k is None or len(factors) < k:
        if rest.count(A.zero):
            block = Sequence.from_counts(A, {0: 1})
        else:
            block = shortest_zero_sum(rest)
            if block is None:
                break
        factors.append(block)
        rest = rest / block
    return Factorization(tuple(factors), rest)


def factor_k(S: Sequence, k: int) -> Factorization:
    """Exactly ``k`` non-empty zero-sum blocks plus a remainder."""
    if k < 1:
        raise ValueError("k must be >= 1")
    result = _greedy_blocks(S, k)
    if result.length < k:
        full = max_factorization(S)
        if full.length < k:
            raise InfeasibleError(f"{S} has at most {full.length} disjoint zero-sum blocks, need {k}")
        leftover = full.remainder
        for f in full.factors[k:]:
            leftover = leftover * f
        result = Factorization(full.factors[:k], leftover)
    assert result.is_valid_for(S) and result.length == k
    return result


# -- lemma checks --------------------------------------------------------------


def _cyclic_prime(S: Sequence) -> int:
    A = S.group
    if A.rank != 1 or not isprime(A.orders[0]):
        raise PreconditionError(f"{A} is not cyclic of prime order")
    return A.orders[0]


def cd_check(S: Sequence) -> tuple[int, int, bool]:
    """``(|Sigma(S)|, min(p, |S|), |Sigma(S)| >= min(p, |S|))`` for ``S`` over
    ``C_p`` without zeros."""
    p = _cyclic_prime(S)
    if S.count(0):
        raise PreconditionError("sequence contains 0")
    size = len(partial_sum_codes(S.group, S.codes()))
    bound = min(p, len(S))
    return size, bound, size >= bound


def classify_maximal_zsf(p: int, *, bound: int = CLASSIFY_BOUND) -> list[Sequence]:
    """All zero-sum free sequences of length ``p - 1`` over ``C_p``."""
    _require_prime(p)
    if p > bound:
        raise BudgetExceeded(f"p={p} exceeds classification bound {bound}")
    A = AbelianGroup.cyclic(p)
    found = []

    def rec(start: int, path: list[int], sums: int):
        if len(path) == p - 1:
            found.append(_seq(A, path))
            return
        for c in range(max(start, 1), p):
            new = sums | (1 << c)
            m = sums
            while m:
                low = m & -m
                new |= 1 << ((low.bit_length() - 1 + c) % p)
                m ^= low
            if not new & 1:
                path.append(c)
                rec(c, path, new)
                path.pop()

    rec(1, [], 0)
    return found


def _check_cpcp(S: Sequence) -> int:
    A = S.group
    if A.rank != 2 or A.orders[0] != A.orders[1] or not isprime(A.orders[0]):
        raise PreconditionError(f"{A} is not C_p x C_p")
    return A.orders[0]


def find_short_zero_sum(S: Sequence) -> Sequence:
    """A zero-sum ``X | S`` with ``|X|`` in ``{p, 2p}`` for ``S`` over
    ``C_p x C_p`` with ``|S| >= 3p - 2``; length ``p`` preferred."""
    p = _check_cpcp(S)
    if len(S) < 3 * p - 2:
        raise PreconditionError(f"need |S| >= {3 * p - 2}, got {len(S)}")
    A = S.group
    codes = S.codes()
    add = A._add_table
    neg = A._neg_table
    top = 2 * p
    # reach[i][L]: bitset of sums of length-L subsequences of codes[:i]
    reach = [[1] + [0] * top]
    for a in codes:
        prev = reach[-1]
        row = list(prev)
        for L in range(1, top + 1):
            m = prev[L - 1]
            shifted = 0
            while m:
                low = m & -m
                shifted |= 1 << add[a][low.bit_length() - 1]
                m ^= low
            row[L] |= shifted
        reach.append(row)
    for L in (p, top):
        if reach[-1][L] & 1:
            picked = []
            g, need = 0, L
            for i in range(len(codes), 0, -1):
                if need == 0:
                    break
                if reach[i - 1][need] >> g & 1:
                    continue
                a = codes[i - 1]
                picked.append(a)
                g = add[g][neg[a]]
                need -= 1
            X = _seq(A, picked)
            assert X.is_zero_sum() and len(X) == L and X.divides(S)
            return X
    raise RuntimeError(f"no zero-sum subsequence of length {p} or {2 * p} in {S}")


def nullak_factor(S: Sequence) -> Factorization:
    """At least ``2p - 1`` zero-sum blocks for ``S`` over ``C_p`` with
    ``|S| >= p^2 - 1`` and ``v_0(S) >= p + 1``."""
    p = _cyclic_prime(S)
    if len(S) < p * p - 1:
        raise PreconditionError(f"need |S| >= {p * p - 1}, got {len(S)}")
    if S.count(0) < p + 1:
        raise PreconditionError(f"need v_0(S) >= {p + 1}, got {S.count(0)}")
    result = _greedy_blocks(S, None)
    if result.length < 2 * p - 1:
        result = max_factorization(S)
    if result.length < 2 * p - 1:
        raise RuntimeError(f"only {result.length} zero-sum blocks found in {S}")
    assert result.is_valid_for(S)
    return result


@dataclass(frozen=True)
class SeparFactorization(Factorization):
    """``S = S_1 ... S_{p-1} R``; ``factors[0]`` and ``factors[1]`` are the two
    distinguished blocks, ``case`` records which extraction produced them."""

    case: str = ""


def separ_factor(S: Sequence, T: Sequence | None = None) -> SeparFactorization:
    """Factor ``S`` over ``C_p x C_p`` (``p >= 5``) into ``p - 1`` zero-sum
    blocks plus remainder so that ``T`` avoids the first two blocks and the
    first coordinates of the first block have every residue as a partial sum.

    Hypotheses: ``|S| >= p^2 - 1``, at most ``p`` elements of ``S`` with first
    coordinate 0, ``T | S`` and ``|T| <= p - 1``.
    """
    p = _check_cpcp(S)
    A = S.group
    if T is None:
        T = Sequence.empty(A)
    if p < 5:
        raise PreconditionError(f"p must be >= 5, got {p}")
    if len(S) < p * p - 1:
        raise PreconditionError(f"|S| must be >= {p * p - 1}, got {len(S)}")
    zero_first = sum(c for code, c in S.items if A.decode(code)[0] == 0)
    if zero_first > p:
        raise PreconditionError(f"{zero_first} elements project to 0, at most {p} allowed")
    if not T.divides(S):
        raise PreconditionError("T does not divide S")
    if len(T) > p - 1:
        raise PreconditionError(f"|T| must be <= {p - 1}, got {len(T)}")

    rest = S / T
    star = Sequence.from_counts(A, {code: c for code, c in rest.items if A.decode(code)[0] != 0})
    X = find_short_zero_sum(star)
    if len(X) == 2 * p:
        Y = shortest_zero_sum(X)
        assert Y is not None and len(Y) < len(X)
        other = X / Y
        S1, S2 = (Y, other) if len(Y) >= len(other) else (other, Y)
        case = "2p"
    else:
        S1 = X
        Y = find_short_zero_sum(S / (S1 * T))
        if len(Y) == 2 * p:
            Z = shortest_zero_sum(Y)
            assert Z is not None
            S2 = Z if len(Z) <= p else Y / Z
        else:
            S2 = Y
        case = "p"
    tail = factor_k(S / (S1 * S2), p - 3) if p > 3 else Factorization((), S / (S1 * S2))
    result = SeparFactorization((S1, S2) + tail.factors, tail.remainder, case)
    _verify_separ(result, S, T, p)
    return result


def projected_sums(S: Sequence) -> set[int]:
    """Partial sums of the first-coordinate projection of ``S``."""
    A = S.group
    C = AbelianGroup.cyclic(A.orders[0])
    return partial_sum_codes(C, [A.decode(c)[0] for c in S.codes()])


def _verify_separ(result: SeparFactorization, S: Sequence, T: Sequence, p: int) -> None:
    if not result.is_valid_for(S) or result.length != p - 1:
        raise AssertionError(f"invalid factorization {result}")
    if not T.divides(S / (result.factors[0] * result.factors[1])):
        raise AssertionError("T meets the first two blocks")
    if len(projected_sums(result.factors[0])) != p:
        raise AssertionError("first block does not cover C_p under projection")
