"""Exhaustive search for long sequences avoiding disjoint zero-sum subsequences.

For a sequence ``S`` over ``A \\ {0}`` the search tracks, for every
``j <= blocks``, the set of ``j``-tuples ``(sigma(X_1), ..., sigma(X_j))`` over
disjoint non-empty subsequences ``X_i | S``, tuples ordered by the position
where each part was opened.  Each set is a Python int used as a bitset whose
bit index is the mixed-radix encoding of the tuple, so translating one
coordinate by a group element is a handful of shifts and masks.  ``S`` has
``blocks`` disjoint zero-sum subsequences iff bit 0 of the ``blocks``-set is on.

Multisets are generated in non-decreasing code order.  A node is kept only if
its count vector is lexicographically maximal among its images under a set of
automorphisms (checked up to ``canon_depth``); removing the largest element of
such a multiset keeps it maximal, so every orbit is still reached.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from math import gcd

import numpy as np

from .abelian import AbelianGroup


class BudgetExceeded(RuntimeError):
    pass


class _Translator:
    """Coordinate translations on bitsets indexed by tuples of group elements."""

    def __init__(self, group: AbelianGroup, width: int):
        self.group = group
        self.width = width
        n = group.order
        self.n = n
        nbits = n**width
        full = (1 << nbits) - 1
        r = group.rank
        # digit positions: tuple coordinate q (0 = most significant) and factor t
        self.masks: dict[tuple[int, int], tuple[int, int, int, int]] = {}
        for q in range(width):
            for t, d in enumerate(group.orders):
                stride = group.strides[t] * n ** (width - 1 - q)
                for sh in range(1, d):
                    hi = 0
                    for idx in range(nbits):
                        if (idx // stride) % d >= sh:
                            hi |= 1 << idx
                    self.masks[(q * r + t, sh)] = (sh * stride, (d - sh) * stride, hi, full ^ hi)
        self._decoded = [group.decode(c) for c in range(n)]

    def translate(self, m: int, q: int, code: int) -> int:
        r = self.group.rank
        for t, sh in enumerate(self._decoded[code]):
            if sh:
                up, down, hi, lo = self.masks[(q * r + t, sh)]
                m = ((m << up) & hi) | ((m >> down) & lo)
        return m


def automorphism_perms(group: AbelianGroup, limit: int = 20000) -> np.ndarray:
    """Permutations of element codes induced by automorphisms of ``group``.

    Enumerates images of the standard generators while it stays under
    ``limit`` maps; otherwise falls back to multiplication by units, which
    generate a subgroup of ``Aut(A)``.  Any subset of ``Aut(A)`` is valid for
    the orderly search.
    """
    n = group.order
    candidates = [
        [h for h in range(n) if group.element_order(h) == ni] for ni in group.orders
    ]
    total = 1
    for c in candidates:
        total *= max(len(c), 1)
    perms = []
    if total <= limit:
        decoded = [group.decode(c) for c in range(n)]
        for images in itertools.product(*candidates):
            table = []
            for x in decoded:
                acc = 0
                for xi, h in zip(x, images):
                    for _ in range(xi):
                        acc = group.add_codes(acc, h)
                table.append(acc)
            if len(set(table)) == n:
                perms.append(table)
    else:
        e = group.exponent
        for u in range(1, e):
            if gcd(u, e) == 1:
                perms.append(
                    [group.encode(tuple(u * x for x in group.decode(c))) for c in range(n)]
                )
    if not perms:
        perms = [list(range(n))]
    return np.array(perms, dtype=np.int64)


@dataclass
class SearchResult:
    length: int
    witness: list[int]
    nodes: int
    elapsed: float


def longest_avoiding(
    group: AbelianGroup,
    blocks: int,
    *,
    upper_hint: int | None = None,
    prev_max: int | None = None,
    canon_depth: int = 6,
    node_budget: int | None = None,
    perms: np.ndarray | None = None,
) -> SearchResult:
    """Longest zero-free sequence over ``group`` without ``blocks`` disjoint
    non-empty zero-sum subsequences.

    ``prev_max`` is the answer for ``blocks - 1``; if given it enables the bound
    ``|S R| <= (shortest zero-sum in S) + prev_max`` because removing a zero-sum
    subsequence must leave a sequence with fewer than ``blocks - 1`` disjoint
    zero-sum subsequences.  ``upper_hint`` stops the search once reached.
    """
    if blocks < 1:
        raise ValueError("blocks must be >= 1")
    n = group.order
    start_t = time.perf_counter()
    if n == 1:
        return SearchResult(0, [], 1, 0.0)
    tr = _Translator(group, blocks)
    widths = [n**j for j in range(blocks + 1)]
    if perms is None:
        perms = automorphism_perms(group)
    inv = np.argsort(perms, axis=1)
    add = group._add_table
    INF = 10**9

    best_len = 0
    best_witness: list[int] = []
    nodes = 0
    counts = np.zeros(n, dtype=np.int64)
    path: list[int] = []

    def canonical() -> bool:
        img = counts[inv]
        diff = img - counts
        nz = diff != 0
        rows = nz.any(axis=1)
        if not rows.any():
            return True
        first = nz[rows].argmax(axis=1)
        return not (diff[rows][np.arange(first.size), first] > 0).any()

    class _Stop(Exception):
        pass

    def dfs(start: int, state: list[int], minlen: list[int]) -> None:
        nonlocal best_len, best_witness, nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExceeded(f"search over {group} exceeded {node_budget} nodes")
        depth = len(path)
        if depth > best_len:
            best_len = depth
            best_witness = list(path)
            if upper_hint is not None and best_len >= upper_hint:
                raise _Stop
        for b in range(start, n):
            new = [1]
            for j in range(1, blocks + 1):
                s = state[j]
                m = s | (state[j - 1] << (b * widths[j - 1]))
                if s:
                    for q in range(j):
                        m |= tr.translate(s, q, b)
                new.append(m)
            if new[blocks] & 1:
                continue
            row = add[b]
            nm = list(minlen)
            for g in range(n):
                v = minlen[g] + 1
                if v < nm[row[g]]:
                    nm[row[g]] = v
            if nm[b] > 1:
                nm[b] = 1
            if prev_max is not None and nm[0] < INF and nm[0] + prev_max <= best_len:
                continue
            path.append(b)
            counts[b] += 1
            if depth + 1 > canon_depth or canonical():
                dfs(b, new, nm)
            counts[b] -= 1
            path.pop()

    init_state = [1] + [0] * blocks
    init_min = [INF] * n
    try:
        dfs(1, init_state, init_min)
    except _Stop:
        pass
    return SearchResult(best_len, best_witness, nodes, time.perf_counter() - start_t)
