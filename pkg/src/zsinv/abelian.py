"""Finite abelian groups, their elements, and sequences (multisets) over them.

Elements are addressed by a mixed-radix integer code with the last
coordinate least significant, so code order is lexicographic order on
coordinate tuples.  Sequences store ``(code, count)`` pairs sorted by code.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product of cyclic groups ``C_{n_1} x ... x C_{n_r}``.

    Factors of order 1 are dropped, so the trivial group has ``orders == ()``.
    """

    orders: tuple[int, ...] = ()

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 1 for n in orders):
            raise ValueError(f"cyclic factor orders must be positive: {orders}")
        object.__setattr__(self, "orders", tuple(n for n in orders if n > 1))

    @classmethod
    def cyclic(cls, n: int) -> AbelianGroup:
        return cls((n,))

    @classmethod
    def elementary(cls, p: int, rank: int) -> AbelianGroup:
        return cls((p,) * rank)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    def __len__(self) -> int:
        return self.order

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.orders) if self.orders else 1

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for n in reversed(self.orders):
            out.append(s)
            s *= n
        return tuple(reversed(out))

    def encode(self, coords: Iterable[int]) -> int:
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {coords}")
        return sum((c % n) * s for c, n, s in zip(coords, self.orders, self.strides))

    def decode(self, code: int) -> tuple[int, ...]:
        return tuple((code // s) % n for n, s in zip(self.orders, self.strides))

    @cached_property
    def _add_table(self) -> tuple[tuple[int, ...], ...]:
        decoded = [self.decode(c) for c in range(self.order)]
        return tuple(
            tuple(self.encode(tuple(x + y for x, y in zip(a, b))) for b in decoded)
            for a in decoded
        )

    @cached_property
    def _neg_table(self) -> tuple[int, ...]:
        return tuple(self.encode(tuple(-x for x in self.decode(c))) for c in range(self.order))

    def add_codes(self, i: int, j: int) -> int:
        return self._add_table[i][j]

    def neg_code(self, i: int) -> int:
        return self._neg_table[i]

    def element_order(self, code: int) -> int:
        from math import gcd, lcm

        return lcm(1, *(n // gcd(n, c) for n, c in zip(self.orders, self.decode(code))))

    @property
    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def __call__(self, *coords) -> GroupElement:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        return GroupElement(self, tuple(int(c) for c in coords))

    def from_code(self, code: int) -> GroupElement:
        return GroupElement(self, self.decode(code))

    def elements(self) -> list[GroupElement]:
        return [GroupElement(self, c) for c in product(*(range(n) for n in self.orders))]

    def __str__(self) -> str:
        if not self.orders:
            return "C_1"
        return " x ".join(f"C_{n}" for n in self.orders)

    def format(self) -> str:
        return ",".join(str(n) for n in self.orders) or "1"


@dataclass(frozen=True, order=False)
class GroupElement:
    group: AbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        g = self.group
        if len(self.coords) != g.rank:
            raise ValueError(f"{self.coords} has wrong length for {g}")
        object.__setattr__(self, "coords", tuple(c % n for c, n in zip(self.coords, g.orders)))

    @property
    def code(self) -> int:
        return self.group.encode(self.coords)

    def _check(self, other: GroupElement) -> None:
        if other.group != self.group:
            raise ValueError("elements belong to different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.group, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElement:
        return GroupElement(self.group, tuple(-x for x in self.coords))

    def __rmul__(self, k: int) -> GroupElement:
        return GroupElement(self.group, tuple(k * x for x in self.coords))

    def __lt__(self, other: GroupElement) -> bool:
        return self.code < other.code

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return self.group.element_order(self.code)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"GroupElement{self}"


ElementLike = Union[GroupElement, int, tuple]


def _to_code(group: AbelianGroup, a: ElementLike) -> int:
    if isinstance(a, GroupElement):
        if a.group != group:
            raise ValueError(f"element {a} is not in {group}")
        return a.code
    if isinstance(a, int):
        # an int is an element code; for cyclic groups this is the residue
        if group.rank == 1:
            return a % group.orders[0]
        if not 0 <= a < group.order:
            raise ValueError(f"code {a} out of range for {group}")
        return a
    return group.encode(a)


@dataclass(frozen=True)
class Sequence:
    """A finite multiset of elements of ``group``.

    Concatenation is ``S * T``; ``S / T`` removes the subsequence ``T``.
    """

    group: AbelianGroup
    items: tuple[tuple[int, int], ...] = ()
    _length: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_length", sum(c for _, c in self.items))

    @classmethod
    def from_counts(cls, group: AbelianGroup, counts) -> Sequence:
        merged: Counter = Counter()
        for a, c in dict(counts).items():
            if c < 0:
                raise ValueError("multiplicities must be non-negative")
            merged[_to_code(group, a)] += c
        return cls(group, tuple(sorted((k, v) for k, v in merged.items() if v)))

    @classmethod
    def of(cls, group: AbelianGroup, elements: Iterable[ElementLike] = ()) -> Sequence:
        return cls.from_counts(group, Counter(_to_code(group, a) for a in elements))

    @classmethod
    def repeat(cls, a: GroupElement, k: int) -> Sequence:
        """``a^[k]``"""
        return cls.from_counts(a.group, {a.code: k})

    @classmethod
    def empty(cls, group: AbelianGroup) -> Sequence:
        return cls(group, ())

    def __len__(self) -> int:
        return self._length

    def __bool__(self) -> bool:
        return self._length > 0

    def counts(self) -> dict[int, int]:
        return dict(self.items)

    def count(self, a: ElementLike) -> int:
        """Multiplicity ``v_a(S)``."""
        return self.counts().get(_to_code(self.group, a), 0)

    def __contains__(self, a: ElementLike) -> bool:
        return self.count(a) > 0

    def codes(self) -> list[int]:
        """Element codes with repetition, ascending."""
        return [k for k, c in self.items for _ in range(c)]

    def __iter__(self) -> Iterator[GroupElement]:
        for k in self.codes():
            yield self.group.from_code(k)

    def support(self) -> list[GroupElement]:
        return [self.group.from_code(k) for k, _ in self.items]

    def _check(self, other: Sequence) -> None:
        if other.group != self.group:
            raise ValueError("sequences over different groups")

    def __mul__(self, other: Sequence) -> Sequence:
        self._check(other)
        merged = Counter(self.counts())
        merged.update(other.counts())
        return Sequence(self.group, tuple(sorted(merged.items())))

    def divides(self, other: Sequence) -> bool:
        """True iff ``self | other``."""
        self._check(other)
        oc = other.counts()
        return all(oc.get(k, 0) >= c for k, c in self.items)

    def __truediv__(self, other: Sequence) -> Sequence:
        """``S * T^[-1]``; requires ``T | S``."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        sc = self.counts()
        for k, c in other.items:
            sc[k] -= c
        return Sequence(self.group, tuple(sorted((k, c) for k, c in sc.items() if c)))

    def map(self, f, target: AbelianGroup) -> Sequence:
        """Apply ``f: GroupElement -> GroupElement`` elementwise."""
        out: Counter = Counter()
        for k, c in self.items:
            out[f(self.group.from_code(k)).code] += c
        return Sequence(target, tuple(sorted(out.items())))

    def sigma(self) -> GroupElement:
        return sigma(self)

    def partial_sums(self) -> frozenset[GroupElement]:
        return partial_sums(self)

    def is_zero_sum(self) -> bool:
        return sigma(self).is_zero()

    def is_zero_sum_free(self) -> bool:
        return is_zero_sum_free(self)

    def __str__(self) -> str:
        if not self.items:
            return "[]"
        parts = []
        for k, c in self.items:
            e = str(self.group.from_code(k))
            parts.append(e if c == 1 else f"{e}^{c}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Sequence[{self.group.format()}]({self})"


def sigma(S: Sequence) -> GroupElement:
    g = S.group
    coords = [0] * g.rank
    for k, c in S.items:
        for i, x in enumerate(g.decode(k)):
            coords[i] += c * x
    return GroupElement(g, tuple(coords))


def partial_sum_codes(group: AbelianGroup, codes: Iterable[int]) -> set[int]:
    """Incremental rule: Sigma(S a) = Sigma(S) | {a} | (a + Sigma(S))."""
    add = group._add_table
    sums: set[int] = set()
    for a in codes:
        row = add[a]
        sums |= {row[s] for s in sums}
        sums.add(a)
        if len(sums) == group.order:
            break
    return sums


def partial_sums(S: Sequence) -> frozenset[GroupElement]:
    return frozenset(S.group.from_code(k) for k in partial_sum_codes(S.group, S.codes()))


def is_zero_sum_free(S: Sequence) -> bool:
    return 0 not in partial_sum_codes(S.group, S.codes())
