"""Sparse polynomials over Q(w) in a fixed number of variables.

A monomial is a tuple of exponents indexed by the variable order of the
module it lives on; a polynomial maps monomials to nonzero coefficients.
"""
from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Iterable, Iterator

from .cyclotomic import Cyclotomic

Monomial = tuple[int, ...]


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def mono_divides(v: Monomial, u: Monomial) -> bool:
    return all(a <= b for a, b in zip(v, u))


def mono_div(u: Monomial, v: Monomial) -> Monomial:
    if not mono_divides(v, u):
        raise ValueError(f"{v} does not divide {u}")
    return tuple(a - b for a, b in zip(u, v))


def mono_key(m: Monomial) -> tuple:
    """Graded lexicographic sort key (larger key = larger monomial)."""
    return (sum(m), m)


def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """All degree-``d`` monomials, in increasing lexicographic order of the
    variable multiset."""
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def unit_monomial(nvars: int, i: int, power: int = 1) -> Monomial:
    e = [0] * nvars
    e[i] = power
    return tuple(e)


class Polynomial:
    __slots__ = ("nvars", "p", "terms")

    def __init__(self, nvars: int, p: int, terms: dict[Monomial, Cyclotomic] | None = None):
        self.nvars = nvars
        self.p = p
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _from_clean(cls, nvars: int, p: int, terms: dict) -> Polynomial:
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.p = p
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int, p: int) -> Polynomial:
        return cls._from_clean(nvars, p, {})

    @classmethod
    def constant(cls, nvars: int, p: int, c=1) -> Polynomial:
        return cls(nvars, p, {(0,) * nvars: _scalar(p, c)})

    @classmethod
    def monomial(cls, m: Monomial, p: int, c=1) -> Polynomial:
        return cls(len(m), p, {tuple(m): _scalar(p, c)})

    @classmethod
    def variable(cls, nvars: int, p: int, i: int) -> Polynomial:
        return cls.monomial(unit_monomial(nvars, i), p)

    def _like(self, terms: dict) -> Polynomial:
        return Polynomial._from_clean(self.nvars, self.p, terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def monomials(self) -> list[Monomial]:
        return sorted(self.terms, key=mono_key, reverse=True)

    def coefficient(self, m: Monomial) -> Cyclotomic:
        return self.terms.get(tuple(m), Cyclotomic.zero(self.p))

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=mono_key)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_component(self, d: int) -> Polynomial:
        return self._like({m: c for m, c in self.terms.items() if sum(m) == d})

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        return Polynomial.constant(self.nvars, self.p, other)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def scale(self, c) -> Polynomial:
        c = _scalar(self.p, c)
        if not c:
            return self._like({})
        return self._like({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[Monomial, Cyclotomic] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return self._like({m: c for m, c in out.items() if c})

    def __rmul__(self, other) -> Polynomial:
        return self.scale(other)

    def __truediv__(self, c) -> Polynomial:
        return self.scale(_scalar(self.p, c).inverse())

    def __pow__(self, n: int) -> Polynomial:
        out = Polynomial.constant(self.nvars, self.p, 1)
        for _ in range(n):
            out = out * self
        return out

    def times_monomial(self, u: Monomial, c=None) -> Polynomial:
        if c is None:
            return self._like({tuple(a + b for a, b in zip(m, u)): v for m, v in self.terms.items()})
        c = _scalar(self.p, c)
        return self._like({tuple(a + b for a, b in zip(m, u)): v * c for m, v in self.terms.items()})

    def derivative(self, i: int) -> Polynomial:
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return self._like(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Cyclotomic)):
            return self == Polynomial.constant(self.nvars, self.p, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def format(self, names: Iterable[str] | None = None) -> str:
        names = list(names) if names is not None else [f"v{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                if "+" in cs or " - " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") and not t.startswith("-(") else f" + {t}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _scalar(p: int, c) -> Cyclotomic:
    if isinstance(c, Cyclotomic):
        return c if c.p == p else Cyclotomic.rational(p, c.to_fraction())
    return Cyclotomic.rational(p, c)
