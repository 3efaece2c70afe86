"""Invariant rings of monomial group actions, computed degree by degree.

Everything is exact linear algebra over Q(w).  The polynomial ring is graded
by the degree in each orbit of variables and by the character through which
the diagonal subgroup ``D`` (elements with trivial permutation part) scales a
monomial.  Invariants, products of invariants and the Hilbert ideal are all
homogeneous for this grading, so each is computed one small piece at a time.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .cyclotomic import Cyclotomic
from .monomial import (
    Character,
    GroupAction,
    HeisenbergModule,
    MonomialMatrix,
    VariableId,
    act,
)
from .polynomial import Monomial, Polynomial, mono_key, unit_monomial
from .zerosum import DEFAULT_BUDGET, davenport

DEFAULT_MONOMIAL_BUDGET = 500_000

__all__ = [
    "BudgetExceeded",
    "Character",
    "GradedSubspace",
    "InvariantEngine",
    "NoetherResult",
    "TopDegreeResult",
    "RewriteResult",
    "engine",
    "reynolds",
    "transfer",
    "orbit_sum",
    "semi_projection",
    "invariant_basis",
    "noether_number",
    "noether_k",
    "hilbert_ideal_slice",
    "in_hilbert_ideal",
    "top_degree_coinvariants",
    "subalgebra_slice",
    "polarize",
    "trukk_difference",
    "homologous_rewrite",
    "transversal",
    "is_invariant",
]


class BudgetExceeded(RuntimeError):
    pass


class GradedSubspace:
    """A subspace of ``F[V]_d`` in reduced row echelon form.

    Each row is keyed by its pivot, its largest monomial in graded lex order,
    with coefficient 1 there; no row contains another row's pivot.
    """

    def __init__(self, nvars: int, p: int, degree: int | None = None):
        self.nvars = nvars
        self.p = p
        self.degree = degree
        self.rows: dict[Monomial, dict[Monomial, Cyclotomic]] = {}
        self._cols: dict[Monomial, set[Monomial]] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce_terms(self, terms: dict[Monomial, Cyclotomic]) -> dict[Monomial, Cyclotomic]:
        out = dict(terms)
        # one pass suffices: subtracting a row never introduces another pivot
        for m in [m for m in terms if m in self.rows]:
            c = out.get(m)
            if not c:
                continue
            for mm, v in self.rows[m].items():
                s = out.get(mm)
                s = -c * v if s is None else s - c * v
                if s:
                    out[mm] = s
                else:
                    out.pop(mm, None)
        return out

    def reduce(self, f: Polynomial) -> Polynomial:
        return Polynomial._from_clean(self.nvars, self.p, self._reduce_terms(f.terms))

    def __contains__(self, f: Polynomial) -> bool:
        return not self._reduce_terms(f.terms)

    def add(self, f: Polynomial | dict) -> bool:
        """Insert ``f``; returns whether the dimension grew."""
        terms = f.terms if isinstance(f, Polynomial) else f
        r = self._reduce_terms(terms)
        if not r:
            return False
        pivot = max(r, key=mono_key)
        inv = r[pivot].inverse()
        if inv != 1:
            r = {m: c * inv for m, c in r.items()}
        for q in list(self._cols.get(pivot, ())):
            row = self.rows[q]
            c = row[pivot]
            for mm, v in r.items():
                s = row.get(mm)
                s = -c * v if s is None else s - c * v
                if s:
                    if mm not in row and mm != q:
                        self._cols.setdefault(mm, set()).add(q)
                    row[mm] = s
                else:
                    row.pop(mm, None)
                    if mm != q:
                        self._cols.get(mm, set()).discard(q)
        self._cols.pop(pivot, None)
        self.rows[pivot] = r
        for mm in r:
            if mm != pivot:
                self._cols.setdefault(mm, set()).add(pivot)
        return True

    def add_unit(self, m: Monomial) -> bool:
        return self.add({m: Cyclotomic.one(self.p)})

    def basis(self) -> list[Polynomial]:
        return [
            Polynomial._from_clean(self.nvars, self.p, dict(self.rows[m]))
            for m in sorted(self.rows, key=mono_key, reverse=True)
        ]

    def pivots(self) -> list[Monomial]:
        return sorted(self.rows, key=mono_key, reverse=True)

    @classmethod
    def merge(cls, parts, nvars: int, p: int, degree: int | None = None) -> GradedSubspace:
        """Union of subspaces with pairwise disjoint monomial supports."""
        out = cls(nvars, p, degree)
        for part in parts:
            for piv, row in part.rows.items():
                out.rows[piv] = row
            for mm, qs in part._cols.items():
                out._cols.setdefault(mm, set()).update(qs)
        return out

    def __repr__(self) -> str:
        return f"GradedSubspace(degree={self.degree}, dim={self.dim})"


def transversal(G: GroupAction, N: GroupAction) -> list[MonomialMatrix]:
    """Right coset representatives ``t`` with ``G = union of N t``."""
    covered: set[MonomialMatrix] = set()
    reps = []
    for g in G.elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(n * g for n in N.elements)
    return reps


def _orbit_accumulate(elements, terms: dict[Monomial, Cyclotomic], p: int, weights=None) -> dict[Monomial, Cyclotomic]:
    """``sum_g weight(g) * f^g`` with ``weights[g]`` a w-exponent."""
    acc: dict[tuple[Monomial, Cyclotomic], list[int]] = {}
    for m, c in terms.items():
        for n, g in enumerate(elements):
            e, m2 = g.act_monomial(m)
            if weights is not None:
                e = (e + weights[n]) % p
            slot = acc.get((m2, c))
            if slot is None:
                slot = acc[(m2, c)] = [0] * p
            slot[e] += 1
    out: dict[Monomial, Cyclotomic] = {}
    for (m2, c), counts in acc.items():
        v = Cyclotomic.from_full(p, counts) * c
        s = out.get(m2)
        out[m2] = v if s is None else s + v
    return {m: c for m, c in out.items() if c}


def is_invariant(f: Polynomial, G: GroupAction) -> bool:
    gens = list(G.generators.values()) or list(G.elements)
    return all(act(g, f) == f for g in gens)


def reynolds(f: Polynomial, G: GroupAction) -> Polynomial:
    """``(1/|G|) sum_g f^g``."""
    terms = _orbit_accumulate(G.elements, f.terms, G.p)
    return Polynomial(f.nvars, f.p, terms) / G.order


def orbit_sum(f: Polynomial, N: GroupAction, G: GroupAction) -> Polynomial:
    """``sum_t f^t`` over a transversal of ``N`` in ``G`` (no normalisation)."""
    reps = transversal(G, N)
    return Polynomial(f.nvars, f.p, _orbit_accumulate(reps, f.terms, G.p))


def _check_relative(f: Polynomial, N: GroupAction, G: GroupAction) -> None:
    if not N.is_subgroup_of(G):
        raise ValueError("N is not a subgroup of G")
    if not all(act(n, f) == f for n in N.elements):
        raise ValueError("polynomial is not invariant under N")


def transfer(f: Polynomial, N: GroupAction, G: GroupAction) -> Polynomial:
    """Relative transfer ``(1/[G:N]) sum_t f^t`` of an ``N``-invariant ``f``."""
    _check_relative(f, N, G)
    reps = transversal(G, N)
    return Polynomial(f.nvars, f.p, _orbit_accumulate(reps, f.terms, G.p)) / len(reps)


def semi_projection(chi: Character, f: Polynomial) -> Polynomial:
    """``(1/[G:N]) sum_t chi(t)^-1 f^t``, the ``chi``-semi-invariant part of
    an ``N``-invariant ``f`` where ``N`` is the kernel of ``chi``."""
    G, N = chi.group, chi.kernel
    if not chi.is_trivial_on(N):
        raise ValueError("character is not trivial on N")
    _check_relative(f, N, G)
    reps = transversal(G, N)
    weights = [-chi.exponent(t) for t in reps]
    return Polynomial(f.nvars, f.p, _orbit_accumulate(reps, f.terms, G.p, weights)) / len(reps)


class InvariantEngine:
    """Memoised graded computations for one group action."""

    def __init__(self, G: GroupAction, budget: int = DEFAULT_MONOMIAL_BUDGET):
        self.G = G
        self.p = G.p
        self.nvars = G.nvars
        self.budget = budget
        self.orbits = G.variable_orbits
        self.orbit_of = G.orbit_of_variable
        self.diagonal = len(self.orbits) == self.nvars
        self._dgens = self._diagonal_generators()
        self._var_weight = tuple(tuple(d.exps[v] for d in self._dgens) for v in range(self.nvars))
        self._zero_w = (0,) * len(self._dgens)
        self._pieces: dict[tuple, dict[tuple, list[Monomial]]] = {}
        self._inv: dict[tuple, GradedSubspace] = {}
        self._prod: dict[tuple, GradedSubspace] = {}
        self._prod_flag: dict[tuple, bool] = {}
        self._sub: dict[tuple, GradedSubspace] = {}
        self._hilb: dict[tuple, GradedSubspace] = {}
        self._saturated: dict[int, bool] = {}

    def _diagonal_generators(self) -> list[MonomialMatrix]:
        D = self.G.diagonal_elements
        gens: list[MonomialMatrix] = []
        span = {self.G.identity}
        for d in D:
            if d in span:
                continue
            gens.append(d)
            frontier = list(span)
            while frontier:
                new = []
                for x in frontier:
                    for g in gens:
                        y = x * g
                        if y not in span:
                            span.add(y)
                            new.append(y)
                frontier = new
        return gens

    # grading

    def weight_of(self, m: Monomial) -> tuple[int, ...]:
        p = self.p
        w = [0] * len(self._dgens)
        for v, e in enumerate(m):
            if e:
                for t, x in enumerate(self._var_weight[v]):
                    w[t] += e * x
        return tuple(x % p for x in w)

    def multidegree_of(self, m: Monomial) -> tuple[int, ...]:
        md = [0] * len(self.orbits)
        for v, e in enumerate(m):
            md[self.orbit_of[v]] += e
        return tuple(md)

    def key_of(self, m: Monomial) -> tuple:
        return (self.multidegree_of(m), self.weight_of(m))

    def multidegrees(self, d: int) -> list[tuple[int, ...]]:
        r = len(self.orbits)
        out = []

        def rec(prefix, left, slots):
            if slots == 1:
                out.append(prefix + (left,))
                return
            for a in range(left, -1, -1):
                rec(prefix + (a,), left - a, slots - 1)

        rec((), d, r)
        if len(out) > self.budget:
            raise BudgetExceeded(f"{len(out)} multidegrees at degree {d}")
        return out

    def pieces(self, md: tuple[int, ...]) -> dict[tuple, list[Monomial]]:
        """Monomials of multidegree ``md`` grouped by diagonal weight."""
        cached = self._pieces.get(md)
        if cached is not None:
            return cached
        per_orbit = []
        total = 1
        for orb, e in zip(self.orbits, md):
            mons = list(_monomials_in(orb, e, self.nvars))
            per_orbit.append(mons)
            total *= len(mons)
        if total > self.budget:
            raise BudgetExceeded(f"{total} monomials in multidegree {md}")
        out: dict[tuple, list[Monomial]] = {}
        for parts in product(*per_orbit):
            m = tuple(map(sum, zip(*parts))) if parts else (0,) * self.nvars
            out.setdefault(self.weight_of(m), []).append(m)
        self._pieces[md] = out
        return out

    def piece_size(self, key) -> int:
        return len(self.pieces(key[0]).get(key[1], ()))

    # invariants

    def invariant_piece(self, md: tuple[int, ...]) -> GradedSubspace:
        sp = self._inv.get(md)
        if sp is not None:
            return sp
        sp = GradedSubspace(self.nvars, self.p, sum(md))
        mons = self.pieces(md).get(self._zero_w, [])
        seen: set[Monomial] = set()
        one = Cyclotomic.one(self.p)
        for m in sorted(mons, key=mono_key, reverse=True):
            if m in seen:
                continue
            seen.update(g.act_monomial(m)[1] for g in self.G.elements)
            img = _orbit_accumulate(self.G.elements, {m: one}, self.p)
            if img:
                sp.add(img)
        self._inv[md] = sp
        return sp

    def invariant_basis(self, d: int) -> GradedSubspace:
        return GradedSubspace.merge(
            (self.invariant_piece(md) for md in self.multidegrees(d)), self.nvars, self.p, d
        )

    def invariant_dim(self, d: int) -> int:
        if self.diagonal:
            return sum(1 for md in self.multidegrees(d) if self.weight_of(md) == self._zero_w)
        return sum(self.invariant_piece(md).dim for md in self.multidegrees(d))

    def _sub_multidegrees(self, md):
        for alpha in product(*(range(e + 1) for e in md)):
            yield alpha

    # products of invariants

    def product_piece(self, j: int, md: tuple[int, ...]) -> GradedSubspace:
        """Degree-``md`` part of ``(F[V]^G_+)^j``."""
        if j == 1:
            return self.invariant_piece(md)
        sp = self._prod.get((j, md))
        if sp is not None:
            return sp
        sp = GradedSubspace(self.nvars, self.p, sum(md))
        full = self.invariant_piece(md).dim
        d = sum(md)
        if full and d >= j:
            for alpha in self._sub_multidegrees(md):
                e = sum(alpha)
                if e == 0 or d - e < j - 1:
                    continue
                left = self.invariant_piece(alpha)
                if not left.dim:
                    continue
                rest = tuple(x - y for x, y in zip(md, alpha))
                right = self.product_piece(j - 1, rest)
                if not right.dim:
                    continue
                for f in left.basis():
                    for g in right.basis():
                        sp.add(f * g)
                        if sp.dim == full:
                            break
                    if sp.dim == full:
                        break
                if sp.dim == full:
                    break
        self._prod[(j, md)] = sp
        return sp

    def _product_contains(self, j: int, md: tuple[int, ...]) -> bool:
        """Diagonal actions: is the invariant monomial ``md`` a product of
        ``j`` invariant monomials of positive degree?"""
        if j == 1:
            return self.weight_of(md) == self._zero_w and sum(md) > 0
        key = (j, md)
        hit = self._prod_flag.get(key)
        if hit is not None:
            return hit
        hit = False
        d = sum(md)
        if d >= j and self.weight_of(md) == self._zero_w:
            for alpha in self._sub_multidegrees(md):
                e = sum(alpha)
                if e == 0 or d - e < j - 1 or self.weight_of(alpha) != self._zero_w:
                    continue
                if self._product_contains(j - 1, tuple(x - y for x, y in zip(md, alpha))):
                    hit = True
                    break
        self._prod_flag[key] = hit
        return hit

    def product_dim(self, j: int, d: int) -> int:
        if self.diagonal:
            return sum(
                1 for md in self.multidegrees(d) if self._product_contains(j, md)
            )
        return sum(self.product_piece(j, md).dim for md in self.multidegrees(d))

    def product_slice(self, j: int, d: int) -> GradedSubspace:
        if self.diagonal:
            sp = GradedSubspace(self.nvars, self.p, d)
            for md in self.multidegrees(d):
                if self._product_contains(j, md):
                    sp.add_unit(md)  # diagonal: orbits are single variables, so md is a monomial
            return sp
        return GradedSubspace.merge(
            (self.product_piece(j, md) for md in self.multidegrees(d)), self.nvars, self.p, d
        )

    # subalgebra generated by low-degree invariants

    def subalgebra_piece(self, gen_degree: int, md: tuple[int, ...]) -> GradedSubspace:
        """Degree-``md`` part of the algebra generated by invariants of
        degree at most ``gen_degree``."""
        key = (gen_degree, md)
        sp = self._sub.get(key)
        if sp is not None:
            return sp
        d = sum(md)
        sp = GradedSubspace(self.nvars, self.p, d)
        if d == 0:
            sp.add_unit((0,) * self.nvars)
        else:
            full = self.invariant_piece(md).dim
            for alpha in self._sub_multidegrees(md):
                e = sum(alpha)
                if e == 0 or e > gen_degree:
                    continue
                left = self.invariant_piece(alpha)
                if not left.dim:
                    continue
                right = self.subalgebra_piece(gen_degree, tuple(x - y for x, y in zip(md, alpha)))
                for f in left.basis():
                    for g in right.basis():
                        sp.add(f * g)
                if sp.dim == full:
                    break
        self._sub[key] = sp
        return sp

    def subalgebra_slice(self, gen_degree: int, d: int) -> GradedSubspace:
        return GradedSubspace.merge(
            (self.subalgebra_piece(gen_degree, md) for md in self.multidegrees(d)), self.nvars, self.p, d
        )

    # Hilbert ideal

    def hilbert_piece(self, key: tuple) -> GradedSubspace:
        sp = self._hilb.get(key)
        if sp is not None:
            return sp
        md, w = key
        d = sum(md)
        sp = GradedSubspace(self.nvars, self.p, d)
        mons = self.pieces(md).get(w, [])
        full = len(mons)
        if d > 0 and full:
            if w == self._zero_w:
                for f in self.invariant_piece(md).basis():
                    sp.add(f)
            for v in range(self.nvars):
                if sp.dim == full:
                    break
                t = self.orbit_of[v]
                if md[t] == 0:
                    continue
                smd = md[:t] + (md[t] - 1,) + md[t + 1:]
                sw = tuple((a - b) % self.p for a, b in zip(w, self._var_weight[v]))
                sub = self.hilbert_piece((smd, sw))
                if not sub.dim:
                    continue
                xv = unit_monomial(self.nvars, v)
                if sub.dim == self.piece_size((smd, sw)):
                    for m in self.pieces(smd)[sw]:
                        sp.add_unit(tuple(a + b for a, b in zip(m, xv)))
                else:
                    for row in sub.rows.values():
                        sp.add({tuple(a + b for a, b in zip(m, xv)): c for m, c in row.items()})
                        if sp.dim == full:
                            break
        self._hilb[key] = sp
        return sp

    def hilbert_slice(self, d: int) -> GradedSubspace:
        parts = []
        for md in self.multidegrees(d):
            for w in self.pieces(md):
                parts.append(self.hilbert_piece((md, w)))
        return GradedSubspace.merge(parts, self.nvars, self.p, d)

    def hilbert_deficit(self, d: int) -> tuple[int, int]:
        """``(dim of slice, dim of F[V]_d)``."""
        have = total = 0
        for md in self.multidegrees(d):
            for w, mons in self.pieces(md).items():
                total += len(mons)
                have += self.hilbert_piece((md, w)).dim
        return have, total

    def in_hilbert_ideal(self, f: Polynomial) -> bool:
        if not f.terms:
            return True
        if not f.is_homogeneous():
            raise ValueError("membership test needs a homogeneous polynomial")
        if f.degree() == 0:
            return False
        split: dict[tuple, dict] = {}
        for m, c in f.terms.items():
            split.setdefault(self.key_of(m), {})[m] = c
        return all(not self.hilbert_piece(k)._reduce_terms(t) for k, t in split.items())


def _monomials_in(orbit: tuple[int, ...], e: int, nvars: int):
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(orbit, e):
        m = [0] * nvars
        for v in combo:
            m[v] += 1
        yield tuple(m)


def engine(G: GroupAction) -> InvariantEngine:
    """The memoised engine attached to ``G``."""
    eng = G.__dict__.get("_engine")
    if eng is None:
        eng = InvariantEngine(G)
        G.__dict__["_engine"] = eng
    return eng


def invariant_basis(G: GroupAction, d: int) -> GradedSubspace:
    return engine(G).invariant_basis(d)


def hilbert_ideal_slice(G: GroupAction, d: int) -> GradedSubspace:
    return engine(G).hilbert_slice(d)


def in_hilbert_ideal(f: Polynomial, G: GroupAction) -> bool:
    return engine(G).in_hilbert_ideal(f)


def subalgebra_slice(G: GroupAction, d: int, gen_degree: int) -> GradedSubspace:
    return engine(G).subalgebra_slice(gen_degree, d)


@dataclass
class DegreeRow:
    d: int
    dim_inv: int
    dim_products: int

    @property
    def gap(self) -> int:
        return self.dim_inv - self.dim_products

    def as_dict(self) -> dict:
        return {"d": self.d, "dim_inv": self.dim_inv, "dim_products": self.dim_products, "gap": self.gap}


@dataclass
class NoetherResult:
    k: int
    d_max: int
    value: int
    certified: bool
    bound: int | None
    rows: list[DegreeRow] = field(default_factory=list)
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "d_max": self.d_max,
            "degrees": [r.as_dict() for r in self.rows],
            "beta" if self.k == 1 else "beta_k": self.value,
            "certified": self.certified,
            "bound": self.bound,
            "elapsed_ms": round(self.elapsed * 1000, 1),
        }


def a_priori_bound(G: GroupAction, extra: int | None = None) -> int:
    """A proven upper bound for the Noether number: the group order (char 0),
    ``p^2 + p - 1`` for the Heisenberg group, ``D(A)`` for a faithful
    diagonal action of an abelian ``A`` small enough to search, and
    ``extra`` if supplied."""
    bounds = [G.order]
    if isinstance(G, HeisenbergModule):
        bounds.append(G.p**2 + G.p - 1)
    if G.abelian is not None and G.abelian.order <= DEFAULT_BUDGET:
        bounds.append(davenport(G.abelian))
    if extra is not None:
        bounds.append(extra)
    return min(bounds)


def noether_k(G: GroupAction, k: int, d_max: int, *, bound: int | None = None) -> NoetherResult:
    """Largest ``d <= d_max`` with an invariant of degree ``d`` outside
    ``(F[V]^G_+)^(k+1)``.

    ``bound`` is an externally proven bound on the Noether number; the result
    is certified when ``d_max >= k * (best known bound)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    t0 = time.perf_counter()
    eng = engine(G)
    rows = []
    for d in range(1, d_max + 1):
        rows.append(DegreeRow(d, eng.invariant_dim(d), eng.product_dim(k + 1, d)))
    value = max((r.d for r in rows if r.gap > 0), default=0)
    b = a_priori_bound(G, bound)
    return NoetherResult(k, d_max, value, d_max >= k * b, k * b, rows, time.perf_counter() - t0)


def noether_number(G: GroupAction, d_max: int, *, bound: int | None = None) -> NoetherResult:
    return noether_k(G, 1, d_max, bound=bound)


@dataclass
class TopDegreeResult:
    value: int
    exact: bool
    saturated_at: int | None
    rows: list[tuple[int, int, int]]
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "b": self.value,
            "exact": self.exact,
            "saturated_at": self.saturated_at,
            "degrees": [{"d": d, "dim_slice": h, "dim_full": t} for d, h, t in self.rows],
            "elapsed_ms": round(self.elapsed * 1000, 1),
        }


def top_degree_coinvariants(G: GroupAction, d_max: int) -> TopDegreeResult:
    """Top degree ``b`` of ``F[V] / (Hilbert ideal)``.

    Once a whole degree lies in the ideal so does every higher degree, so the
    first saturated degree minus one is exact.  Without saturation up to
    ``d_max`` the value returned is only a lower bound.
    """
    t0 = time.perf_counter()
    eng = engine(G)
    rows = []
    for d in range(0, d_max + 1):
        have, total = eng.hilbert_deficit(d)
        rows.append((d, have, total))
        if have == total:
            return TopDegreeResult(d - 1, True, d, rows, time.perf_counter() - t0)
    last = max(d for d, h, t in rows if h < t)
    return TopDegreeResult(last, False, None, rows, time.perf_counter() - t0)


def polarize(G: HeisenbergModule, f: Polynomial, i: int, s: int, t: int) -> Polynomial:
    """``sum_k x[i,k]^(t) d/dx[i,k]^(s)`` applied to ``f``."""
    spec = G.spec
    if not 1 <= i <= spec.p - 1 or not (1 <= s <= spec.n[i - 1] and 1 <= t <= spec.n[i - 1]):
        raise ValueError(f"no copies {s}, {t} in block {i}")
    out = Polynomial.zero(f.nvars, f.p)
    for k in range(spec.p):
        src = G.variables.index(VariableId("V", i, k, s))
        dst = G.variables.index(VariableId("V", i, k, t))
        out = out + _var(G, dst) * f.derivative(src)
    return out


def _var(G: GroupAction, v: int) -> Polynomial:
    return Polynomial.variable(G.nvars, G.p, v)


def _is_A_invariant_poly(G: HeisenbergModule, u: Polynomial) -> bool:
    return all(G.is_A_invariant(m) for m in u.terms)


def trukk_difference(G: HeisenbergModule, us: list[Polynomial], g: MonomialMatrix) -> Polynomial:
    """``u_1 ... u_{p-1} - u_1^g u_2^(g^-1) u_3 ... u_{p-1}`` for
    A-invariant ``u_i`` of positive degree and ``g`` in ``<b>``."""
    p = G.p
    if len(us) != p - 1:
        raise ValueError(f"expected {p - 1} factors, got {len(us)}")
    for u in us:
        if not u.terms or any(sum(m) == 0 for m in u.terms):
            raise ValueError("factors must have positive degree")
        if not _is_A_invariant_poly(G, u):
            raise ValueError("factors must be A-invariant")
    if g not in G.b_powers:
        raise ValueError("g must lie in <b>")
    lhs = Polynomial.constant(G.nvars, p, 1)
    for u in us:
        lhs = lhs * u
    rhs = act(g, us[0]) * act(g.inverse(), us[1])
    for u in us[2:]:
        rhs = rhs * u
    return lhs - rhs


@dataclass
class RewriteResult:
    """``m'`` with ``m - scalar * m'`` in the Hilbert ideal."""

    monomial: Monomial
    scalar: Cyclotomic
    moves: int


def _invariant_divisors(G: HeisenbergModule, m: Monomial) -> list[Monomial]:
    out = []
    for e in product(*(range(a + 1) for a in m)):
        if any(e) and G.is_A_invariant(e):
            out.append(e)
    return out


def homologous_rewrite(
    G: HeisenbergModule, m: Monomial, v: Monomial, v_prime: Monomial, *, max_states: int = 20000
) -> RewriteResult:
    """Find ``m' ~ m`` with ``v' | m'`` and ``m - m'`` in the Hilbert ideal.

    Searches breadth first over moves ``r u_1 u_2 -> r u_1^g u_2^(g^-1)`` with
    ``u_1, u_2`` A-invariant and ``g`` in ``<b>``; each such move changes the
    monomial by an element of the Hilbert ideal when ``p = 3``.  The result
    is checked by exact reduction before it is returned.
    """
    if G.p != 3:
        raise ValueError("the rewrite is implemented for p = 3")
    for mono in (m, v, v_prime):
        if not G.v_only(mono):
            raise ValueError("monomials must involve V-variables only")
    if any(a > b for a, b in zip(v, m)):
        raise ValueError("v does not divide m")
    if not G.homologous(v, v_prime):
        raise ValueError("v and v' are not homologous")
    one = Cyclotomic.one(G.p)
    target = tuple(v_prime)
    if all(a <= b for a, b in zip(target, m)):
        return RewriteResult(tuple(m), one, 0)
    shifts = [G.b_powers[1], G.b_powers[2]]
    seen = {tuple(m): 0}
    queue = deque([tuple(m)])
    found = None
    while queue and found is None:
        cur = queue.popleft()
        divs = _invariant_divisors(G, cur)
        for u1 in divs:
            rest = tuple(a - b for a, b in zip(cur, u1))
            for u2 in divs:
                if u2 < u1 or any(a > b for a, b in zip(u2, rest)):
                    continue
                r = tuple(a - b for a, b in zip(rest, u2))
                for g in shifts:
                    for x, y in ((u1, u2), (u2, u1)):
                        _, xg = g.act_monomial(x)
                        _, yg = g.inverse().act_monomial(y)
                        nxt = tuple(a + b + c for a, b, c in zip(r, xg, yg))
                        if nxt in seen:
                            continue
                        seen[nxt] = seen[cur] + 1
                        if len(seen) > max_states:
                            raise RuntimeError("rewrite search exceeded its state budget")
                        if all(a <= b for a, b in zip(target, nxt)):
                            found = nxt
                            break
                        queue.append(nxt)
                    if found:
                        break
                if found:
                    break
            if found:
                break
    if found is None:
        raise RuntimeError("no homologous rewrite found; the move set is exhausted")
    diff = Polynomial.monomial(m, G.p) - Polynomial.monomial(found, G.p)
    if not in_hilbert_ideal(diff, G):
        raise RuntimeError("rewrite failed verification against the Hilbert ideal")
    return RewriteResult(found, one, seen[found])
