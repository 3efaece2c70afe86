"""Finite groups of monomial matrices acting on polynomial rings.

A ``MonomialMatrix`` sends variable ``v`` to ``w^exps[v] * x_{perm[v]}``.  The
group acts on polynomials from the right, ``f^g(v) = f(g v)``, so products
compose left to right: ``x^(gh) = (x^g)^h``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence as Seq

from sympy import isprime

from .abelian import AbelianGroup, GroupElement, Sequence
from .cyclotomic import Cyclotomic, root_of_unity
from .polynomial import Monomial, Polynomial

DEFAULT_GROUP_BUDGET = 1000


class GroupBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class VariableId:
    """``x[i,k]^(j)`` for V-variables, ``u[alpha,beta]^(j)`` for U-variables.

    For U-variables ``i`` holds alpha and ``k`` holds beta.
    """

    kind: str
    i: int
    k: int
    j: int = 1

    def __post_init__(self):
        if self.kind not in ("U", "V"):
            raise ValueError(f"unknown variable kind {self.kind!r}")

    @property
    def sort_key(self) -> tuple:
        if self.kind == "U":
            return (0, self.i, self.k, self.j)
        return (1, self.i, self.j, self.k)

    def __lt__(self, other: VariableId) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.kind == "U":
            return f"u[{self.i},{self.k}]^({self.j})"
        return f"x[{self.i},{self.k}]^({self.j})"


@dataclass(frozen=True)
class ModuleSpec:
    """``U + sum_i n_i V_{w^i}`` for the Heisenberg group of order ``p^3``."""

    p: int
    u_chars: tuple[tuple[int, int], ...] = ()
    n: tuple[int, ...] = ()

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        p = self.p
        chars = tuple(sorted((a % p, b % p) for a, b in self.u_chars))
        n = tuple(self.n)
        if len(n) > p - 1:
            raise ValueError(f"V-blocks are indexed 1..{p - 1}")
        if any(x < 0 for x in n):
            raise ValueError("multiplicities must be non-negative")
        n = n + (0,) * (p - 1 - len(n))
        object.__setattr__(self, "u_chars", chars)
        object.__setattr__(self, "n", n)
        if self.dimension < 1:
            raise ValueError("module must have positive dimension")

    @classmethod
    def single(cls, p: int, copies: int = 1, block: int = 1) -> ModuleSpec:
        n = [0] * (p - 1)
        n[block - 1] = copies
        return cls(p, (), tuple(n))

    @property
    def dimension(self) -> int:
        return len(self.u_chars) + self.p * sum(self.n)

    def variables(self) -> list[VariableId]:
        out = []
        seen: dict[tuple[int, int], int] = {}
        for ch in self.u_chars:
            seen[ch] = seen.get(ch, 0) + 1
            out.append(VariableId("U", ch[0], ch[1], seen[ch]))
        for i, ni in enumerate(self.n, start=1):
            for j in range(1, ni + 1):
                for k in range(self.p):
                    out.append(VariableId("V", i, k, j))
        return sorted(out)

    def format(self) -> str:
        parts = [f"p={self.p}"]
        if self.u_chars:
            parts.append("U=[" + ",".join(f"({a},{b})" for a, b in self.u_chars) + "]")
        if any(self.n):
            parts.append("V=[" + ",".join(f"{i}:{c}" for i, c in enumerate(self.n, 1) if c) + "]")
        return "; ".join(parts)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class MonomialMatrix:
    """``x_v -> w^exps[v] * x_perm[v]``."""

    perm: tuple[int, ...]
    exps: tuple[int, ...]
    p: int

    def __post_init__(self):
        if len(self.perm) != len(self.exps):
            raise ValueError("perm and exps differ in length")
        object.__setattr__(self, "exps", tuple(e % self.p for e in self.exps))

    @classmethod
    def identity(cls, n: int, p: int) -> MonomialMatrix:
        return cls(tuple(range(n)), (0,) * n, p)

    @classmethod
    def diagonal(cls, exps: Seq[int], p: int) -> MonomialMatrix:
        return cls(tuple(range(len(exps))), tuple(exps), p)

    @property
    def dimension(self) -> int:
        return len(self.perm)

    def is_bijective(self) -> bool:
        return sorted(self.perm) == list(range(len(self.perm)))

    def is_identity(self) -> bool:
        return self.is_diagonal() and not any(self.exps)

    def is_diagonal(self) -> bool:
        return all(v == t for v, t in enumerate(self.perm))

    def __mul__(self, other: MonomialMatrix) -> MonomialMatrix:
        """``self`` then ``other``: ``x^(gh) = (x^g)^h``."""
        if other.dimension != self.dimension or other.p != self.p:
            raise ValueError("incompatible monomial matrices")
        perm = tuple(other.perm[t] for t in self.perm)
        exps = tuple(e + other.exps[t] for e, t in zip(self.exps, self.perm))
        return MonomialMatrix(perm, exps, self.p)

    def inverse(self) -> MonomialMatrix:
        n = self.dimension
        perm = [0] * n
        exps = [0] * n
        for v, t in enumerate(self.perm):
            perm[t] = v
            exps[t] = -self.exps[v]
        return MonomialMatrix(tuple(perm), tuple(exps), self.p)

    def __pow__(self, n: int) -> MonomialMatrix:
        base = self if n >= 0 else self.inverse()
        out = MonomialMatrix.identity(self.dimension, self.p)
        for _ in range(abs(n)):
            out = out * base
        return out

    def scalar(self, v: int) -> Cyclotomic:
        return root_of_unity(self.p, self.exps[v])

    def act_monomial(self, m: Monomial) -> tuple[int, Monomial]:
        """``m^g = w^e * m'``; returns ``(e mod p, m')``."""
        out = [0] * len(m)
        e = 0
        for v, a in enumerate(m):
            if a:
                out[self.perm[v]] += a
                e += a * self.exps[v]
        return e % self.p, tuple(out)


def act(g: MonomialMatrix, f: Polynomial) -> Polynomial:
    """The right action ``f^g``."""
    if f.nvars != g.dimension:
        raise ValueError("polynomial and matrix act on different variable sets")
    terms: dict[Monomial, Cyclotomic] = {}
    for m, c in f.terms.items():
        e, m2 = g.act_monomial(m)
        terms[m2] = c.mul_root(e)
    return Polynomial._from_clean(f.nvars, f.p, terms)


class GroupAction:
    """A finite group given extensionally as a closed set of monomial matrices."""

    def __init__(
        self,
        elements: Iterable[MonomialMatrix],
        p: int,
        variables: Seq | None = None,
        generators: dict[str, MonomialMatrix] | None = None,
    ):
        self.elements = tuple(elements)
        self.p = p
        self.index = {g: n for n, g in enumerate(self.elements)}
        n = self.elements[0].dimension
        self.variables = tuple(variables) if variables is not None else tuple(f"v{i}" for i in range(n))
        self.generators = dict(generators or {})
        # the abstract group when the action is a diagonal one of a known abelian group
        self.abelian: AbelianGroup | None = None
        self.identity = MonomialMatrix.identity(n, p)
        if self.identity not in self.index:
            raise ValueError("element set lacks the identity")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: MonomialMatrix) -> bool:
        return g in self.index

    @property
    def nvars(self) -> int:
        return self.identity.dimension

    @property
    def names(self) -> list[str]:
        return [str(v) for v in self.variables]

    def var_index(self, var) -> int:
        return self.variables.index(var)

    def subgroup(self, gens: Iterable[MonomialMatrix]) -> GroupAction:
        gens = list(gens)
        for g in gens:
            if g not in self.index:
                raise ValueError("subgroup generator is not a group element")
        return close_group(gens, p=self.p, dim=self.nvars, variables=self.variables)

    def is_subgroup_of(self, other: GroupAction) -> bool:
        return all(g in other.index for g in self.elements)

    def is_normal_in(self, other: GroupAction) -> bool:
        mine = set(self.elements)
        return all(g.inverse() * n * g in mine for g in other.elements for n in self.elements)

    @cached_property
    def variable_orbits(self) -> tuple[tuple[int, ...], ...]:
        """Orbits of the permutation parts on variable indices."""
        seen: dict[int, int] = {}
        orbits = []
        for v in range(self.nvars):
            if v in seen:
                continue
            orb = sorted({g.perm[v] for g in self.elements})
            for w in orb:
                seen[w] = len(orbits)
            orbits.append(tuple(orb))
        return tuple(orbits)

    @cached_property
    def orbit_of_variable(self) -> tuple[int, ...]:
        out = [0] * self.nvars
        for t, orb in enumerate(self.variable_orbits):
            for v in orb:
                out[v] = t
        return tuple(out)

    @cached_property
    def diagonal_elements(self) -> tuple[MonomialMatrix, ...]:
        """The normal subgroup acting by scalars on every variable."""
        return tuple(g for g in self.elements if g.is_diagonal())

    def __repr__(self) -> str:
        return f"GroupAction(order={self.order}, nvars={self.nvars})"


def close_group(
    generators: Iterable[MonomialMatrix],
    *,
    p: int | None = None,
    dim: int | None = None,
    budget: int = DEFAULT_GROUP_BUDGET,
    variables: Seq | None = None,
    names: dict[str, MonomialMatrix] | None = None,
) -> GroupAction:
    """Closure of ``generators`` under products (breadth first)."""
    gens = list(generators)
    if not gens:
        if p is None or dim is None:
            raise ValueError("an empty generator list needs p and dim")
        gens = [MonomialMatrix.identity(dim, p)]
    p = gens[0].p if p is None else p
    dim = gens[0].dimension if dim is None else dim
    for g in gens:
        if g.dimension != dim or g.p != p:
            raise ValueError("generators differ in dimension or conductor")
        if not g.is_bijective():
            raise ValueError(f"generator {g} is not invertible")
    identity = MonomialMatrix.identity(dim, p)
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        h = queue.popleft()
        for g in gens:
            x = h * g
            if x not in seen:
                seen.add(x)
                order.append(x)
                if len(order) > budget:
                    raise GroupBudgetExceeded(f"group closure exceeded {budget} elements")
                queue.append(x)
    return GroupAction(order, p, variables, names)


@dataclass(frozen=True)
class Character:
    """A linear character of ``G`` trivial on a normal subgroup ``N``,
    stored as w-exponents on every element of ``G``."""

    group: GroupAction
    kernel: GroupAction
    exps: dict = field(hash=False, compare=False)
    label: str = ""

    @classmethod
    def from_transversal(
        cls, group: GroupAction, kernel: GroupAction, reps: Seq[MonomialMatrix], values: Seq[int], label: str = ""
    ) -> Character:
        p = group.p
        exps: dict[MonomialMatrix, int] = {}
        for t, e in zip(reps, values):
            for n in kernel.elements:
                g = n * t
                if g in exps:
                    raise ValueError("transversal representatives share a coset")
                exps[g] = e % p
        if len(exps) != group.order:
            raise ValueError("transversal does not cover the group")
        chi = cls(group, kernel, exps, label)
        if not chi.is_multiplicative():
            raise ValueError("table is not a homomorphism")
        return chi

    def exponent(self, g: MonomialMatrix) -> int:
        return self.exps[g]

    def __call__(self, g: MonomialMatrix) -> Cyclotomic:
        return root_of_unity(self.group.p, self.exps[g])

    def is_trivial(self) -> bool:
        return not any(self.exps.values())

    def is_trivial_on(self, sub: GroupAction) -> bool:
        return all(self.exps[n] == 0 for n in sub.elements)

    def is_multiplicative(self) -> bool:
        p = self.group.p
        gens = list(self.group.generators.values()) or list(self.group.elements)
        return all(
            (self.exps[g * s] - self.exps[g] - self.exps[s]) % p == 0
            for g in self.group.elements
            for s in gens
        )

    def __str__(self) -> str:
        return self.label or "chi"


class HeisenbergModule(GroupAction):
    """The Heisenberg group of order ``p^3`` acting on ``F[W]`` for a
    :class:`ModuleSpec` ``W``.

    On ``x[i,k]^(j)``: ``b`` lowers ``k`` by one, ``a`` scales by ``w^(ik)``
    and ``c`` by ``w^i``.  A U-variable with character ``(alpha, beta)`` is
    scaled by ``w^alpha`` under ``a`` and ``w^beta`` under ``b``.
    """

    def __init__(self, spec: ModuleSpec, budget: int = DEFAULT_GROUP_BUDGET):
        p = spec.p
        variables = spec.variables()
        pos = {v: n for n, v in enumerate(variables)}
        nv = len(variables)
        a_exp, b_exp, c_exp = [0] * nv, [0] * nv, [0] * nv
        b_perm = list(range(nv))
        for n, v in enumerate(variables):
            if v.kind == "U":
                a_exp[n], b_exp[n] = v.i, v.k
            else:
                a_exp[n] = v.i * v.k
                c_exp[n] = v.i
                b_perm[n] = pos[VariableId("V", v.i, (v.k - 1) % p, v.j)]
        a = MonomialMatrix(tuple(range(nv)), tuple(a_exp), p)
        b = MonomialMatrix(tuple(b_perm), tuple(b_exp), p)
        c = MonomialMatrix(tuple(range(nv)), tuple(c_exp), p)
        closed = close_group([a, b, c], budget=budget)
        super().__init__(closed.elements, p, variables, {"a": a, "b": b, "c": c})
        self.spec = spec
        self.a, self.b, self.c = a, b, c
        self._check_relations()

    def _check_relations(self) -> None:
        a, b, c, p = self.a, self.b, self.c, self.p
        one = self.identity
        if not (a**p == one and b**p == one and c**p == one):
            raise RuntimeError("generator of order other than p")
        if a.inverse() * b.inverse() * a * b != c:
            raise RuntimeError("[a,b] != c")
        if c * a != a * c or c * b != b * c:
            raise RuntimeError("c is not central")
        if (p**3) % self.order:
            raise RuntimeError(f"order {self.order} does not divide p^3")

    @cached_property
    def A(self) -> GroupAction:
        """The abelian normal subgroup generated by ``a`` and ``c``."""
        return self.subgroup([self.a, self.c])

    @cached_property
    def center(self) -> GroupAction:
        return self.subgroup([self.c])

    @cached_property
    def b_powers(self) -> list[MonomialMatrix]:
        return [self.b**n for n in range(self.p)]

    def characters_mod_A(self) -> list[Character]:
        """The characters ``b^n -> w^(sn)`` of ``G/A``, ``s = 0..p-1``."""
        reps = self.b_powers
        if len(self.A) * len(reps) != self.order:
            raise ValueError("b does not give a transversal of A in this image")
        return [
            Character.from_transversal(self, self.A, reps, [s * n for n in range(self.p)], f"b->w^{s}")
            for s in range(self.p)
        ]

    def characters_mod_center(self) -> list[Character]:
        """The characters ``a^i b^j -> w^(si + tj)`` of ``G/<c>``."""
        p = self.p
        reps = [(self.a**i) * (self.b**j) for i in range(p) for j in range(p)]
        out = []
        for s in range(p):
            for t in range(p):
                vals = [s * i + t * j for i in range(p) for j in range(p)]
                out.append(Character.from_transversal(self, self.center, reps, vals, f"a->w^{s},b->w^{t}"))
        return out

    @cached_property
    def weight_group(self) -> AbelianGroup:
        return AbelianGroup((self.p, self.p))

    @cached_property
    def variable_weights(self) -> tuple[tuple[int, int], ...]:
        p = self.p
        out = []
        for v in self.variables:
            if v.kind == "U":
                out.append((v.i % p, 0))
            else:
                out.append(((v.i * v.k) % p, v.i % p))
        return tuple(out)

    def weight(self, m: Monomial) -> GroupElement:
        wa = sum(e * w[0] for e, w in zip(m, self.variable_weights))
        wc = sum(e * w[1] for e, w in zip(m, self.variable_weights))
        return self.weight_group(wa, wc)

    def weight_sequence(self, m: Monomial, part: str | None = None) -> Sequence:
        """Multiset of variable weights of ``m``; ``part`` in ``{"a", "c"}``
        projects to one coordinate."""
        ws = self.variable_weights
        if part is None:
            return Sequence.from_counts(self.weight_group, _merge((ws[v], e) for v, e in enumerate(m) if e))
        col = {"a": 0, "c": 1}[part]
        return Sequence.from_counts(
            AbelianGroup.cyclic(self.p), _merge(((ws[v][col],), e) for v, e in enumerate(m) if e)
        )

    def is_A_invariant(self, m: Monomial) -> bool:
        return self.weight(m).is_zero()

    def v_only(self, m: Monomial) -> bool:
        return all(not e or v.kind == "V" for v, e in zip(self.variables, m))

    def block_degrees(self, m: Monomial) -> dict[tuple[int, int], int]:
        """Degree of ``m`` in each copy ``(i, j)`` of a V-block."""
        out: dict[tuple[int, int], int] = {}
        for v, e in zip(self.variables, m):
            if e and v.kind == "V":
                out[(v.i, v.j)] = out.get((v.i, v.j), 0) + e
        return out

    def homologous(self, u: Monomial, v: Monomial) -> bool:
        if not (self.v_only(u) and self.v_only(v)):
            raise ValueError("homology is only defined for monomials in V-variables")
        return sum(u) == sum(v) and self.block_degrees(u) == self.block_degrees(v)

    def variable(self, i: int, k: int, j: int = 1) -> int:
        """Index of ``x[i,k]^(j)``."""
        return self.variables.index(VariableId("V", i, k % self.p, j))

    def u_variable(self, alpha: int, beta: int, j: int = 1) -> int:
        return self.variables.index(VariableId("U", alpha % self.p, beta % self.p, j))

    def monomial(self, powers: dict[int, int]) -> Monomial:
        e = [0] * self.nvars
        for v, a in powers.items():
            e[v] += a
        return tuple(e)

    def __repr__(self) -> str:
        return f"HeisenbergModule({self.spec.format()})"


def _merge(pairs) -> dict:
    out: dict = {}
    for key, c in pairs:
        out[key] = out.get(key, 0) + c
    return out


def build_heisenberg_module(spec: ModuleSpec, budget: int = DEFAULT_GROUP_BUDGET) -> HeisenbergModule:
    return HeisenbergModule(spec, budget)


def weight(module: HeisenbergModule, m: Monomial) -> GroupElement:
    return module.weight(m)


def weight_sequence(module: HeisenbergModule, m: Monomial, part: str | None = None) -> Sequence:
    return module.weight_sequence(m, part)


def is_A_invariant(module: HeisenbergModule, m: Monomial) -> bool:
    return module.is_A_invariant(m)


def homologous(module: HeisenbergModule, u: Monomial, v: Monomial) -> bool:
    return module.homologous(u, v)


def diagonal_module(group: AbelianGroup, characters: Seq[Seq[int]]) -> GroupAction:
    """An elementary abelian p-group acting diagonally; variable ``v`` is
    scaled by ``w^characters[v][t]`` under the ``t``-th standard generator."""
    if not group.orders or len(set(group.orders)) != 1 or not isprime(group.orders[0]):
        raise ValueError(f"{group} is not an elementary abelian p-group")
    p = group.orders[0]
    chars = [tuple(c % p for c in ch) for ch in characters]
    if not chars or any(len(ch) != group.rank for ch in chars):
        raise ValueError(f"characters must be {group.rank}-tuples")
    gens = {
        f"e{t}": MonomialMatrix.diagonal([ch[t] for ch in chars], p) for t in range(group.rank)
    }
    closed = close_group(gens.values(), p=p, dim=len(chars))
    names = ["t[" + ",".join(map(str, ch)) + "]" for ch in chars]
    G = GroupAction(closed.elements, p, names, gens)
    if G.order == group.order:
        G.abelian = group
    return G


def all_characters_module(group: AbelianGroup) -> GroupAction:
    """One variable per nontrivial character of ``group``."""
    chars = [g.coords for g in group.elements() if not g.is_zero()]
    return diagonal_module(group, chars)

