"""The verification suite: every reproducible number and property as a
named, independently seeded check."""
from __future__ import annotations

import fnmatch
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from typing import Callable

from .abelian import AbelianGroup, Sequence
from .invariants import (
    engine,
    in_hilbert_ideal,
    invariant_basis,
    noether_k,
    noether_number,
    orbit_sum,
    polarize,
    semi_projection,
    subalgebra_slice,
    top_degree_coinvariants,
    transfer,
    trukk_difference,
    homologous_rewrite,
)
from .monomial import (
    ModuleSpec,
    act,
    all_characters_module,
    build_heisenberg_module,
    diagonal_module,
)
from .polynomial import Polynomial, monomials_of_degree
from .zerosum import (
    cd_check,
    classify_maximal_zsf,
    davenport,
    davenport_k,
    find_short_zero_sum,
    nullak_factor,
    olson_formula,
    projected_sums,
    separ_factor,
)


class UnknownCheck(KeyError):
    pass


@dataclass
class CheckRecord:
    id: str
    anchor: str
    expected: object
    computed: object
    passed: bool
    elapsed_ms: float
    error: str | None = None


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def as_dict(self, timings: bool = True) -> dict:
        recs = []
        for r in self.records:
            d = asdict(r)
            if not timings:
                d.pop("elapsed_ms")
            recs.append(d)
        return {
            "checks": recs,
            "summary": {
                "total": len(self.records),
                "passed": sum(r.passed for r in self.records),
                "failed": sum(not r.passed for r in self.records),
                "ok": self.passed,
            },
        }


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    run: Callable[[random.Random], tuple[object, object, bool]]


CHECKS: dict[str, Check] = {}


def check(check_id: str, anchor: str):
    def deco(fn):
        CHECKS[check_id] = Check(check_id, anchor, fn)
        return fn

    return deco


def _cyc(*orders: int) -> AbelianGroup:
    return AbelianGroup(orders)


# Davenport constants

_OLSON = {
    "c2": ((2,), 2, (1,)),
    "c4": ((4,), 2, (2,)),
    "c8": ((8,), 2, (3,)),
    "c2x2": ((2, 2), 2, (1, 1)),
    "c2x2x2": ((2, 2, 2), 2, (1, 1, 1)),
    "c2x4": ((2, 4), 2, (1, 2)),
    "c3": ((3,), 3, (1,)),
    "c9": ((9,), 3, (2,)),
    "c3x3": ((3, 3), 3, (1, 1)),
    "c5": ((5,), 5, (1,)),
    "c5x5": ((5, 5), 5, (1, 1)),
}


def _davenport_check(orders, p, exps):
    def run(rng):
        expected = olson_formula(p, exps)
        value = davenport(AbelianGroup(orders))
        return expected, value, value == expected

    return run


for _name, (_orders, _p, _exps) in _OLSON.items():
    check(f"davenport.{_name}", "Olson's formula for p-groups")(_davenport_check(_orders, _p, _exps))


def _dk_check(p, k):
    def run(rng):
        expected = k * p + p - 1
        value = davenport_k(AbelianGroup((p, p)), k)
        return expected, value, value == expected

    return run


for _p, _k in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)]:
    check(f"davenport-k.c{_p}x{_p}.k{_k}", "Halter-Koch formula D_k(C_p^2) = kp + p - 1")(_dk_check(_p, _k))


# zero-sum lemmas


@check("lemma.zsf", "zero-sum free sequences of length p-1 over C_p")
def _zsf(rng):
    computed = {}
    ok = True
    for p in (2, 3, 5, 7):
        found = classify_maximal_zsf(p)
        A = AbelianGroup.cyclic(p)
        want = {Sequence.repeat(A(a), p - 1) for a in range(1, p)}
        computed[p] = len(found)
        ok &= set(found) == want and len(found) == p - 1
    return {p: p - 1 for p in (2, 3, 5, 7)}, computed, ok


def _valid_short(X, S, p) -> bool:
    return X.divides(S) and X.is_zero_sum() and len(X) in (p, 2 * p)


@check("lemma.eta.exhaustive", "short zero-sum subsequences over C_3^2, all 6435 multisets of size 7")
def _eta_exhaustive(rng):
    A = _cyc(3, 3)
    failures = total = 0
    for combo in combinations_with_replacement(range(9), 7):
        S = Sequence.of(A, combo)
        total += 1
        if not _valid_short(find_short_zero_sum(S), S, 3):
            failures += 1
    return {"multisets": 6435, "failures": 0}, {"multisets": total, "failures": failures}, failures == 0 and total == 6435


@check("lemma.eta.random", "short zero-sum subsequences over C_5^2, 1000 random multisets of size 13")
def _eta_random(rng):
    A = _cyc(5, 5)
    failures = 0
    for _ in range(1000):
        S = Sequence.of(A, [rng.randrange(25) for _ in range(13)])
        if not _valid_short(find_short_zero_sum(S), S, 5):
            failures += 1
    return 0, failures, failures == 0


@check("lemma.cd", "Cauchy-Davenport bound |Sigma(S)| >= min(p, |S|), 10^4 random sequences")
def _cd(rng):
    failures = 0
    for n in range(10_000):
        p = (3, 5, 7, 11)[n % 4]
        A = AbelianGroup.cyclic(p)
        S = Sequence.of(A, [rng.randrange(1, p) for _ in range(rng.randint(1, 2 * p))])
        if not cd_check(S)[2]:
            failures += 1
    return 0, failures, failures == 0


def random_separ_instance(rng: random.Random, p: int = 5):
    A = _cyc(p, p)
    zeros = rng.randint(0, p)
    elems = [A.encode((0, rng.randrange(p))) for _ in range(zeros)]
    elems += [A.encode((rng.randrange(1, p), rng.randrange(p))) for _ in range(p * p - 1 - zeros)]
    S = Sequence.of(A, elems)
    codes = S.codes()
    T = Sequence.of(A, rng.sample(codes, rng.randint(0, p - 1)))
    return S, T


def separ_ok(result, S, T, p) -> bool:
    return (
        result.length == p - 1
        and result.is_valid_for(S)
        and T.divides(S / (result.factors[0] * result.factors[1]))
        and len(projected_sums(result.factors[0])) == p
    )


@check("lemma.separ", "separated factorization over C_5^2, 1000 random admissible instances")
def _separ(rng):
    failures = 0
    for _ in range(1000):
        S, T = random_separ_instance(rng)
        if not separ_ok(separ_factor(S, T), S, T, 5):
            failures += 1
    return 0, failures, failures == 0


def random_nullak_instance(rng: random.Random, p: int):
    A = AbelianGroup.cyclic(p)
    n = p * p - 1 + rng.randint(0, p)
    zeros = rng.randint(p + 1, n)
    return Sequence.of(A, [0] * zeros + [rng.randrange(1, p) for _ in range(n - zeros)])


@check("lemma.nullak", "at least 2p-1 zero-sum blocks over C_p, 1000 random instances (p = 3, 5)")
def _nullak(rng):
    failures = 0
    for n in range(1000):
        p = (3, 5)[n % 2]
        S = random_nullak_instance(rng, p)
        r = nullak_factor(S)
        if not (r.is_valid_for(S) and r.length >= 2 * p - 1):
            failures += 1
    return 0, failures, failures == 0


# invariant theory of the Heisenberg group of order 27


def h3(copies: int = 1):
    return build_heisenberg_module(ModuleSpec.single(3, copies))


@check("noether.h3", "Noether number of the Heisenberg group of order 27 on V_w")
def _noether_h3(rng):
    r = noether_number(h3(), 11)
    gaps = {row.d: row.gap for row in r.rows}
    ok = r.value == 9 and r.certified and gaps[9] > 0 and gaps[10] == 0 and gaps[11] == 0
    return (
        {"beta": 9, "certified": True, "gap9": True, "gap10": 0, "gap11": 0},
        {"beta": r.value, "certified": r.certified, "gap9": gaps[9] > 0, "gap10": gaps[10], "gap11": gaps[11]},
        ok,
    )


@check("noether.h3.obstruction", "transfer of x^6 y^3 lies outside the subalgebra generated in degree <= 8")
def _obstruction(rng):
    G = h3()
    x, y, z = (Polynomial.variable(3, 3, i) for i in range(3))
    tau = transfer(x**6 * y**3, G.A, G)
    inside = tau in subalgebra_slice(G, 9, 8)
    return {"in_subalgebra": False}, {"in_subalgebra": inside}, not inside


@check("monomials.h3.irreducible", "irreducible A-invariant monomials of degree <= 3 on V_w")
def _irreducible(rng):
    G = h3()
    names = ["x", "y", "z"]
    # A acts diagonally, so its invariants of degree d are spanned by monomials
    found = []
    eng = engine(G.A)
    for d in range(1, 4):
        inv = {tuple(b.terms)[0] for b in invariant_basis(G.A, d).basis()}
        prod = set(eng.product_slice(2, d).rows)
        found += sorted(inv - prod, reverse=True)
    by_weight = [m for d in range(1, 4) for m in monomials_of_degree(3, d) if G.is_A_invariant(m)]
    by_weight = [m for m in by_weight if not any(
        u != m and any(u) and G.is_A_invariant(u) and all(a <= b for a, b in zip(u, m))
        for u in by_weight
    )]
    fmt = sorted(Polynomial.monomial(m, 3).format(names) for m in found)
    expected = sorted(["x*y*z", "x^3", "y^3", "z^3"])
    return expected, fmt, fmt == expected and set(by_weight) == set(found)


@check("polar.identity", "polarization identity on three copies of V_w")
def _polar_identity(rng):
    G = h3(3)
    V = lambda k, j: Polynomial.variable(G.nvars, 3, G.variable(1, k, j))
    x, y, z = (lambda j: V(0, j)), (lambda j: V(1, j)), (lambda j: V(2, j))
    lhs = (
        polarize(G, x(1) * y(1) * z(3), 1, 1, 2)
        + polarize(G, x(1) * y(2) * z(2), 1, 2, 3)
        + polarize(G, x(3) * y(2) * z(3), 1, 3, 1)
    )
    rhs = x(1) * y(2) * z(3) * 3 + orbit_sum(x(3) * y(2) * z(1), G.A, G)
    names = ["x1", "y1", "z1", "x2", "y2", "z2", "x3", "y3", "z3"]
    return rhs.format(names), lhs.format(names), lhs == rhs


# abelian groups

_ABELIAN = {"c3": (3,), "c3x3": (3, 3), "c2x2x2": (2, 2, 2)}


def _beta_abelian(orders):
    def run(rng):
        A = AbelianGroup(orders)
        r = noether_number(all_characters_module(A), A.order)
        D = davenport(A)
        return {"beta": D, "certified": True}, {"beta": r.value, "certified": r.certified}, r.value == D and r.certified

    return run


for _name, _orders in _ABELIAN.items():
    check(f"noether.abelian.{_name}", "Noether number of an abelian group equals its Davenport constant")(
        _beta_abelian(_orders)
    )


@check("noether-k.c3x3", "beta_3(C_3^2) = D_3(C_3^2) on the module of all nontrivial characters")
def _beta3(rng):
    A = _cyc(3, 3)
    D = davenport(A)
    r = noether_k(all_characters_module(A), 3, 3 * D)
    return {"beta_3": 11, "certified": True}, {"beta_3": r.value, "certified": r.certified}, r.value == 11 and r.certified


@check("reduction.h3", "beta(G,V) <= beta_{beta(G/N)}(N,V) with N = A, then <= beta_3(C_3^2)")
def _reduction(rng):
    G = h3()
    beta = noether_number(G, 11).value
    restricted = noether_k(G.A, 3, 12, bound=davenport(_cyc(3, 3))).value
    A = _cyc(3, 3)
    b3 = noether_k(all_characters_module(A), 3, 12).value
    ok = beta <= restricted <= b3 and beta == 9 and b3 == 11
    return (
        {"beta": 9, "chain": "beta <= beta_3(A,V) <= 11"},
        {"beta": beta, "beta_3_restricted": restricted, "beta_3_c3x3": b3},
        ok,
    )


# property suites

MIXED = ModuleSpec(3, ((1, 0), (0, 1)), (1,))


def _random_poly(rng, G, monos, terms=3):
    f = Polynomial.zero(G.nvars, G.p)
    for m in rng.sample(monos, min(terms, len(monos))):
        f = f + Polynomial.monomial(m, G.p, rng.choice([1, 2, -1, 3]))
    return f


def _a_invariant_monomials(G, d):
    return [m for m in monomials_of_degree(G.nvars, d) if G.is_A_invariant(m)]


@check("property.trukk", "exchange moves between A-invariant factors stay in the Hilbert ideal, 50 trials")
def _trukk(rng):
    G = build_heisenberg_module(MIXED)
    pools = {d: _a_invariant_monomials(G, d) for d in range(1, 5)}
    failures = 0
    for _ in range(50):
        d1 = rng.randint(1, 4)
        d2 = rng.randint(1, 8 - d1) if d1 < 4 else rng.randint(1, 4)
        u1 = _random_poly(rng, G, pools[d1], rng.randint(1, 3))
        u2 = _random_poly(rng, G, pools[min(d2, 4)], rng.randint(1, 3))
        g = rng.choice(G.b_powers)
        if not in_hilbert_ideal(trukk_difference(G, [u1, u2], g), G):
            failures += 1
    return 0, failures, failures == 0


@check("property.b1", "products of D(G/N) = 5 invariants of <c> lie in the Hilbert ideal, 20 trials")
def _b1(rng):
    G = build_heisenberg_module(MIXED)
    pools = {
        d: [m for m in monomials_of_degree(G.nvars, d) if G.weight(m).coords[1] == 0] for d in (1, 2, 3)
    }
    failures = 0
    for _ in range(20):
        f = Polynomial.constant(G.nvars, 3, 1)
        for _ in range(5):
            f = f * _random_poly(rng, G, pools[rng.randint(1, 3)], rng.randint(1, 2))
        for d in range(f.degree() + 1):
            part = f.homogeneous_component(d)
            if part and not in_hilbert_ideal(part, G):
                failures += 1
                break
    return 0, failures, failures == 0


@check("property.semi", "decomposition into semi-invariants u = sum_chi tau_chi(u), 100 trials")
def _semi(rng):
    G = build_heisenberg_module(MIXED)
    chars = G.characters_mod_A()
    pools = {d: _a_invariant_monomials(G, d) for d in (1, 2, 3)}
    failures = 0
    for _ in range(100):
        u = _random_poly(rng, G, pools[rng.randint(1, 3)], rng.randint(1, 4))
        parts = [semi_projection(chi, u) for chi in chars]
        total = Polynomial.zero(G.nvars, 3)
        for part in parts:
            total = total + part
        semi = all(act(G.b, part) == part.scale(chi(G.b)) for chi, part in zip(chars, parts))
        if total != u or not semi:
            failures += 1
    return 0, failures, failures == 0


@check("property.polar", "polarization commutes with the group action, 100 trials")
def _polar_equivariance(rng):
    G = h3(2)
    failures = 0
    for _ in range(100):
        d = rng.randint(1, 4)
        monos = list(monomials_of_degree(G.nvars, d))
        f = _random_poly(rng, G, monos, rng.randint(1, 4))
        g = rng.choice(G.elements)
        s, t = rng.choice([(1, 2), (2, 1), (1, 1), (2, 2)])
        if polarize(G, act(g, f), 1, s, t) != act(g, polarize(G, f, 1, s, t)):
            failures += 1
    return 0, failures, failures == 0


@check("property.leibniz", "polarization maps the Hilbert ideal into itself, 30 trials")
def _leibniz(rng):
    G = h3(2)
    inv3 = invariant_basis(G, 3).basis()
    failures = 0
    for _ in range(30):
        f = rng.choice(inv3)
        h = _random_poly(rng, G, list(monomials_of_degree(G.nvars, rng.randint(1, 3))), 2)
        s, t = rng.choice([(1, 2), (2, 1)])
        if not in_hilbert_ideal(polarize(G, f * h, 1, s, t), G):
            failures += 1
    return 0, failures, failures == 0


@check("property.rewrite", "homologous rewriting on two copies of V_w, 100 trials")
def _rewrite(rng):
    G = h3(2)
    failures = 0
    for n in range(100):
        deg = 12 if n % 2 else 10
        while True:
            e = [0] * 6
            for _ in range(deg):
                e[rng.randrange(6)] += 1
            m = tuple(e)
            if deg == 10 or G.is_A_invariant(m):
                break
        picks = rng.sample([i for i in range(6) for _ in range(m[i])], 3)
        v, vp = [0] * 6, [0] * 6
        for i in picks:
            v[i] += 1
            vp[3 * (i // 3) + rng.randrange(3)] += 1
        r = homologous_rewrite(G, m, tuple(v), tuple(vp))
        ok = G.homologous(r.monomial, m) and all(a <= b for a, b in zip(vp, r.monomial))
        if not ok:
            failures += 1
    return 0, failures, failures == 0


def _b_beta_modules():
    return {
        "h3": h3(),
        "h3x2": h3(2),
        "mixed": build_heisenberg_module(MIXED),
        "c3": diagonal_module(_cyc(3), [(1,)]),
        "c3x3": all_characters_module(_cyc(3, 3)),
        "c2x2x2": all_characters_module(_cyc(2, 2, 2)),
    }


@check("property.b-beta", "beta(G,V) <= b(G,V) + 1 on every computed module")
def _b_beta(rng):
    computed = {}
    ok = True
    for name, G in _b_beta_modules().items():
        top = top_degree_coinvariants(G, 16)
        beta = noether_number(G, top.value + 2).value
        computed[name] = {"beta": beta, "b": top.value, "b_exact": top.exact}
        ok &= top.exact and beta <= top.value + 1
    return "beta <= b + 1", computed, ok


# runner


def select(pattern: str | None) -> list[str]:
    ids = list(CHECKS)
    if pattern is None:
        return ids
    chosen = [i for i in ids if fnmatch.fnmatchcase(i, pattern) or i == pattern]
    if not chosen:
        raise UnknownCheck(f"unknown check id {pattern!r}")
    return chosen


def run_check(check_id: str, seed: int = 0) -> CheckRecord:
    c = CHECKS[check_id]
    rng = random.Random(f"{seed}:{check_id}")
    t0 = time.perf_counter()
    try:
        expected, computed, passed = c.run(rng)
        err = None
    except Exception as exc:  # a crashing check is a failing check
        expected, computed, passed, err = None, None, False, f"{type(exc).__name__}: {exc}"
    ms = round((time.perf_counter() - t0) * 1000, 1)
    return CheckRecord(check_id, c.anchor, _jsonable(expected), _jsonable(computed), bool(passed), ms, err)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def _run_one(args):
    return run_check(*args)


def run_suite(pattern: str | None = None, jobs: int = 1, seed: int = 0) -> VerificationReport:
    ids = select(pattern)
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_one, [(i, seed) for i in ids]))
    else:
        records = [run_check(i, seed) for i in ids]
    order = {i: n for n, i in enumerate(ids)}
    records.sort(key=lambda r: order[r.id])
    return VerificationReport(records)
