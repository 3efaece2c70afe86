"""The twelve acceptance criteria, each with its time limit.

Every criterion runs its suite checks, prints one PASS/FAIL line and fails
the test on a wrong value or an exceeded limit.
"""
import time

import pytest

from zsinv.suite import run_check, select

CRITERIA = [
    (1, "Davenport constants by exhaustive search", ["davenport.*"], 60),
    (2, "D_k(C_p x C_p) = kp + p - 1", ["davenport-k.*"], 600),
    (3, "zero-sum free sequences of length p-1 over C_p", ["lemma.zsf"], 30),
    (4, "short zero-sum subsequences over C_3^2 and C_5^2", ["lemma.eta.*"], 60),
    (5, "Cauchy-Davenport bound, 10^4 random sequences", ["lemma.cd"], 30),
    (6, "separated and zero-rich factorizations", ["lemma.separ", "lemma.nullak"], 120),
    (7, "beta(H_3, V_w) = 9, certified to degree 11", ["noether.h3"], 300),
    (8, "degree-8 obstruction and irreducible A-invariant monomials",
     ["noether.h3.obstruction", "monomials.h3.irreducible"], 60),
    (9, "polarization identity on three copies of V_w", ["polar.identity"], 10),
    (10, "beta(A) = D(A) for C_3, C_3^2, C_2^3", ["noether.abelian.*"], 120),
    (11, "beta_3(C_3^2) = 11 and the reduction chain for H_3", ["noether-k.c3x3", "reduction.h3"], 300),
    (12, "property suites", ["property.*"], 300),
]


@pytest.mark.parametrize("number, title, patterns, limit", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, title, patterns, limit, capsys):
    ids = [i for pat in patterns for i in select(pat)]
    t0 = time.perf_counter()
    records = [run_check(i, seed=0) for i in ids]
    elapsed = time.perf_counter() - t0
    failed = [r for r in records if not r.passed]
    ok = not failed and elapsed < limit
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\n{status} criterion {number:2d}: {title} ({len(records)} checks, {elapsed:.1f}s / limit {limit}s)")
        for r in failed:
            print(f"     {r.id}: expected {r.expected}, computed {r.computed}, error {r.error}")
    assert not failed, [r.id for r in failed]
    assert elapsed < limit
