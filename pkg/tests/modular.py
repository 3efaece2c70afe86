"""Independent dimension oracle: the same graded spaces computed over the
prime field F_q with q = 1 mod p, w sent to a p-th root of unity mod q.

Shares nothing with the exact engine beyond the group elements themselves.
"""
from itertools import combinations_with_replacement

Q = 1_000_003  # prime, 1 mod 3


def root_mod_q(p: int, q: int = Q) -> int:
    assert (q - 1) % p == 0
    for g in range(2, q):
        w = pow(g, (q - 1) // p, q)
        if w != 1:
            return w
    raise AssertionError


def monomials(n: int, d: int):
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for i in combo:
            m[i] += 1
        yield tuple(m)


def rank(rows, q: int = Q) -> int:
    """Rank of sparse row dicts over F_q."""
    pivots: dict = {}
    r = 0
    for row in rows:
        row = {k: v % q for k, v in row.items() if v % q}
        while row:
            lead = max(row)
            if lead not in pivots:
                inv = pow(row[lead], q - 2, q)
                pivots[lead] = {k: v * inv % q for k, v in row.items()}
                r += 1
                break
            c = row[lead]
            for k, v in pivots[lead].items():
                row[k] = (row.get(k, 0) - c * v) % q
                if not row[k]:
                    del row[k]
    return r


class ModularOracle:
    def __init__(self, elements, p: int, nvars: int, q: int = Q):
        self.elements = list(elements)
        self.p, self.n, self.q = p, nvars, q
        self.w = root_mod_q(p, q)
        self._inv: dict = {}

    def image(self, g, m):
        out = [0] * self.n
        e = 0
        for v, a in enumerate(m):
            out[g.perm[v]] += a
            e += a * g.exps[v]
        return pow(self.w, e % self.p, self.q), tuple(out)

    def invariants(self, d: int) -> list[dict]:
        if d not in self._inv:
            basis = []
            pivots: dict = {}
            for m in monomials(self.n, d):
                f: dict = {}
                for g in self.elements:
                    c, m2 = self.image(g, m)
                    f[m2] = (f.get(m2, 0) + c) % self.q
                f = {k: v for k, v in f.items() if v}
                if f and rank([*basis, f], self.q) > len(basis):
                    basis.append(f)
            self._inv[d] = basis
        return self._inv[d]

    @staticmethod
    def mul(f: dict, g: dict, q: int = Q) -> dict:
        out: dict = {}
        for a, x in f.items():
            for b, y in g.items():
                m = tuple(i + j for i, j in zip(a, b))
                out[m] = (out.get(m, 0) + x * y) % q
        return out

    def product_dim(self, d: int) -> int:
        rows = []
        for e in range(1, d // 2 + 1):
            for f in self.invariants(e):
                for g in self.invariants(d - e):
                    rows.append(self.mul(f, g, self.q))
        return rank(rows, self.q)

    def hilbert_dim(self, d: int) -> int:
        rows = []
        for e in range(1, d + 1):
            for f in self.invariants(e):
                for m in monomials(self.n, d - e):
                    rows.append({tuple(i + j for i, j in zip(a, m)): v for a, v in f.items()})
        return rank(rows, self.q)

    def power_rows(self, j: int, d: int) -> list[dict]:
        """Spanning rows of the degree-d slice of (F[V]^G_+)^j."""
        if j == 1:
            return list(self.invariants(d)) if d > 0 else []
        rows = []
        for e in range(1, d):
            inv = self.invariants(e)
            if not inv:
                continue
            for f in self.power_rows(j - 1, d - e):
                for g in inv:
                    rows.append(self.mul(f, g, self.q))
        return rows

    def power_dim(self, j: int, d: int) -> int:
        return rank(self.power_rows(j, d), self.q)
