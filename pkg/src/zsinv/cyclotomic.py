"""Exact arithmetic in Q(w), w a primitive p-th root of unity, p prime.

Elements are stored as integer numerators on the basis 1, w, ..., w^(p-2)
over one positive common denominator, reduced by their gcd.  Reduction uses
w^(p-1) = -(1 + w + ... + w^(p-2)).
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from sympy import isprime


class ConductorMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def _check_prime(p: int) -> int:
    if not isprime(p):
        raise ValueError(f"conductor {p} is not prime")
    return p


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = den
    for x in nums:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        nums = [x // g for x in nums]
        den //= g
    return tuple(nums), den


class Cyclotomic:
    __slots__ = ("p", "nums", "den", "_hash")

    def __init__(self, p: int, nums=None, den: int = 1):
        _check_prime(p)
        self.p = p
        if nums is None:
            nums = (0,) * (p - 1)
        if len(nums) != p - 1:
            raise ValueError(f"expected {p - 1} coefficients")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.nums, self.den = _normalize(list(nums), den)
        self._hash = None

    @classmethod
    def _raw(cls, p: int, nums: tuple[int, ...], den: int) -> Cyclotomic:
        obj = object.__new__(cls)
        obj.p = p
        obj.nums = nums
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_full(cls, p: int, full, den: int = 1) -> Cyclotomic:
        """From coefficients of 1, w, ..., w^(p-1) (length p)."""
        top = full[p - 1]
        return cls(p, [full[i] - top for i in range(p - 1)], den)

    @classmethod
    def rational(cls, p: int, q) -> Cyclotomic:
        q = Fraction(q)
        nums = [0] * (p - 1)
        nums[0] = q.numerator
        return cls(p, nums, q.denominator)

    @classmethod
    def from_fractions(cls, p: int, coeffs) -> Cyclotomic:
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(p, [int(c * den) for c in coeffs], den)

    @classmethod
    def zero(cls, p: int) -> Cyclotomic:
        return cls(p)

    @classmethod
    def one(cls, p: int) -> Cyclotomic:
        return cls.rational(p, 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def __bool__(self) -> bool:
        return any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def _coerce(self, other) -> Cyclotomic:
        if isinstance(other, Cyclotomic):
            if other.p == self.p:
                return other
            if other.is_rational():
                return Cyclotomic.rational(self.p, other.to_fraction())
            if self.is_rational():
                return NotImplemented
            raise ConductorMismatch(f"conductors {self.p} and {other.p}")
        if isinstance(other, (int, Rational)):
            return Cyclotomic.rational(self.p, other)
        return NotImplemented

    def _lift(self, other):
        """Return (a, b) over a common conductor."""
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, Cyclotomic) and self.is_rational():
                return Cyclotomic.rational(other.p, self.to_fraction()), other
            return None
        return self, o

    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            nums = [x + y for x, y in zip(a.nums, b.nums)]
            return Cyclotomic(a.p, nums, a.den)
        nums = [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)]
        return Cyclotomic(a.p, nums, a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self.p, tuple(-x for x in self.nums), self.den)

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        p = a.p
        if b.is_rational():
            c = b.nums[0]
            return Cyclotomic(p, [x * c for x in a.nums], a.den * b.den)
        if a.is_rational():
            c = a.nums[0]
            return Cyclotomic(p, [x * c for x in b.nums], a.den * b.den)
        full = [0] * p
        for i, x in enumerate(a.nums):
            if x:
                for j, y in enumerate(b.nums):
                    if y:
                        full[(i + j) % p] += x * y
        return Cyclotomic.from_full(p, full, a.den * b.den)

    __rmul__ = __mul__

    def mul_root(self, e: int) -> Cyclotomic:
        """Multiply by ``w^e``."""
        p = self.p
        e %= p
        if e == 0 or not any(self.nums):
            return self
        full = [0] * p
        for i, x in enumerate(self.nums):
            full[(i + e) % p] = x
        top = full[p - 1]
        return Cyclotomic._raw(p, tuple(full[i] - top for i in range(p - 1)), self.den)

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic(self.p, [self.den] + [0] * (self.p - 2), self.nums[0])
        inv = _poly_inverse_mod_cyclotomic([Fraction(x, self.den) for x in self.nums], self.p)
        return Cyclotomic.from_fractions(self.p, inv)

    def __truediv__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> Cyclotomic:
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclotomic.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            if other.p != self.p:
                return self.is_rational() and other.is_rational() and self.to_fraction() == other.to_fraction()
            return self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.nums[0], self.den))
            else:
                self._hash = hash((self.p, self.nums, self.den))
        return self._hash

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if i == 0:
                terms.append(cs)
            else:
                mon = "w" if i == 1 else f"w^{i}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append(f"-{mon}")
                else:
                    terms.append(f"{cs}*{mon}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self) -> str:
        return f"Cyclotomic({self.p}, {self})"


def root_of_unity(p: int, e: int = 1) -> Cyclotomic:
    """``w^(e mod p)`` in canonical form."""
    _check_prime(p)
    full = [0] * p
    full[e % p] = 1
    return Cyclotomic.from_full(p, full)


def _poly_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
    return q, a


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_inverse_mod_cyclotomic(a: list[Fraction], p: int) -> list[Fraction]:
    """Inverse of ``a(w)`` by the extended Euclidean algorithm against the
    p-th cyclotomic polynomial."""
    phi = [Fraction(1)] * p
    r0, r1 = phi, _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    # r1 is a nonzero constant since phi is irreducible
    c = r1[0]
    inv = [x / c for x in s1]
    _, inv = _poly_divmod(inv, phi)
    inv = inv + [Fraction(0)] * (p - 1 - len(inv))
    return inv[: p - 1]


_TERM = re.compile(r"^\s*(?:([-+]?\d+(?:/\d+)?)\s*\*?\s*)?(?:[wω](?:\^(\d+))?)?\s*$")


def parse_cyclotomic(text: str, p: int) -> Cyclotomic:
    """Parse ``"a0 + a1*w + a2*w^2"`` (rationals ``n/d``) at conductor ``p``."""
    s = text.replace(" - ", " + -").replace("−", "-")
    if not s.strip():
        raise ValueError("empty cyclotomic literal")
    full = [Fraction(0)] * p
    for raw in s.split("+"):
        term = raw.strip()
        if not term:
            raise ValueError(f"malformed cyclotomic literal {text!r}")
        neg = False
        if term.startswith("-") and not re.match(r"^-\d", term):
            neg, term = True, term[1:].strip()
        m = _TERM.match(term)
        if not m or term == "":
            raise ValueError(f"malformed term {raw!r} in {text!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        has_w = "w" in term or "ω" in term
        power = int(m.group(2)) if m.group(2) else (1 if has_w else 0)
        full[power % p] += -coeff if neg else coeff
    den = 1
    for c in full:
        den = den * c.denominator // gcd(den, c.denominator)
    return Cyclotomic.from_full(p, [int(c * den) for c in full], den)
