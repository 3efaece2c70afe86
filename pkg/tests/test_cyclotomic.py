from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsinv.cyclotomic import ConductorMismatch, Cyclotomic, parse_cyclotomic, root_of_unity


def test_roots_of_unity():
    assert root_of_unity(3, 0) == Cyclotomic.one(3)
    assert root_of_unity(3, 1) * root_of_unity(3, 2) == Cyclotomic.one(3)
    total = Cyclotomic.zero(5)
    for e in range(5):
        total = total + root_of_unity(5, e)
    assert total.is_zero()
    assert root_of_unity(5, 7) == root_of_unity(5, 2)
    with pytest.raises(ValueError):
        root_of_unity(4, 1)


def test_field_ops():
    w = root_of_unity(3)
    one = Cyclotomic.one(3)
    assert (one - w) * (one - w**2) == Cyclotomic.rational(3, 3)
    assert root_of_unity(5).inverse() == root_of_unity(5, 4)
    with pytest.raises(ZeroDivisionError):
        Cyclotomic.zero(5).inverse()
    with pytest.raises(ConductorMismatch):
        root_of_unity(3) + root_of_unity(5)


def test_rational_embedding():
    x = Cyclotomic.rational(7, Fraction(2, 3))
    assert x.is_rational() and x.to_fraction() == Fraction(2, 3)
    assert x * 3 == Cyclotomic.rational(7, 2)
    assert not root_of_unity(7).is_rational()


def test_text_round_trip():
    x = Cyclotomic.from_fractions(5, [Fraction(1, 2), -1, 0, Fraction(3, 4)])
    assert parse_cyclotomic(str(x), 5) == x
    assert parse_cyclotomic("1 + w", 3) == -root_of_unity(3, 2)


def elements(p):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(coeff, min_size=p - 1, max_size=p - 1).map(lambda cs: Cyclotomic.from_fractions(p, cs))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: st.tuples(elements(p), elements(p), elements(p))))
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + (-x)).is_zero()
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if not x.is_zero():
        assert x * x.inverse() == Cyclotomic.one(x.p)
        assert (y / x) * x == y


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: elements(p)), st.integers(-20, 20))
def test_mul_root_matches_multiplication(x, e):
    assert x.mul_root(e) == x * root_of_unity(x.p, e)
    assert parse_cyclotomic(str(x), x.p) == x
