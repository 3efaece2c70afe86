from zsinv.cyclotomic import root_of_unity
from zsinv.polynomial import Polynomial, mono_key, monomials_of_degree


def xyz(p=3):
    return [Polynomial.variable(3, p, i) for i in range(3)]


def test_arithmetic():
    x, y, z = xyz()
    f = (x + y) ** 2
    assert f == x * x + 2 * x * y + y * y
    assert (f - f).is_zero()
    assert f.degree() == 2 and f.is_homogeneous()
    assert not (f + x).is_homogeneous()
    assert (f + x).homogeneous_component(1) == x


def test_monomial_counts():
    from math import comb

    for n in (1, 2, 3, 4):
        for d in range(6):
            ms = list(monomials_of_degree(n, d))
            assert len(ms) == comb(n + d - 1, d) == len(set(ms))


def test_ordering_is_graded():
    x, y, z = xyz()
    f = x**3 + x * y + z
    assert f.leading_monomial() == (3, 0, 0)
    keys = [mono_key(m) for m in f.monomials()]
    assert keys == sorted(keys, reverse=True)


def test_derivative_and_scalars():
    x, y, z = xyz()
    w = root_of_unity(3)
    f = x**3 * y + (x * z).scale(w)
    assert f.derivative(0) == 3 * x * x * y + z.scale(w)
    assert f.derivative(1) == x**3


def test_format():
    x, y, z = xyz()
    assert (x * y - z**2).format(["x", "y", "z"]) == "x*y - z^2"
