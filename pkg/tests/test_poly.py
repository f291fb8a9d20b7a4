import pytest

from hilbseries.poly import PolyRing
from hilbseries.rationals import Q


def test_basic_arithmetic():
    ring = PolyRing("x", "y")
    x, y = ring.gens()
    p = (x + y) ** 2
    assert p == x * x + 2 * x * y + y * y
    assert p - p == ring.zero()
    assert p * 0 == ring.zero()


def test_mixed_scalar_operations():
    ring = PolyRing("x")
    (x,) = ring.gens()
    assert 1 + x == x + 1
    assert 2 * x == x * 2
    assert (1 - x) + (x - 1) == ring.zero()
    assert (x + 1) / 2 == x * Q(1, 2) + Q(1, 2)


def test_evaluation():
    ring = PolyRing("x", "y")
    x, y = ring.gens()
    p = x ** 2 * y - 3 * y + 1
    assert p(Q(2), Q(5)) == 4 * 5 - 15 + 1


def test_permute_vars_symmetry():
    ring = PolyRing("a", "b", "c")
    a, b, c = ring.gens()
    p = a ** 2 * b
    assert p.permute_vars((1, 2, 0)) == b ** 2 * c
    s = a + b + c
    assert s.permute_vars((2, 0, 1)) == s


def test_subs_poly():
    ring = PolyRing("r")
    (r,) = ring.gens()
    other = PolyRing("t")
    (t,) = other.gens()
    p = r ** 2 - r + 1
    assert p.subs_poly("r", t + 1) == t ** 2 + t + 1


def test_division_by_nonconstant_fails():
    ring = PolyRing("x")
    (x,) = ring.gens()
    with pytest.raises(ZeroDivisionError):
        (x + 1) / x


def test_degree_and_coefficient():
    ring = PolyRing("x", "y")
    x, y = ring.gens()
    p = x ** 3 + x * y
    assert p.degree() == 3
    assert p.degree("y") == 1
    assert p.coefficient((1, 1)) == 1
    assert p.coefficient((0, 2)) == 0
