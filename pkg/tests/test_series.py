import random

import pytest

from hilbseries.poly import PolyRing
from hilbseries.rationals import Q, binomial
from hilbseries.series import (
    PolyCoeffs,
    RATIONALS,
    SeriesError,
    TruncatedSeries,
    binomial_series,
    geometric,
    lagrange_transform,
)

rng = random.Random(20240817)


def random_series(order, unit_constant=False):
    coeffs = [Q(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(order + 1)]
    if unit_constant:
        coeffs[0] = Q(1)
    return TruncatedSeries(RATIONALS, coeffs, order)


def test_ring_axioms_random():
    for _ in range(25):
        a = random_series(7)
        b = random_series(7)
        c = random_series(7)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_order_mixing_is_an_error():
    a = TruncatedSeries(RATIONALS, [1, 2], 1)
    b = TruncatedSeries(RATIONALS, [1, 2, 3], 2)
    with pytest.raises(SeriesError):
        a + b
    with pytest.raises(SeriesError):
        a * b


def test_too_many_coefficients_is_an_error():
    with pytest.raises(SeriesError):
        TruncatedSeries(RATIONALS, [1, 2, 3], 1)


def test_inverse_and_division():
    for _ in range(10):
        a = random_series(6, unit_constant=True)
        assert a * a.inverse() == TruncatedSeries.one(RATIONALS, 6)
        b = random_series(6, unit_constant=True)
        assert (a / b) * b == a


def test_log_exp_roundtrip():
    for _ in range(10):
        a = random_series(6, unit_constant=True)
        assert a.log().exp() == a
        z = random_series(6)
        z.coeffs[0] = Q(0)
        assert z.exp().log() == z


def test_pow_rational_exponent():
    a = random_series(6, unit_constant=True)
    half = a.pow(Q(1, 2))
    assert half * half == a
    assert a.pow(Q(-1)) == a.inverse()


def test_compose_and_reverse():
    ident = TruncatedSeries.identity(RATIONALS, 6)
    for _ in range(10):
        inner = random_series(6)
        inner.coeffs[0] = Q(0)
        inner.coeffs[1] = Q(rng.randint(1, 3))
        assert inner.compose(inner.reverse()) == ident
        assert inner.reverse().compose(inner) == ident


def test_reverse_requires_unit_linear_term():
    a = TruncatedSeries(RATIONALS, [0, 0, 1], 2)
    with pytest.raises(SeriesError):
        a.reverse()


def test_derivative_drops_one_order():
    a = TruncatedSeries(RATIONALS, [5, 1, 2, 3], 3)
    d = a.derivative()
    assert d.order == 2
    assert d.coeffs == [Q(1), Q(4), Q(9)]
    assert a.integrate().order == 4
    # antiderivative of the derivative recovers a up to the constant
    assert a.derivative().integrate() + TruncatedSeries.constant(
        RATIONALS, Q(5), 3
    ) == a


def test_geometric_series():
    g = geometric(RATIONALS, 5)
    one = TruncatedSeries.one(RATIONALS, 5)
    x = TruncatedSeries.identity(RATIONALS, 5)
    assert g * (one - x) == one


def test_lagrange_transform_against_definition():
    # f_n = [x^n] psi phi^n computed by brute force
    for _ in range(8):
        psi = random_series(6, unit_constant=True)
        phi = random_series(6, unit_constant=True)
        got = lagrange_transform(psi, phi)
        for n in range(7):
            prod = psi
            for _ in range(n):
                prod = prod * phi
            assert got.coeffs[n] == prod.coeffs[n]


def test_lagrange_transform_binomial_example():
    # psi = 1, phi = (1+x)^a gives f_n = binom(a n, n)
    N = 7
    one = TruncatedSeries.one(RATIONALS, N)
    x = TruncatedSeries.identity(RATIONALS, N)
    for a in (1, 2, 5):
        f = lagrange_transform(one, (one + x) ** a)
        for n in range(N + 1):
            assert f.coeffs[n] == binomial(a * n, n)


def test_binomial_series_values():
    g0 = binomial_series("g", 0, 6)
    assert g0 == geometric(RATIONALS, 6)
    # both closed forms depend only on r^2
    assert binomial_series("f", 2, 8) == binomial_series("f", -2, 8)
    assert binomial_series("g", 3, 8) == binomial_series("g", -3, 8)


def test_binomial_series_substitution_identity():
    # g_r(z) = 1 + u and f_r(z) = (1+u)^(r^2)/(1+r^2 u) under
    # z = u (1+u)^(r^2-1)
    N = 8
    one = TruncatedSeries.one(RATIONALS, N)
    u = TruncatedSeries.identity(RATIONALS, N)
    for r in range(-3, 4):
        m = r * r - 1
        z_of_u = u * (one + u) ** m
        assert binomial_series("g", r, N).compose(z_of_u) == one + u
        rhs = (one + u) ** (r * r) * (one + u.scale(r * r)).inverse()
        assert binomial_series("f", r, N).compose(z_of_u) == rhs


def test_polynomial_coefficient_series():
    ring = PolyRing("r")
    pc = PolyCoeffs(ring)
    r = ring.gens()[0]
    a = TruncatedSeries(pc, [ring.one(), r, r * r], 2)
    sq = a * a
    assert sq.coeffs[1] == 2 * r
    assert sq.coeffs[2] == 3 * r * r
    assert a.inverse() * a == TruncatedSeries.one(pc, 2)
