import pytest

from hilbseries.localization import (
    BundleSpec,
    ToricSurface,
    bundle,
    chern_number_series,
    chi_det,
    chi_series,
    conjugate,
    euler_number_oracle,
    hilb_fixed_points,
    partitions,
    tangent_weights,
)
from hilbseries.rationals import Q, binomial
from hilbseries.surface import preset


def test_partitions_and_conjugate():
    assert len(partitions(6)) == 11
    assert conjugate((4, 2, 1)) == (3, 2, 1, 1)
    assert conjugate(conjugate((5, 3, 3, 1))) == (5, 3, 3, 1)


def test_fixed_point_counts_match_euler_product():
    # the number of monomial-ideal fixed points of Hilb^n equals the
    # coefficient of the standard product formula with e = e(S)
    for name in ("p2", "p1xp1"):
        surf = ToricSurface(name)
        expected = euler_number_oracle(surf.euler, 6)
        for n in range(7):
            assert len(hilb_fixed_points(surf, n)) == expected[n]


def test_tangent_weights_count():
    surf = ToricSurface("p2")
    for n in range(4):
        for fp in hilb_fixed_points(surf, n):
            assert len(tangent_weights(surf, fp)) == 2 * n


def test_chi_of_line_bundle_is_binomial():
    # chi(det L^[n]) = binom(chi(L), n)
    for d in (0, 1, 2, 3):
        spec = bundle("p2", [(1, d)])
        chi_l = Q((d + 1) * (d + 2), 2)
        for n in range(1, 5):
            assert chi_det("p2", spec, n) == binomial(chi_l, n)
    spec = bundle("p1xp1", [(1, (1, 1))])
    for n in range(1, 5):
        assert chi_det("p1xp1", spec, n) == binomial(4, n)


def test_chi_series_rank0():
    # a rank-0 bundle with trivial determinant: chi(O_Hilb) = 1 per n
    spec = bundle("p2", [(1, 1), (-1, 1)])
    series = chi_series("p2", spec, 4)
    assert all(c == 1 for c in series.coeffs)


def test_chi_seed_independence():
    spec = bundle("p1xp1", [(1, (1, 2)), (1, (0, 1))])
    assert chi_series("p1xp1", spec, 3, seed=0) == chi_series(
        "p1xp1", spec, 3, seed=11
    )


def test_bundle_spec_rank_and_det():
    spec = bundle("p2", [(1, 2), (-1, 1), (1, 0)])
    assert spec.rank == 1
    assert spec.det_degree() == 1
    spec = bundle("p1xp1", [(1, (1, 2)), (-1, (1, 0))])
    assert spec.rank == 0
    assert spec.det_degree() == (0, 2)


def test_chern_number_oracle_catalan():
    # the K-theory resolution of a point's structure sheaf reproduces
    # the alternating Catalan numbers through the oracle alone
    sky = bundle("p2", [(1, 0), (-1, -1), (-1, -1), (1, -2)])
    series = chern_number_series("p2", sky, 4)
    assert [int(c) for c in series.coeffs] == [1, -1, 2, -5, 14]


def test_unknown_surface_rejected():
    with pytest.raises(ValueError):
        ToricSurface("p3")
