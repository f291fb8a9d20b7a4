import pytest

from hilbseries.poly import PolyRing
from hilbseries.rationals import Q
from hilbseries.series import RATIONALS, TruncatedSeries, binomial_series
from hilbseries.universal import (
    FitError,
    change_of_variables,
    covariates,
    default_datapoints,
    fit_c2n,
    fit_chi,
    fit_symbolic,
    interpolate_poly,
    plane_class,
    printed_ab,
    printed_vwxyz,
    printed_w_of_z,
    quadric_class,
    small_rank_closed_forms,
    solve_exact,
    symbolic_change_of_variables,
    symmetry_checks,
    verify_C1_C4,
    verify_quot_equality,
)


def test_solve_exact_detects_inconsistency():
    rows = [[1, 0], [0, 1], [1, 1]]
    assert solve_exact(rows, [2, 3, 5]) == [Q(2), Q(3)]
    with pytest.raises(FitError):
        solve_exact(rows, [2, 3, 6])
    with pytest.raises(FitError):
        solve_exact([[1, 2], [2, 4]], [1, 2], names=("a", "b"))


def test_interpolate_poly_consistency_points():
    ring = PolyRing("t")
    points = [(Q(x), Q(x * x + 1)) for x in range(5)]
    p = interpolate_poly(ring, points, 2)
    assert p(Q(7)) == 50
    bad = points[:3] + [(Q(3), Q(0))]
    with pytest.raises(FitError):
        interpolate_poly(ring, bad, 2)


def test_datapoint_covariate_rank():
    # the five default datapoints must be linearly independent
    pts = default_datapoints(2)[:5]
    rows = [list(covariates(u)) for u in pts]
    solve_exact(rows, [0, 0, 0, 0, 0])


def test_fit_rejects_rank_mismatch():
    with pytest.raises(FitError):
        fit_c2n(2, 2, datapoints=[plane_class(3, 0, 0)])


def test_fit_matches_printed_tables():
    # fitted V..Z at several ranks against the published degree-3 table
    for s in (-2, 0, 1, 3):
        fitted = fit_c2n(s, 3)
        table = printed_vwxyz(s)
        for name in "VWXYZ":
            assert fitted[name].coeffs == table[name], (s, name)


def test_fit_is_datapoint_independent():
    # swapping in a different (still rank-5) datapoint set must give the
    # same universal series; the redundant rows are residual-checked
    pts = default_datapoints(2)
    pts[-1] = quadric_class(2, 1, 1, 1)
    pts[0] = plane_class(2, -1, 2)
    assert fit_c2n(2, 3, datapoints=pts) == fit_c2n(2, 3)


def test_fit_chi_matches_printed_ab():
    for r in (-2, 2, 3):
        got = fit_chi(r, 3)
        a, b = printed_ab(r, 3)
        assert got["A"] == a
        assert got["B"] == b
        assert got["g"] == binomial_series("g", r, 3)
        assert got["f"] == binomial_series("f", r, 3)


def test_change_of_variables_inverts():
    fitted = fit_c2n(3, 5)
    w_of_z, z_of_w, dzdw, phi = change_of_variables(fitted["V"], 3)
    ident = TruncatedSeries.identity(RATIONALS, 5)
    assert z_of_w.compose(w_of_z) == ident
    assert z_of_w * phi == ident


def test_verify_identities_paper_ab():
    for s in (-1, 0, 2, 3):
        report = verify_C1_C4(s, 4, ab_source="paper")
        assert report["ok"], report


def test_verify_identities_fitted_ab():
    report = verify_C1_C4(3, 5, ab_source="fit", ab_order=4)
    assert report["ok"], report
    assert report["identities"]["C3"]["order"] == 4


def test_verify_reports_mismatch_location():
    fitted = fit_c2n(2, 3)
    broken = dict(fitted)
    bad = list(fitted["W"].coeffs)
    bad[2] = bad[2] + 1
    broken["W"] = TruncatedSeries(RATIONALS, bad, 3)
    report = verify_C1_C4(2, 3, ab_source="paper", fitted=broken)
    assert not report["ok"]
    assert report["identities"]["C1"]["first_mismatch"]["order"] == 2


def test_symbolic_tables_match_printed():
    sym = fit_symbolic(3)
    for name in "VWXYZ":
        series = sym[name]
        for sval in range(-3, 7):
            table = printed_vwxyz(sval)
            got = [c(Q(sval - 1)) for c in series.coeffs]
            assert got == table[name], (name, sval)


def test_symbolic_w_of_z_low_order():
    w_of_z, _ = symbolic_change_of_variables(3)
    printed = printed_w_of_z(w_of_z.ring.polyring)
    assert w_of_z.coeffs == printed[:4]


def test_quot_equality_instances():
    for surface, r, det, nmax in (
        ("p2", 1, 1, 4),
        ("p2", 1, 2, 3),
        ("p2", 2, 1, 3),
        ("p1xp1", 1, (1, 1), 3),
    ):
        for n in range(1, nmax + 1):
            report = verify_quot_equality(surface, r, det, n)
            assert report["ok"], report


def test_small_rank_closed_forms():
    report = small_rank_closed_forms(5)
    assert report["ok"], report


def test_symmetry_checks():
    report = symmetry_checks(4, ab_order=3)
    assert report["ok"], report
