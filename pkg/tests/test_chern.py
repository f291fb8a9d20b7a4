from hilbseries.chern import (
    KClass,
    c2n_series,
    catalan_check,
    catalan_series,
    line_bundle,
    structure_sheaf_of_point,
)
from hilbseries.localization import bundle, chern_number_series
from hilbseries.rationals import Q, binomial, catalan
from hilbseries.surface import preset


def test_catalan_series_values():
    assert [int(c) for c in catalan_series(6).coeffs] == [1, -1, 2, -5, 14, -42, 132]
    assert all(
        catalan_series(6).coeffs[n] == (-1) ** n * catalan(n) for n in range(7)
    )


def test_skyscraper_catalan_both_surfaces():
    report = catalan_check(5)
    assert report["ok"], report


def test_pruning_is_an_optimization_only():
    model = preset("p2")
    u = structure_sheaf_of_point(model)
    assert c2n_series(u, 5, prune=True) == c2n_series(u, 5, prune=False)


def test_rank2_binomial_law():
    # rank 2, c1 = 0, c2 = m * pt has top Chern numbers binom(m, n)
    model = preset("p2")
    for m in range(5):
        u = KClass(2, model.divisor([0]), model.pt().scale(m))
        series = c2n_series(u, 6)
        for n in range(7):
            assert series.coeffs[n] == binomial(m, n)


def test_rank2_binomial_law_other_surface_and_c1():
    # at rank 2 the law is in c2(F) alone, whatever the surface and c1
    model = preset("p1xp1")
    for m in (0, 2, 3):
        u = KClass(2, model.divisor([1, -1]), model.pt().scale(m))
        series = c2n_series(u, 4)
        expected = [binomial(m, n) for n in range(5)]
        assert [series.coeffs[n] for n in range(5)] == expected


def test_line_bundle_top_chern_vanishes():
    # honest line bundles (rank 1, c2 = 0) have c_2n(L^[n]) = 0, n >= 1
    for name in ("p2", "p1xp1"):
        model = preset(name)
        div = [2] if name == "p2" else [1, 2]
        u = line_bundle(model, div)
        series = c2n_series(u, 5)
        assert series.coeffs[0] == 1
        assert all(series.coeffs[n] == 0 for n in range(1, 6))


def kclass_from_summands(model, summands):
    if model.name == "p2":
        c1 = [sum(s * d for s, d in summands)]
        sq = c1[0] * c1[0]
        csq = sum(s * d * d for s, d in summands)
    else:
        c1 = [
            sum(s * d[0] for s, d in summands),
            sum(s * d[1] for s, d in summands),
        ]
        sq = 2 * c1[0] * c1[1]
        csq = sum(s * 2 * d[0] * d[1] for s, d in summands)
    return KClass(
        sum(s for s, _ in summands), model.divisor(c1), model.pt().scale(Q(sq - csq, 2))
    )


def test_engine_matches_localization_oracle():
    # the operator calculus against Bott localization on toric sums of
    # line bundles, for ranks -1 through 3
    cases = [
        ("p2", [(-1, 0)]),
        ("p2", [(-1, 1)]),
        ("p2", [(1, 1), (-1, 0), (-1, 0)]),
        ("p2", [(1, 0), (1, 2)]),
        ("p2", [(1, 0), (1, 1), (1, 2)]),
        ("p2", [(1, 0), (-1, -1), (-1, -1), (1, -2)]),
        ("p1xp1", [(-1, (1, 0))]),
        ("p1xp1", [(1, (1, 1)), (-1, (0, 0)), (-1, (1, 0))]),
        ("p1xp1", [(1, (0, 1)), (1, (1, 0))]),
    ]
    for name, summands in cases:
        model = preset(name)
        engine = c2n_series(kclass_from_summands(model, summands), 3)
        oracle = chern_number_series(name, bundle(name, summands), 3)
        assert engine == oracle, (name, summands)
