"""Exact Euler characteristics of determinants of tautological sheaves
on toric surfaces by fixed-point localization.

Torus fixed points of the n-points Hilbert scheme of a toric surface
are tuples of monomial ideals, one partition per chart.  The
holomorphic Lefschetz sum is evaluated after a generic one-parameter
specialization of the two torus weights, by exact Laurent-series
expansion in the parameter; the specialization and the equivariant
lift of the line bundles are both re-drawn/re-chosen and the results
compared, which guards against convention errors.
"""

from dataclasses import dataclass
from functools import lru_cache

from .rationals import Q, factorial
from .series import RATIONALS, TruncatedSeries


# -- partitions -------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n):
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        return ((),)
    out = []

    def rec(rem, maxpart, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rem, maxpart), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def cells(lam):
    return [(r, c) for r, row in enumerate(lam) for c in range(row)]

def conjugate(lam):
    if not lam:
        return ()
    out = []
    for c in range(lam[0]):
        out.append(sum(1 for row in lam if row > c))
    return tuple(out)

def arm(lam, r, c):
    return lam[r] - c - 1

def leg(lam, r, c):
    return conjugate(lam)[c] - r - 1


# -- toric surface data ----------------------------------------------

@dataclass(frozen=True)
class ToricChart:
    u: tuple  # weight of the first local coordinate, in (t1, t2)
    v: tuple  # weight of the second


class ToricSurface:
    """Chart weight tables and equivariant lifts for the two presets."""

    def __init__(self, name):
        self.name = name
        if name == "p2":
            self.charts = (
                ToricChart((1, 0), (0, 1)),
                ToricChart((-1, 0), (-1, 1)),
                ToricChart((0, -1), (1, -1)),
            )
            # fiber weight of O(1) at each fixed point
            self.unit_lift = ((0, 0), (1, 0), (0, 1))
            self.euler = 3
        elif name == "p1xp1":
            charts = []
            lifts = []
            for i in (0, 1):
                for j in (0, 1):
                    charts.append(ToricChart((1 - 2 * i, 0), (0, 1 - 2 * j)))
                    lifts.append((i, j))
            self.charts = tuple(charts)
            self.unit_lift = tuple(lifts)
            self.euler = 4
        else:
            raise ValueError("unsupported surface %r" % (name,))

    def line_lift(self, degree, shift=(0, 0)):
        """Fiber weights of the line bundle of the given (bi)degree at
        each fixed point; `shift` twists the lift by a global character
        (the answer must not depend on it)."""
        if self.name == "p2":
            d = degree
            return [
                (d * a + shift[0], d * b + shift[1]) for a, b in self.unit_lift
            ]
        d1, d2 = degree
        return [
            (d1 * i + shift[0], d2 * j + shift[1]) for i, j in self.unit_lift
        ]


@dataclass(frozen=True)
class BundleSpec:
    """F = sum of +/- line bundles in K-theory on a toric surface.

    Each entry is (sign, degree) with degree an int for the plane and an
    (int, int) pair for the quadric.
    """
    surface: str
    summands: tuple

    @property
    def rank(self):
        return sum(s for s, _ in self.summands)

    def det_degree(self):
        if self.surface == "p2":
            return sum(s * d for s, d in self.summands)
        d1 = sum(s * d[0] for s, d in self.summands)
        d2 = sum(s * d[1] for s, d in self.summands)
        return (d1, d2)


def bundle(surface, summands):
    return BundleSpec(surface, tuple((s, d) for s, d in summands))


# -- fixed points ------------------------------------------------------

def hilb_fixed_points(surface, n):
    """All chart-indexed partition tuples of total size n."""
    surf = surface if isinstance(surface, ToricSurface) else ToricSurface(surface)
    k = len(surf.charts)
    out = []

    def rec(i, rem, acc):
        if i == k - 1:
            for lam in partitions(rem):
                out.append(tuple(acc) + (lam,))
            return
        for size in range(rem + 1):
            for lam in partitions(size):
                acc.append(lam)
                rec(i + 1, rem - size, acc)
                acc.pop()

    rec(0, n, [])
    return out


def euler_number_oracle(e_surface, nmax):
    """Coefficients of prod (1-q^m)^(-e) up to q^nmax; standard product
    formula used only as a test oracle for fixed-point counts."""
    N = nmax
    one = TruncatedSeries.one(RATIONALS, N)
    prod = one
    for m in range(1, N + 1):
        term = TruncatedSeries(
            RATIONALS, [Q(1)] + [Q(0)] * (m - 1) + [Q(-1)], N
        ) if m <= N else one
        prod = prod * term.inverse() ** e_surface
    return [int(c) for c in prod.coeffs]


def tangent_weights(surf, fp):
    """The 2n tangent weights of a fixed point, in (t1, t2) coords."""
    out = []
    for chart, lam in zip(surf.charts, fp):
        (u1, u2), (v1, v2) = chart.u, chart.v
        for r, c in cells(lam):
            a, l = arm(lam, r, c), leg(lam, r, c)
            out.append(((a + 1) * u1 - l * v1, (a + 1) * u2 - l * v2))
            out.append((-a * u1 + (l + 1) * v1, -a * u2 + (l + 1) * v2))
    return out


def det_taut_weight(surf, fp, spec, shift=(0, 0)):
    """Fiber weight of det F^[n] at a fixed point: signed sum over line
    bundle summands of the cell-shifted lift weights."""
    w1 = w2 = 0
    for sign, degree in spec.summands:
        lifts = surf.line_lift(degree, shift)
        for chart, lam, (m1, m2) in zip(surf.charts, fp, lifts):
            (u1, u2), (v1, v2) = chart.u, chart.v
            for r, c in cells(lam):
                w1 += sign * (m1 + c * u1 + r * v1)
                w2 += sign * (m2 + c * u2 + r * v2)
    return (w1, w2)


def taut_cell_weights(surf, fp, degree, shift=(0, 0)):
    """The n fiber weights of L^[n] at a fixed point, one per cell."""
    out = []
    lifts = surf.line_lift(degree, shift)
    for chart, lam, (m1, m2) in zip(surf.charts, fp, lifts):
        (u1, u2), (v1, v2) = chart.u, chart.v
        for r, c in cells(lam):
            out.append((m1 + c * u1 + r * v1, m2 + c * u2 + r * v2))
    return out


def _chern_number_once(surf, spec, n, ab, shift):
    """One localization evaluation of the top Chern number of F^[n]."""
    a, b = ab
    order = 2 * n
    total = Q(0)
    for fp in hilb_fixed_points(surf, n):
        denom = 1
        for w1, w2 in tangent_weights(surf, fp):
            w = w1 * a + w2 * b
            if w == 0:
                raise DegenerateSpecialization(str(ab))
            denom *= w
        term = TruncatedSeries.one(RATIONALS, order)
        for sign, degree in spec.summands:
            for w1, w2 in taut_cell_weights(surf, fp, degree, shift):
                factor = TruncatedSeries(
                    RATIONALS, [Q(1), Q(w1 * a + w2 * b)], order
                )
                term = term * (factor if sign == 1 else factor.inverse())
        total = total + term.coeffs[order] / denom
    return total


def chern_number(surface, spec, n, seed=0):
    """Integral of c_{2n}(F^[n]) over the n-points Hilbert scheme by
    fixed-point localization, evaluated with two specializations and two
    equivariant lifts and asserted equal.  Independent of the operator
    calculus; used as its oracle."""
    if n == 0:
        return Q(1)
    surf = surface if isinstance(surface, ToricSurface) else ToricSurface(surface)
    results = []
    for shift in ((0, 0), (1, 2)):
        for bump in (0, 7):
            attempt = seed + bump
            while True:
                try:
                    results.append(
                        _chern_number_once(surf, spec, n, _draw_ab(n, attempt), shift)
                    )
                    break
                except DegenerateSpecialization:
                    attempt += 1
                    if attempt > seed + bump + 50:
                        raise
    if len(set(results)) != 1:
        raise AssertionError(
            "chern number depends on the specialization/lift: %s" % (results,)
        )
    return results[0]


def chern_number_series(surface, spec, order, seed=0):
    """Generating series of the top Chern numbers of F^[n]."""
    coeffs = [Q(1)] + [
        chern_number(surface, spec, n, seed=seed) for n in range(1, order + 1)
    ]
    return TruncatedSeries(RATIONALS, coeffs, order)


# -- the Euler characteristic ----------------------------------------

def _todd_factor_series(order):
    """g(y) = y/(1 - exp(-y)) to the given order."""
    N = order
    # expand (1 - exp(-y))/y
    coeffs = []
    sign = -1
    for k in range(1, N + 2):
        coeffs.append(Q(-sign, factorial(k)))
        sign = -sign
    h = TruncatedSeries(RATIONALS, coeffs[: N + 1], N)
    return h.inverse()


def _scaled(series, w):
    return TruncatedSeries(
        series.ring, [c * w ** k for k, c in enumerate(series.coeffs)], series.order
    )


def _exp_series(mu, order):
    coeffs = [Q(mu) ** k / factorial(k) for k in range(order + 1)]
    return TruncatedSeries(RATIONALS, coeffs, order)


class DegenerateSpecialization(Exception):
    pass


def _chi_once(surf, spec, n, ab, shift):
    a, b = ab
    order = 2 * n
    todd = _todd_factor_series(order)
    total = TruncatedSeries.zero(RATIONALS, order)
    for fp in hilb_fixed_points(surf, n):
        weights = []
        for w1, w2 in tangent_weights(surf, fp):
            w = w1 * a + w2 * b
            if w == 0:
                raise DegenerateSpecialization(str(ab))
            weights.append(w)
        m1, m2 = det_taut_weight(surf, fp, spec, shift)
        # fiber characters enter the Lefschetz sum dualized, matching
        # the 1/(1 - e^{-w}) convention used for the tangent weights
        mu = -(m1 * a + m2 * b)
        term = _exp_series(mu, order)
        denom = 1
        for w in weights:
            term = term * _scaled(todd, Q(w))
            denom *= w
        total = total + term.scale(Q(1, denom))
    for k in range(order):
        if total.coeffs[k] != 0:
            raise AssertionError(
                "localization sum has a pole (order %d residue %s)" % (k, total.coeffs[k])
            )
    chi = total.coeffs[order]
    if chi.denominator != 1:
        raise AssertionError("non-integral chi: %s" % (chi,))
    return chi


def _draw_ab(n, attempt):
    return (1, factorial(n) + 1 + attempt)


def chi_det(surface, spec, n, seed=0):
    """chi of det F^[n] on the n-points Hilbert scheme, computed twice
    with independent specializations and lifts and asserted equal."""
    if n == 0:
        return Q(1)
    surf = surface if isinstance(surface, ToricSurface) else ToricSurface(surface)
    results = []
    for shift in ((0, 0), (1, 2)):
        attempt = seed
        while True:
            try:
                results.append(_chi_once(surf, spec, n, _draw_ab(n, attempt), shift))
                break
            except DegenerateSpecialization:
                attempt += 1
                if attempt > seed + 50:
                    raise
        attempt += 7  # force a different specialization for the second run
        while True:
            try:
                results.append(_chi_once(surf, spec, n, _draw_ab(n, attempt), shift))
                break
            except DegenerateSpecialization:
                attempt += 1
    if len(set(results)) != 1:
        raise AssertionError(
            "chi depends on the specialization/lift: %s" % (results,)
        )
    return results[0]


def chi_series(surface, spec, order, seed=0):
    """Generating series of chi(det F^[n]), constant term 1."""
    coeffs = [Q(1)] + [chi_det(surface, spec, n, seed=seed) for n in range(1, order + 1)]
    return TruncatedSeries(RATIONALS, coeffs, order)
