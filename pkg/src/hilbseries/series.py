"""Truncated univariate power series over an exact coefficient ring.

The coefficient ring is either plain rationals (QQ) or multivariate
rational-coefficient polynomials (PolyCoeffs).  A series carries its
truncation order N, fixed at construction; mixing orders or rings is an
error, never a silent min.
"""

from .poly import Poly, PolyRing
from .rationals import Q, as_q, binomial


class SeriesError(ValueError):
    pass


class QQ:
    """Coefficient-ring tag for plain rationals."""

    def zero(self):
        return Q(0)

    def one(self):
        return Q(1)

    def coerce(self, c):
        return as_q(c)

    def inv(self, c):
        if c == 0:
            raise SeriesError("constant term is not invertible")
        return Q(1) / c

    def is_invertible(self, c):
        return c != 0

    def __eq__(self, other):
        return isinstance(other, QQ)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PolyCoeffs:
    """Coefficient-ring tag for Poly coefficients over a fixed PolyRing."""

    def __init__(self, polyring):
        self.polyring = polyring

    def zero(self):
        return self.polyring.zero()

    def one(self):
        return self.polyring.one()

    def coerce(self, c):
        if isinstance(c, Poly):
            if c.ring != self.polyring:
                raise SeriesError("polynomial from a different ring")
            return c
        return self.polyring.const(c)

    def inv(self, c):
        c = self.coerce(c)
        if not (c.is_constant() and c.constant() != 0):
            raise SeriesError("constant term is not invertible")
        return self.polyring.const(Q(1) / c.constant())

    def is_invertible(self, c):
        c = self.coerce(c)
        return c.is_constant() and c.constant() != 0

    def __eq__(self, other):
        return isinstance(other, PolyCoeffs) and self.polyring == other.polyring

    def __hash__(self):
        return hash(("PolyCoeffs", self.polyring))

    def __repr__(self):
        return "PolyCoeffs(%r)" % (self.polyring,)


RATIONALS = QQ()


class TruncatedSeries:
    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, coeffs, order=None):
        self.ring = ring
        coeffs = [ring.coerce(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("order must be >= 0")
        if len(coeffs) < order + 1:
            coeffs = coeffs + [ring.zero()] * (order + 1 - len(coeffs))
        elif len(coeffs) > order + 1:
            raise SeriesError("more coefficients than the order allows")
        self.order = order
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------
    @classmethod
    def constant(cls, ring, c, order):
        return cls(ring, [c], order)

    @classmethod
    def one(cls, ring, order):
        return cls.constant(ring, ring.one(), order)

    @classmethod
    def zero(cls, ring, order):
        return cls(ring, [], order)

    @classmethod
    def identity(cls, ring, order):
        """The series x."""
        if order < 1:
            raise SeriesError("identity series needs order >= 1")
        return cls(ring, [ring.zero(), ring.one()], order)

    # -- bookkeeping -------------------------------------------------
    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise SeriesError("expected a TruncatedSeries")
        if other.ring != self.ring:
            raise SeriesError("series over different coefficient rings")
        if other.order != self.order:
            raise SeriesError(
                "mixing truncation orders (%d vs %d)" % (self.order, other.order)
            )
        return other

    def __getitem__(self, n):
        return self.coeffs[n]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return "TruncatedSeries(%s + O(x^%d))" % (
            ", ".join(str(c) for c in self.coeffs),
            self.order + 1,
        )

    def truncate(self, order):
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return TruncatedSeries(self.ring, self.coeffs[: order + 1], order)

    def is_zero(self):
        z = self.ring.zero()
        return all(c == z for c in self.coeffs)

    def valuation(self):
        z = self.ring.zero()
        for i, c in enumerate(self.coeffs):
            if c != z:
                return i
        return None

    # -- arithmetic --------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        return TruncatedSeries(
            self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __sub__(self, other):
        other = self._check(other)
        return TruncatedSeries(
            self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order
        )

    def __neg__(self):
        return TruncatedSeries(self.ring, [-c for c in self.coeffs], self.order)

    def scale(self, c):
        c = self.ring.coerce(c)
        return TruncatedSeries(self.ring, [a * c for a in self.coeffs], self.order)

    def __mul__(self, other):
        other = self._check(other)
        N = self.order
        z = self.ring.zero()
        a, b = self.coeffs, other.coeffs
        out = [z] * (N + 1)
        for i, ai in enumerate(a):
            if ai == z:
                continue
            for j in range(N + 1 - i):
                bj = b[j]
                if bj != z:
                    out[i + j] = out[i + j] + ai * bj
        return TruncatedSeries(self.ring, out, N)

    def inverse(self):
        N = self.order
        inv0 = self.ring.inv(self.coeffs[0])
        out = [inv0]
        for n in range(1, N + 1):
            acc = self.ring.zero()
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-inv0 * acc)
        return TruncatedSeries(self.ring, out, N)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def derivative(self):
        """Formal derivative.  The top coefficient of the derivative is
        not determined by a truncation to this order, so the result
        honestly drops one order instead of padding with a wrong 0."""
        N = self.order
        if N == 0:
            raise SeriesError("derivative of an order-0 truncation")
        out = [self.coeffs[k] * k for k in range(1, N + 1)]
        return TruncatedSeries(self.ring, out, N - 1)

    def integrate(self):
        """Formal antiderivative with zero constant term; gains one
        order, since every output coefficient is determined."""
        N = self.order
        out = [self.ring.zero()]
        for k in range(N + 1):
            out.append(self.coeffs[k] * Q(1, k + 1))
        return TruncatedSeries(self.ring, out, N + 1)

    # -- transcendental ----------------------------------------------
    def log(self):
        if self.coeffs[0] != self.ring.one():
            raise SeriesError("log requires constant term 1")
        N = self.order
        a = self.coeffs
        out = [self.ring.zero()]
        for n in range(1, N + 1):
            acc = a[n]
            for k in range(1, n):
                acc = acc - out[k] * a[n - k] * Q(k, n)
            out.append(acc)
        return TruncatedSeries(self.ring, out, N)

    def exp(self):
        if self.coeffs[0] != self.ring.zero():
            raise SeriesError("exp requires constant term 0")
        N = self.order
        a = self.coeffs
        out = [self.ring.one()]
        for n in range(1, N + 1):
            acc = self.ring.zero()
            for k in range(1, n + 1):
                acc = acc + a[k] * out[n - k] * Q(k, n)
            out.append(acc)
        return TruncatedSeries(self.ring, out, N)

    def pow(self, e):
        """a**e = exp(e*log a) for an arbitrary ring-element exponent."""
        return self.log().scale(e).exp()

    def __pow__(self, n):
        if isinstance(n, int):
            if n >= 0:
                r = TruncatedSeries.one(self.ring, self.order)
                b = self
                while n:
                    if n & 1:
                        r = r * b
                    b = b * b
                    n >>= 1
                return r
            return self.inverse() ** (-n)
        return self.pow(n)

    # -- composition -------------------------------------------------
    def compose(self, inner):
        inner = self._check(inner)
        if inner.coeffs[0] != self.ring.zero():
            raise SeriesError("compose requires inner constant term 0")
        out = TruncatedSeries.constant(self.ring, self.coeffs[self.order], self.order)
        for k in range(self.order - 1, -1, -1):
            out = out * inner
            out.coeffs[0] = out.coeffs[0] + self.coeffs[k]
        return out

    def reverse(self):
        """Compositional inverse of a = a1*x + O(x^2), a1 invertible."""
        if self.coeffs[0] != self.ring.zero():
            raise SeriesError("reverse requires zero constant term")
        if not self.ring.is_invertible(self.coeffs[1]):
            raise SeriesError("reverse requires an invertible linear term")
        N = self.order
        inv1 = self.ring.inv(self.coeffs[1])
        b = [self.ring.zero(), inv1] + [self.ring.zero()] * (N - 1)
        for k in range(2, N + 1):
            cur = TruncatedSeries(self.ring, list(b), N)
            val = self.compose(cur).coeffs[k]
            b[k] = -val * inv1
        return TruncatedSeries(self.ring, b, N)


# -- named operations over series ------------------------------------

def series_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise SeriesError("unknown op %r" % (op,))


def series_transcendental(a, op, exponent=None):
    if op == "log":
        return a.log()
    if op == "exp":
        return a.exp()
    if op == "pow":
        return a.pow(exponent)
    raise SeriesError("unknown op %r" % (op,))


def series_compose(outer, inner):
    return outer.compose(inner)


def series_reverse(a):
    return a.reverse()


def geometric(ring, order):
    """1/(1-x)."""
    return TruncatedSeries(ring, [ring.one()] * (order + 1), order)


def lagrange_transform(psi, phi, order=None):
    """Coefficient extraction f_n = [x^n] psi(x) phi(x)^n, computed two
    ways: directly, and through the implicit substitution w = z*phi(w)
    as psi(w)/(phi(w) dz/dw).  The agreement of the two forms is a
    mandatory self-test; the common value is returned.
    """
    if order is None:
        order = psi.order
    psi = psi.truncate(order)
    phi = psi._check(phi.truncate(order))
    one = psi.ring.one()
    if psi.coeffs[0] != one or phi.coeffs[0] != one:
        raise SeriesError("lagrange_transform requires constant terms 1")
    cur = psi
    direct = []
    for n in range(order + 1):
        direct.append(cur.coeffs[n])
        if n < order:
            cur = cur * phi
    f1 = TruncatedSeries(psi.ring, direct, order)

    # cross-check against the closed form psi(w)/(phi(w) dz/dw) under
    # w = z*phi(w); dz/dw loses one order, so the comparison does too
    if order >= 1:
        z_of_w = TruncatedSeries.identity(psi.ring, order) / phi
        w_of_z = z_of_w.reverse().truncate(order - 1)
        dzdw = z_of_w.derivative()
        closed_w = psi.truncate(order - 1) / (phi.truncate(order - 1) * dzdw)
        f2 = closed_w.compose(w_of_z)
        if f1.truncate(order - 1) != f2:
            raise SeriesError(
                "lagrange_transform: the two representations disagree"
            )
    return f1


def binomial_series(kind, r, order, ring=RATIONALS):
    """The two closed-form series attached to a rank-r class: for every
    k, 'f' has coefficient binom((1-r^2)(k-1), k) and 'g' has
    coefficient binom(1-(r^2-1)k, k)/(1-(r^2-1)k)."""
    m = 1 - r * r
    coeffs = []
    for k in range(order + 1):
        if kind == "f":
            coeffs.append(binomial(m * (k - 1), k))
        elif kind == "g":
            d = Q(1) + m * k
            coeffs.append(binomial(d, k) / d)
        else:
            raise SeriesError("kind must be 'f' or 'g'")
    return TruncatedSeries(ring, coeffs, order)
