"""Sparse multivariate polynomials with exact rational coefficients.

A PolyRing fixes an immutable tuple of variable names; its elements map
exponent vectors to nonzero rational coefficients.  Only the operations
the series layer needs are provided: ring arithmetic, scalar division,
substitution and evaluation.
"""

from .rationals import Q, as_q


class PolyRing:
    def __init__(self, *names):
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        self.names = tuple(names)
        self.nvars = len(self.names)
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "PolyRing(%s)" % ", ".join(self.names)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = as_q(c)
        if c == 0:
            return Poly(self, {})
        return Poly(self, {self._zero_exp: c})

    def var(self, name):
        i = self.names.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {exp: Q(1)})

    def gens(self):
        return tuple(self.var(n) for n in self.names)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms  # exponent tuple -> nonzero Q

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(e == self.ring._zero_exp for e in self.terms)

    def constant(self):
        """The coefficient of the constant monomial."""
        return self.terms.get(self.ring._zero_exp, Q(0))

    def degree(self, name=None):
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.ring.names.index(name)
        return max(e[i] for e in self.terms)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Q(0))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Q(0)) + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_q(other)
            if c == 0:
                return self.ring.zero()
            return Poly(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Q(0)) + c1 * c2
                if s:
                    terms[e] = s
                elif e in terms:
                    del terms[e]
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a rational scalar or an invertible (constant) Poly."""
        if isinstance(other, Poly):
            if not other.is_constant():
                raise ZeroDivisionError("division by a non-constant polynomial")
            other = other.constant()
        c = as_q(other)
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return self * (Q(1) / c)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r = self.ring.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        return self.is_constant() and self.constant() == as_q(other)

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __call__(self, *values):
        """Evaluate at rationals (or ring elements), one per variable."""
        if len(values) != self.ring.nvars:
            raise ValueError("expected %d values" % self.ring.nvars)
        total = None
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                for _ in range(k):
                    t = t * v
            total = t if total is None else total + t
        if total is None:
            return Q(0)
        return total

    def subs_poly(self, name, value):
        """Substitute a Poly (in any ring) for one variable; the other
        variables must not occur."""
        i = self.ring.names.index(name)
        out = value.ring.zero()
        for e, c in self.terms.items():
            if any(k and j != i for j, k in enumerate(e)):
                raise ValueError("subs_poly: other variables present")
            out = out + value ** e[i] * c
        return out

    def permute_vars(self, perm):
        """Apply x_i -> x_{perm[i]} (perm is a tuple of indices)."""
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(e)
            for i, k in enumerate(e):
                ne[perm[i]] += k
            ne = tuple(ne)
            s = terms.get(ne, Q(0)) + c
            if s:
                terms[ne] = s
            elif ne in terms:
                del terms[ne]
        return Poly(self.ring, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else "%s^%d" % (n, k)
                for n, k in zip(self.ring.names, e)
                if k
            )
            if mono:
                parts.append("%s*%s" % (c, mono) if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts)
