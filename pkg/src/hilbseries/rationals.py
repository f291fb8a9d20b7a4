"""Exact rational arithmetic helpers.

All arithmetic in this package is exact; no floating point anywhere.
We use gmpy2.mpq when available (much faster for large numerators) and
fall back to fractions.Fraction, which has the same interface.
"""

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q


def as_q(x):
    """Coerce an int, Fraction, mpq or 'p/q' string to Q."""
    if isinstance(x, str):
        if "/" in x:
            num, den = x.split("/")
            return Q(int(num), int(den))
        return Q(int(x))
    return Q(x)


def qstr(x):
    """Decimal-string pair for JSON emission (arbitrary precision safe)."""
    x = as_q(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def binomial(m, k):
    """Generalized binomial m(m-1)...(m-k+1)/k! for k >= 0.

    The top argument may be any rational (negative integers included).
    """
    if k < 0:
        raise ValueError("binomial: k must be >= 0")
    m = as_q(m)
    num = Q(1)
    for i in range(k):
        num *= m - i
    den = Q(1)
    for i in range(1, k + 1):
        den *= i
    return num / den


def factorial(n):
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def catalan(n):
    """C_n = binom(2n, n)/(n+1), computed directly from the formula."""
    return binomial(2 * n, n) / (n + 1)
