"""Combinatorial oracles built on increasing binary trees.

These are deliberately independent of the Fock-space engine: tree
enumeration, hook-weight polynomials F_n, the normal-ordering constants
D_n, and the weighted Cayley identity.  They exist to cross-check the
operator calculus, so they stay close to the definitions and avoid
shortcuts.
"""

from functools import lru_cache
from itertools import permutations, product

from .fock import OperatorSum, context, operator_derivative, q_derivative
from .poly import PolyRing
from .rationals import Q, binomial, catalan, factorial
from .series import RATIONALS, TruncatedSeries


# -- increasing binary trees ------------------------------------------

def enumerate_trees(n):
    """All increasing binary trees on labels 1..n; a tree is either
    None or (label, left, right), with labels increasing downward."""
    return _trees_on(tuple(range(1, n + 1)))


@lru_cache(maxsize=None)
def _trees_on(labels):
    if not labels:
        return (None,)
    root, rest = labels[0], labels[1:]
    out = []
    for mask in range(1 << len(rest)):
        left_labels = tuple(x for i, x in enumerate(rest) if mask >> i & 1)
        right_labels = tuple(x for i, x in enumerate(rest) if not mask >> i & 1)
        for lt in _trees_on(left_labels):
            for rt in _trees_on(right_labels):
                out.append((root, lt, rt))
    return tuple(out)


def _node_count(tree):
    if tree is None:
        return 0
    return 1 + _node_count(tree[1]) + _node_count(tree[2])


def _hook_intervals(tree, start, out):
    """Leaf intervals [lo, hi) of each internal node after filling the
    tree out to a full binary tree; leaves are numbered left to right."""
    if tree is None:
        return start + 1
    size = _node_count(tree)
    out.append((start, start + size + 1))
    mid = _hook_intervals(tree[1], start, out)
    end = _hook_intervals(tree[2], mid, out)
    return end


def tree_weight(tree, ring):
    """Product of weighted hook lengths of one increasing binary tree,
    as a polynomial in the leaf variables."""
    intervals = []
    _hook_intervals(tree, 0, intervals)
    gens = ring.gens()
    w = ring.one()
    for lo, hi in intervals:
        h = ring.zero()
        for i in range(lo, hi):
            h = h + gens[i]
        w = w * h
    return w


def hook_poly(n):
    """F_n(x_1 .. x_{n+1}): the permutation-symmetrized hook weights
    summed over all increasing binary n-trees, straight from the
    definition (no symmetric-function shortcuts)."""
    ring = PolyRing(*["x%d" % (i + 1) for i in range(n + 1)])
    total = ring.zero()
    for tree in enumerate_trees(n):
        w = tree_weight(tree, ring)
        for perm in permutations(range(n + 1)):
            total = total + w.permute_vars(perm)
    return total


def hook_poly_closed_form(n):
    """2^n n! (x_1 + .. + x_{n+1})^n, the conjectured closed form."""
    ring = PolyRing(*["x%d" % (i + 1) for i in range(n + 1)])
    s = ring.zero()
    for g in ring.gens():
        s = s + g
    return s ** n * ring.const(Q(2) ** n * factorial(n))


def _embed(poly, big_ring, var_indices):
    """Rewrite a polynomial on the variables of big_ring selected by
    var_indices (position i goes to big variable var_indices[i])."""
    out = big_ring.zero()
    nbig = len(big_ring.names)
    for exp, c in poly.terms.items():
        big_exp = [0] * nbig
        for i, e in enumerate(exp):
            big_exp[var_indices[i]] = e
        out = out + big_ring.const(c) * _monomial(big_ring, tuple(big_exp))
    return out


def _monomial(ring, exp):
    out = ring.one()
    for g, e in zip(ring.gens(), exp):
        out = out * g ** e
    return out


def recursion_check(n):
    """Verify the root-deletion recursion for F_n as an exact
    polynomial identity: F_n = (sum x) * sum over proper non-empty
    variable subsets S of binom(n-1, |S|-1) F_{|S|-1}(S) F_{n-|S|}(S^c).
    """
    ring = PolyRing(*["x%d" % (i + 1) for i in range(n + 1)])
    fs = [hook_poly(k) for k in range(n + 1)]
    total = ring.zero()
    idx = tuple(range(n + 1))
    for mask in range(1, (1 << (n + 1)) - 1):
        s = tuple(i for i in idx if mask >> i & 1)
        sc = tuple(i for i in idx if not mask >> i & 1)
        left = _embed(fs[len(s) - 1], ring, s)
        right = _embed(fs[n - len(s)], ring, sc)
        total = total + left * right * ring.const(binomial(n - 1, len(s) - 1))
    allx = ring.zero()
    for g in ring.gens():
        allx = allx + g
    return allx * total == fs[n]


# -- evaluation of F at one/minus-one multisets ------------------------

@lru_cache(maxsize=None)
def hook_eval_pm(a, b):
    """F_{a+b-1} evaluated at a ones and b minus-ones, computed by the
    root-deletion recursion (memoized on the multiset)."""
    if a + b == 1:
        return Q(1)
    n = a + b - 1
    total = Q(0)
    for ap in range(a + 1):
        for bp in range(b + 1):
            if ap + bp == 0 or ap + bp == a + b:
                continue
            total = total + (
                binomial(a, ap)
                * binomial(b, bp)
                * binomial(n - 1, ap + bp - 1)
                * hook_eval_pm(ap, bp)
                * hook_eval_pm(a - ap, b - bp)
            )
    return (a - b) * total


# -- the normal-ordering constants D_n ---------------------------------

def catalan_log_coefficient(n):
    """[x^n] log C(x) for the Catalan generating series."""
    c = TruncatedSeries(
        RATIONALS, [catalan(k) for k in range(n + 1)], n
    )
    return c.log().coeffs[n]


def d_constant(n):
    """D_n computed three independent ways and asserted equal: from the
    hook-weight evaluation, from the logarithm of the Catalan series,
    and from the Fock-space derivative q_1^{(2n-2)} of the point class.
    """
    from .surface import preset

    model = preset("p2")
    ctx = context(model)
    # (i) hook weights: the q_1^n q_{-1}^{n-1} coefficient of the
    # (2n-2)-nd derivative is F/(2^{2n-2} Aut), Aut = n!(n-1)!
    f = hook_eval_pm(n, n - 1)
    via_trees = (
        Q(2 * n - 1, n) * f / (Q(2) ** (2 * n - 2) * factorial(n) * factorial(n - 1))
    )
    # (ii) the Catalan-series logarithm
    via_log = catalan_log_coefficient(n)
    # (iii) the engine
    op = q_derivative(2 * n - 2, model.pt(), n)
    word = ((1, ctx.pt),) * n + ((-1, ctx.pt),) * (n - 1)
    via_fock = Q(2 * n - 1, n) * op.terms.get(word, Q(0))
    if not (via_trees == via_log == via_fock):
        raise AssertionError(
            "D_%d disagreement: trees %s, log %s, fock %s"
            % (n, via_trees, via_log, via_fock)
        )
    return via_trees


def d_closed_form(n):
    """(2n-1)/n times the (n-1)-st Catalan number."""
    return Q(2 * n - 1, n) * catalan(n - 1)


# -- weighted Cayley identity ------------------------------------------

def labeled_trees(p):
    """All labeled trees on p nodes as edge lists, via Pruefer codes."""
    if p == 1:
        return [()]
    if p == 2:
        return [((0, 1),)]
    out = []
    for code in product(range(p), repeat=p - 2):
        degree = [1] * p
        for x in code:
            degree[x] += 1
        edges = []
        avail = sorted(i for i in range(p) if degree[i] == 1)
        code_list = list(code)
        for x in code_list:
            leaf = avail.pop(0)
            edges.append((leaf, x))
            degree[x] -= 1
            if degree[x] == 1:
                lo = 0
                while lo < len(avail) and avail[lo] < x:
                    lo += 1
                avail.insert(lo, x)
        edges.append((avail[0], avail[1]))
        out.append(tuple(edges))
    return out


def cayley_oracle(p):
    """Check y_1..y_p (y_1+..+y_p)^(p-2) = sum over labeled trees of
    prod y_i^deg(i), by brute enumeration."""
    if not 2 <= p <= 6:
        raise ValueError("cayley_oracle expects 2 <= p <= 6")
    ring = PolyRing(*["y%d" % (i + 1) for i in range(p)])
    gens = ring.gens()
    rhs = ring.zero()
    for edges in labeled_trees(p):
        deg = [0] * p
        for i, j in edges:
            deg[i] += 1
            deg[j] += 1
        rhs = rhs + _monomial(ring, tuple(deg))
    s = ring.zero()
    for g in gens:
        s = s + g
    lhs = _monomial(ring, (1,) * p) * s ** (p - 2)
    return lhs == rhs


# -- tree expansion of q-derivatives ------------------------------------

def _sorted_vectors(total, length, bound):
    """Weakly decreasing integer vectors with the given sum, entries
    nonzero and bounded by |entry| <= bound."""
    out = []

    def rec(rem, slots, maxval, acc):
        if slots == 0:
            if rem == 0:
                out.append(tuple(acc))
            return
        for v in range(min(maxval, rem + (slots - 1) * bound), -bound - 1, -1):
            if v == 0:
                continue
            if rem - v > (slots - 1) * bound:
                break
            acc.append(v)
            rec(rem - v, slots - 1, v, acc)
            acc.pop()

    rec(total, length, bound, [])
    return out


def q_derivative_tree_expansion(model, n, k, bound):
    """Words and coefficients of q_k^{(n)}(point) predicted by the tree
    expansion, restricted to index vectors with entries in [-bound,
    bound]: coefficient F_n(i) / (2^n Aut(i)) on the sorted word."""
    ctx = context(model)
    fpoly = hook_poly(n)
    terms = {}
    for vec in _sorted_vectors(k, n + 1, bound):
        aut = Q(1)
        run = 1
        for i in range(1, len(vec)):
            run = run + 1 if vec[i] == vec[i - 1] else 1
            if run > 1:
                aut = aut * run
        val = fpoly(*[Q(v) for v in vec]) / (Q(2) ** n * aut)
        if val:
            terms[tuple((v, ctx.pt) for v in vec)] = val
    return terms


def tree_expansion_check(model, n, k, bound):
    """Compare the tree expansion of q_k^{(n)}(point) against the
    operator calculus on the words with entries bounded by `bound`.
    The engine window must cover every intermediate factor: an
    unrestricted derivative can pass through a factor as large as the
    sum of all the final indices, hence (n+1)*bound + |k|."""
    ctx = context(model)
    window = (n + 1) * bound + abs(k)
    op = OperatorSum(model, {((k, ctx.pt),): Q(1)})
    for _ in range(n):
        op = operator_derivative(op, window)
    engine = {
        w: c
        for w, c in op.terms.items()
        if all(abs(m) <= bound for m, _ in w)
    }
    return engine == q_derivative_tree_expansion(model, n, k, bound)
