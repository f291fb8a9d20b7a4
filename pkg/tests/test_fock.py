import random

from hilbseries.fock import (
    FockVector,
    OperatorSum,
    apply_operator,
    context,
    integrate_hilb,
    monomial_integral_oracle,
    q1_basis_derivative,
    q_derivative,
    q_op,
)
from hilbseries.rationals import Q
from hilbseries.surface import preset

rng = random.Random(20240819)


def random_vector(model, cap, nterms=4):
    ctx = context(model)
    terms = {}
    for _ in range(nterms):
        mono = []
        deg = 0
        while deg < cap and rng.random() < 0.7:
            m = rng.randint(1, cap - deg)
            mono.append((m, rng.randrange(ctx.nbasis)))
            deg += m
        terms[tuple(sorted(mono, reverse=True))] = Q(rng.randint(-5, 5))
    return FockVector(model, cap, terms)


def test_commutation_relation():
    # [q_m(a), q_n(b)] = m delta_{m+n} <a,b> id, checked on random vectors
    for model in (preset("p2"), preset("p1xp1")):
        ctx = context(model)
        for _ in range(30):
            m = rng.choice([i for i in range(-3, 4) if i])
            n = rng.choice([i for i in range(-3, 4) if i])
            a = rng.randrange(ctx.nbasis)
            b = rng.randrange(ctx.nbasis)
            cap = 6
            v = random_vector(model, cap)
            qm, qn = q_op(model, m, a), q_op(model, n, b)
            lhs = apply_operator(qm, apply_operator(qn, v)) - apply_operator(
                qn, apply_operator(qm, v)
            )
            if m + n == 0:
                expected = v.scale(m * ctx.pairing[a][b])
            else:
                expected = FockVector(model, cap, {})
            # compare only monomials whose degree keeps both orders inside
            # the cap: |m| and |n| may overshoot transiently
            bound = cap - max(m, n, m + n, 0)
            lhs_t = {k: c for k, c in lhs.terms.items()
                     if c and sum(x for x, _ in k) - (m + n) <= bound}
            exp_t = {k: c for k, c in expected.terms.items()
                     if c and sum(x for x, _ in k) - (m + n) <= bound}
            assert lhs_t == exp_t


def random_oracle_word(ctx, max_n=5):
    letters = [(1, ctx.pt), (-1, ctx.pt), (1, 0)]
    word = tuple(rng.choice(letters) for _ in range(rng.randint(1, 2 * max_n)))
    return word


def test_integral_oracle_on_random_words():
    # engine application vs the closed bijection-count formula,
    # >= 100 random words in q_1(pt), q_-1(pt), q_1(S)
    model = preset("p2")
    ctx = context(model)
    checked = 0
    while checked < 120:
        word = random_oracle_word(ctx)
        n = sum(m for m, _ in word)
        if not 0 <= n <= 5:
            continue
        op = OperatorSum(model, {word: Q(1)})
        v = apply_operator(op, FockVector.vacuum(model, n))
        got = v.terms.get(((1, ctx.pt),) * n, Q(0)) if n else v.terms.get((), Q(0))
        assert got == monomial_integral_oracle(model, word)
        checked += 1


def test_normal_ordering_preserves_action():
    model = preset("p1xp1")
    ctx = context(model)
    for _ in range(40):
        word = tuple(
            (rng.choice([i for i in range(-3, 4) if i]), rng.randrange(ctx.nbasis))
            for _ in range(rng.randint(1, 4))
        )
        op = OperatorSum(model, {word: Q(rng.randint(1, 3))})
        cap = 8
        v = random_vector(model, 4)
        v = FockVector(model, cap, v.terms)
        assert apply_operator(op, v).terms == apply_operator(
            op.canonicalized(), v
        ).terms


def test_budget_pruning_is_exact():
    # the budgeted derivative must act identically to the unbudgeted one
    # on every state within the conformal cap; this is the soundness
    # property that requires normal ordering (words that create a large
    # factor and then annihilate it act on low states despite a large
    # absolute budget, but their normal-ordered rewriting does not)
    model = preset("p2")
    ctx = context(model)
    cap = 3
    window = 2 * cap
    states = [
        {((1, 0), (1, 0)): Q(1)},
        {((1, 0), (1, ctx.pt)): Q(1)},
        {((1, 1), (1, 1)): Q(1)},
        {((2, 0),): Q(1)},
    ]
    for bidx in range(ctx.nbasis):
        for k in range(5):
            budgeted = q1_basis_derivative(
                model, bidx, k, window, 2 * cap - 1, cap, cap - 1
            )
            full = q1_basis_derivative(model, bidx, k, window, None, None, None)
            for terms in states:
                v = FockVector(model, cap, dict(terms))
                assert apply_operator(budgeted, v).terms == apply_operator(
                    full, v
                ).terms


def test_first_derivative_of_point():
    # q_1'(p) = (1/2) sum_nu q_nu(p) q_{1-nu}(p)
    model = preset("p2")
    ctx = context(model)
    cap = 3
    op = q_derivative(1, model.pt(), cap)
    expected = {}
    for nu in range(-2 * cap, 2 * cap + 1):
        mu = 1 - nu
        if nu == 0 or mu == 0 or abs(mu) > 2 * cap:
            continue
        word = tuple(sorted(((nu, ctx.pt), (mu, ctx.pt)), reverse=True))
        if nu > 0 and mu < 0:
            word = ((nu, ctx.pt), (mu, ctx.pt))
        elif mu > 0 and nu < 0:
            word = ((mu, ctx.pt), (nu, ctx.pt))
        if sum(abs(m) for m, _ in word) > 2 * cap - 1:
            continue
        if sum(m for m, _ in word if m > 0) > cap:
            continue
        if sum(-m for m, _ in word if m < 0) > cap - 1:
            continue
        expected[word] = expected.get(word, Q(0)) + Q(1, 2)
    expected = {w: c for w, c in expected.items() if c}
    assert op.terms == expected


def test_vacuum_integrals_small():
    # int over Hilb^n of the n-fold product of q_1(pt) is 1
    model = preset("p2")
    for n in range(5):
        v = FockVector.vacuum(model, n)
        op = q_op(model, 1, model.pt())
        for _ in range(n):
            v = apply_operator(op, v)
        assert integrate_hilb(v, n) == 1
