from hilbseries.rationals import Q, factorial
from hilbseries.surface import preset
from hilbseries.trees import (
    cayley_oracle,
    d_closed_form,
    d_constant,
    enumerate_trees,
    hook_poly,
    hook_poly_closed_form,
    recursion_check,
    tree_expansion_check,
)


def test_tree_counts_are_factorials():
    for n in range(6):
        assert len(enumerate_trees(n)) == factorial(n)


def test_hook_poly_closed_form():
    # F_n = 2^n n! (x_1 + .. + x_{n+1})^n as exact polynomials
    for n in range(5):
        assert hook_poly(n) == hook_poly_closed_form(n)


def test_root_deletion_recursion():
    for n in range(1, 5):
        assert recursion_check(n)


def test_d_constants_three_ways():
    # d_constant raises unless the tree, Catalan-log, and Fock values
    # agree, so calling it is already the three-way check
    for n in range(1, 7):
        assert d_constant(n) == d_closed_form(n)


def test_cayley_identity():
    for p in range(2, 7):
        assert cayley_oracle(p)


def test_tree_expansion_matches_engine():
    model = preset("p2")
    for n in range(1, 5):
        for k in (-2, -1, 1, 2):
            assert tree_expansion_check(model, n, k, 2), (n, k)


def test_tree_expansion_zero_index():
    model = preset("p2")
    assert tree_expansion_check(model, 2, 0, 2)
    assert tree_expansion_check(model, 3, 0, 2)
