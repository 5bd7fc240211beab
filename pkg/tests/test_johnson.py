from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import algebra_dim, johnson, to_sympy
from sl2hahn.errors import InvalidAnchor, OutOfRange, SizeCapExceeded
from sl2hahn.exactarith import RepMatrix
from sl2hahn.johnson import (
    blocks_report,
    formula_case,
    ito_index_sets,
    johnson_operators,
    random_anchor,
    s_closed,
    s_ell,
    terwilliger_blocks,
    terwilliger_dim_bruteforce,
    terwilliger_dim_formula,
    verify_binomial_identities,
    verify_T_equals_H_image,
)
from sl2hahn.latticedecomp import mask_elements, p_index_set


def test_operator_examples():
    ops = johnson_operators(3, 1)
    ones = RepMatrix([[1] * 3] * 3)
    assert ops.adjacency == ones - RepMatrix.identity(3)
    assert ops.dual_idempotents[0] == RepMatrix.diag([1, 0, 0])
    assert ops.dual_idempotents[1] == RepMatrix.diag([0, 1, 1])
    assert johnson_operators(2, 1, [0]).dual_adjacency == RepMatrix.diag([1, -1])


def test_operator_errors():
    with pytest.raises(OutOfRange):
        johnson_operators(3, 0)
    with pytest.raises(InvalidAnchor):
        johnson_operators(4, 2, [0])
    with pytest.raises(SizeCapExceeded):
        terwilliger_dim_bruteforce(9, 4, cap=100)


@pytest.mark.parametrize("D,k,anchor", [(4, 2, (1, 3)), (5, 2, (0, 4)), (5, 1, (2,))])
def test_operators_against_set_oracle(D, k, anchor):
    ops = johnson_operators(D, k, anchor)
    verts, A, Astar = johnson(D, k, frozenset(anchor))
    order = [verts.index(frozenset(mask_elements(x))) for x in ops.vertices]
    assert to_sympy(ops.adjacency) == A.extract(order, order)
    assert to_sympy(ops.dual_adjacency) == Astar.extract(order, order)


@pytest.mark.parametrize("D,k", [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2)])
def test_closure_dim_against_sympy_oracle(D, k):
    _, A, Astar = johnson(D, k, frozenset(range(k)))
    assert terwilliger_dim_bruteforce(D, k) == algebra_dim([A, Astar])


def test_named_dimensions():
    assert terwilliger_dim_bruteforce(2, 1) == 4
    assert terwilliger_dim_bruteforce(4, 2) == 11
    assert terwilliger_dim_formula(2, 1) == 4
    assert terwilliger_dim_formula(7, 2) == 16
    assert terwilliger_dim_formula(9, 4) == 70
    assert formula_case(9, 4) == "ii"


@pytest.mark.slow
def test_J84_bruteforce():
    assert terwilliger_dim_bruteforce(8, 4) == 46


@pytest.mark.parametrize("D", range(2, 30))
def test_formula_symmetric(D):
    for k in range(1, D):
        assert terwilliger_dim_formula(D, k) == terwilliger_dim_formula(D, D - k)


def test_block_examples():
    assert terwilliger_blocks(4, 2) == (3, 1, 1)
    assert terwilliger_blocks(7, 2) == (3, 2, 1, 1, 1)
    assert terwilliger_blocks(8, 4) == (5, 3, 3, 1, 1, 1)


@pytest.mark.parametrize("D,k", [(D, k) for D in range(2, 21) for k in range(1, D)])
def test_blocks_agree_with_formula_beyond_bruteforce(D, k):
    blocks, report = blocks_report(D, k)
    assert report.passed, str(report)
    assert sum(b * b for b in blocks) == terwilliger_dim_formula(D, k)


@pytest.mark.parametrize("D,k", [(D, k) for D in range(3, 16) for k in range(1, (D + 1) // 2)])
def test_ito_sets_swap_onto_P(D, k):
    s = ito_index_sets(D, k)
    assert sorted((j, i) for i, j in s.I) == sorted(p_index_set(D, k))


def test_T_equals_H_examples():
    assert verify_T_equals_H_image(2, 1, [0])
    assert verify_T_equals_H_image(4, 2)
    assert verify_T_equals_H_image(5, 2, random_anchor(5, 2, seed=7))


def test_random_anchor_reproducible():
    assert random_anchor(7, 3, 11) == random_anchor(7, 3, 11)
    assert bin(random_anchor(7, 3, 11)).count("1") == 3


def test_s_ell_examples():
    assert [s_ell(0, n) for n in range(8)] == [n // 2 + 1 for n in range(8)]
    assert s_ell(3, 5) == 11
    assert s_closed(3, 5) == s_closed(3, 5, rounded=True) == 11


@given(st.integers(0, 8), st.integers(0, 60))
def test_s_closed_forms(ell, n):
    assert s_ell(ell, n) == s_closed(ell, n) == s_closed(ell, n, rounded=True)


def test_binomial_identity_examples():
    assert sum((4 - 2 * i) ** 2 for i in range(3)) == 20 == comb(6, 3)
    for ell in range(5):
        assert s_ell(ell + 1, 1) + s_ell(ell + 1, 0) == comb(2, ell + 2)
    assert s_ell(3, 6) - s_ell(3, 5) == s_ell(2, 5)
    assert verify_binomial_identities(12, 4).passed
