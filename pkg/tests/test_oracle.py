from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from cycind import oracle
from cycind.classdata import GroupId, group_order
from cycind.ffpoly import BudgetExceeded, field
from cycind.partitions import Partition


def test_small_group_sizes():
    assert len(oracle.enumerate_group(GroupId('GL', 2, 2))) == 6
    assert len(oracle.enumerate_group(GroupId('Sp', 2, 3))) == 24
    assert len(oracle.enumerate_group(GroupId('Oplus', 2, 3))) == 4


def test_sp23_is_sl23():
    G = oracle.enumerate_group(GroupId('Sp', 2, 3))
    dets = {(int(M[0, 0]) * int(M[1, 1]) - int(M[0, 1]) * int(M[1, 0])) % 3 for M in G.mats}
    assert dets == {1}


def test_budget():
    with pytest.raises(BudgetExceeded):
        oracle.enumerate_group(GroupId('GL', 5, 2), budget=1000)


def test_rcf_examples():
    F = field(2)
    assert oracle.rcf_data(F, np.eye(3, dtype=int)) == {(1, 1): Partition([1, 1, 1])}
    assert oracle.rcf_data(F, [[1, 1], [0, 1]]) == {(1, 1): Partition([2])}
    # companion matrix of z^2 + z + 1
    assert oracle.rcf_data(F, [[0, 1], [1, 1]]) == {(1, 1, 1): Partition([1])}


def test_charpoly_matches_integer_charpoly():
    import sympy
    rng = np.random.default_rng(7)
    for p in (2, 3, 5, 7):
        F = field(p)
        for _ in range(20):
            M = rng.integers(0, p, size=(4, 4))
            ref = sympy.Matrix(M.tolist()).charpoly().all_coeffs()[::-1]
            assert oracle.charpoly(F, M.tolist()) == tuple(int(c) % p for c in ref)


def test_class_tables():
    gl = oracle.empirical_class_table(GroupId('GL', 2, 2))
    assert Counter(c.size for c in gl) == Counter([1, 3, 2])
    sp = oracle.empirical_class_table(GroupId('Sp', 2, 3))
    uni2 = [c.size for c in sp if c.datum == {(2, 1): Partition([2])}]
    assert sorted(uni2) == [4, 4]
    mat = oracle.empirical_class_table(GroupId('Mat', 2, 2))
    assert sum(c.size for c in mat) == 16


@pytest.mark.parametrize('fam,n,q', oracle.SUPPORTED_GROUPS)
def test_rcf_is_class_function(fam, n, q):
    assert oracle.rcf_is_class_function(GroupId(fam, n, q))


def test_certify_examples():
    assert oracle.certify(GroupId('GL', 2, 3))['status'] == 'PASS'
    rep = oracle.certify(GroupId('U', 2, 2))
    assert rep['status'] == 'PASS'
    assert oracle.transvection_counts(GroupId('U', 2, 2))['sizes'] == [3]
    for fam in ('Oplus', 'Ominus'):
        assert sum(oracle.transvection_counts(GroupId(fam, 3, 3))['sizes']) == 9
    assert oracle.certify(GroupId('Sp', 2, 3))['summary'] == 'PASS (7 classes, 24 elements)'


def test_mean_order_u12():
    assert oracle.mean_element_order(GroupId('U', 1, 2)) == Fraction(7, 3)


def test_unipotent_counts():
    assert oracle.unipotent_count(GroupId('GL', 2, 2)) == 4
    assert oracle.unipotent_count(GroupId('Sp', 2, 3)) == 9


def test_forms_are_nondegenerate():
    for fam, n, q in oracle.SUPPORTED_GROUPS:
        g = GroupId(fam, n, q)
        J = oracle.form_matrix(g)
        if J is None:
            continue
        F = g.poly_field
        assert oracle._rank(F, J.tolist()) == n


def test_group_orders_match():
    for fam, n, q in oracle.SUPPORTED_GROUPS:
        g = GroupId(fam, n, q)
        assert len(oracle.enumerate_group(g)) == group_order(g)
