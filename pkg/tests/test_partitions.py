from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cycind.partitions import (
    OSignedPartition, Partition, SpSignedPartition, c_gl, c_gl_rewrites, c_o, c_sp, c_u,
    enumerate_o_signed, enumerate_partitions, enumerate_sp_signed, gl_order, o_order,
    sp_order, stong_product_series, sum_inverse_c_series, u_order,
)


def test_partition_counts():
    assert enumerate_partitions(0) == [Partition()]
    assert len(enumerate_partitions(4)) == 5
    assert len(enumerate_partitions(10)) == 42


def test_partition_basics():
    lam = Partition([3, 1, 1])
    assert lam.size == 5
    assert lam.mult(1) == 2
    assert lam.dual() == Partition([3, 1, 1])
    assert Partition([4, 2]).dual() == Partition([2, 2, 1, 1])
    assert str(lam) == '[3,1,1]'
    assert Partition.parse('[3,1,1]') == lam


def test_signed_enumeration_examples():
    sp2 = enumerate_sp_signed(2)
    assert len(sp2) == 3
    assert set(map(str, sp2)) == {'[1,1]', '[+2]', '[-2]'}
    assert set(map(str, enumerate_o_signed(1))) == {'[+1]', '[-1]'}
    assert enumerate_sp_signed(1) == ()


def test_signed_counts():
    assert [len(enumerate_sp_signed(n)) for n in range(5)] == [1, 0, 3, 0, 7]
    assert [len(enumerate_o_signed(n)) for n in range(5)] == [1, 2, 2, 4, 7]


def test_signed_validation():
    with pytest.raises(ValueError):
        SpSignedPartition([1])
    with pytest.raises(ValueError):
        SpSignedPartition([2])
    with pytest.raises(ValueError):
        OSignedPartition([2])


def test_signed_text_roundtrip():
    for n in range(7):
        for sp in enumerate_sp_signed(n):
            assert SpSignedPartition.parse(str(sp)) == sp
        for o in enumerate_o_signed(n):
            assert OSignedPartition.parse(str(o)) == o
    lam = OSignedPartition.parse('[-3,3,+1]')
    assert str(lam) == '[-3,-3,+1]'
    with pytest.raises(ValueError):
        OSignedPartition.parse('[+3,-3]')


def test_orders():
    assert gl_order(2, 2) == 6
    assert u_order(2, 2) == 18
    assert sp_order(2, 3) == 24
    assert o_order(2, 3, -1) == 8
    assert o_order(2, 3, 1) == 4
    assert o_order(3, 3, 1) == 48
    assert o_order(0, 3, 1) == 1


def test_c_gl_examples():
    for q in (2, 3, 5):
        assert c_gl(Partition([1]), q) == q - 1
        for n in range(1, 4):
            assert c_gl(Partition([1] * n), q) == gl_order(n, q)
    assert c_gl(Partition([2]), 2) == 2
    assert c_gl(Partition(), 3) == 1


def test_c_gl_rewrite_examples():
    assert len(set(c_gl_rewrites(Partition([2, 1]), 2))) == 1
    assert c_gl_rewrites(Partition(), 3) == (1, 1, 1)
    assert len(set(c_gl_rewrites(Partition([3, 3, 1]), 4))) == 1


def test_c_gl_rejects_degenerate_Q():
    for Q in (0, 1, -1):
        with pytest.raises(ValueError):
            c_gl(Partition([1]), Q)


def test_c_u_reduces_to_negative_Q():
    # |U(n,q)| = |c_gl((1^n), -q)| up to sign
    for q in (2, 3):
        for n in range(1, 4):
            assert c_u(Partition([1] * n), q) == u_order(n, q)
            assert abs(c_gl(Partition([1] * n), -q)) == u_order(n, q)


def test_c_sp_examples():
    assert c_sp(SpSignedPartition([]), 3) == 1
    # transvections in Sp(2,3): two classes of size (q^2 - 1)/2 = 4
    for s in (1, -1):
        assert sp_order(2, 3) // c_sp(SpSignedPartition([2], {2: s}), 3) == 4
    # identity
    assert c_sp(SpSignedPartition([1, 1]), 3) == sp_order(2, 3)


def test_c_o_symmetries():
    # sizes of the two symmetry classes in O+(3,3), summing to 9
    q = 3
    a = o_order(3, q, 1) // (c_o(OSignedPartition([1, 1], {1: 1}), q)
                             * c_o(OSignedPartition([1], {1: 1}), q))
    b = o_order(3, q, 1) // (c_o(OSignedPartition([1, 1], {1: -1}), q)
                             * c_o(OSignedPartition([1], {1: -1}), q))
    assert a + b == 9


def test_c_sp_needs_odd_q():
    with pytest.raises(ValueError):
        c_sp(SpSignedPartition([1, 1]), 2)


def test_stong_examples():
    assert sum_inverse_c_series(2, 0)[0] == 1
    assert sum_inverse_c_series(2, 3)[1] == 1
    assert sum_inverse_c_series(3, 6) == stong_product_series(3, 6)


@pytest.mark.parametrize('Q', [2, 3, 4, 5, -2, -3, 9])
def test_stong_identity(Q):
    assert sum_inverse_c_series(Q, 8) == stong_product_series(Q, 8)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 9), st.integers(0, 10 ** 6))
def test_dual_of_dual(n, seed):
    parts = enumerate_partitions(n)
    lam = parts[seed % len(parts)]
    assert lam.dual().dual() == lam
    assert lam.dual().size == lam.size


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 8), st.integers(0, 10 ** 6), st.sampled_from([2, 3, 4, 5, -2, -3]))
def test_rewrites_agree(n, seed, Q):
    parts = enumerate_partitions(n)
    lam = parts[seed % len(parts)]
    direct, wall, dual = c_gl_rewrites(lam, Q)
    assert direct == wall == dual == Fraction(c_gl(lam, Q))
