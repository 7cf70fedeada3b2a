import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cycind import ffpoly
from cycind.ffpoly import (
    bar, enumerate_monic_irreducibles, enumerate_self_tilde_irreducibles, factor, field,
    irreducible_count, is_irreducible, polys_with_root_order, self_bar_count,
    self_tilde_count, tilde,
)


def brute_irreducibles(q, m):
    """Monic degree-m polynomials that are not a product of two lower-degree monics."""
    F = field(q)
    reducible = set()
    for a in range(1, m // 2 + 1):
        for f in ffpoly.monic_polys(F, a):
            for g in ffpoly.monic_polys(F, m - a):
                reducible.add(ffpoly.poly_mul(F, f, g))
    return [f for f in ffpoly.monic_polys(F, m) if f not in reducible]


def test_field_axioms_small():
    for q in (2, 3, 4, 5, 8, 9):
        F = field(q)
        for a in range(q):
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
                assert F.pow(a, q - 1) == 1


def test_bad_field_size():
    with pytest.raises(ValueError):
        field(6)
    with pytest.raises(ValueError):
        field(1)


def test_linear_over_f2():
    assert set(enumerate_monic_irreducibles(2, 1)) == {(0, 1), (1, 1)}


def test_quadratic_over_f2():
    assert enumerate_monic_irreducibles(2, 2) == [(1, 1, 1)]


def test_quadratics_over_f3():
    assert len(enumerate_monic_irreducibles(3, 2)) == 3


def test_counts_examples():
    assert irreducible_count(2, 1) == 1
    assert irreducible_count(2, 2) == 1
    assert irreducible_count(3, 4) == 18


@pytest.mark.parametrize('q,m', [(q, m) for q in (2, 3, 4) for m in (1, 2, 3, 4)])
def test_enumeration_matches_brute_force(q, m):
    assert sorted(enumerate_monic_irreducibles(q, m)) == sorted(brute_irreducibles(q, m))


def test_tilde_examples():
    F = field(4)
    w = 2  # a generator of F_4^*
    assert F.order(w) == 3
    assert tilde(F, (w, 1)) == (w, 1)
    assert tilde(F, (F.neg(1), 1)) == (F.neg(1), 1)
    f = (w, 1, 1)
    assert tilde(F, tilde(F, f)) == f


def test_bar_examples():
    F = field(3)
    assert bar(F, (2, 1)) == (2, 1)
    assert bar(F, (1, 1)) == (1, 1)
    assert bar(F, (1, 0, 1)) == (1, 0, 1)


def test_bar_linear_is_inverse_root():
    for q in (3, 5, 7):
        F = field(q)
        for a in range(1, q):
            # z - a  ->  z - a^{-1}
            assert bar(F, (F.neg(a), 1)) == (F.neg(F.inv(a)), 1)


def test_self_tilde_examples():
    assert self_tilde_count(2, 1) == 3
    assert self_tilde_count(2, 2) == 0
    assert self_tilde_count(2, 3) == 2
    assert len(enumerate_self_tilde_irreducibles(field(4), 3)) == 2


def test_self_bar_examples():
    assert self_bar_count(3, 1) == 2
    assert self_bar_count(3, 2) == 1
    assert self_bar_count(5, 2) == 2
    F = field(5)
    found = [f for f in enumerate_monic_irreducibles(F, 2) if bar(F, f) == f]
    assert sorted(found) == [(1, 1, 1), (1, 4, 1)]


def test_factor_examples():
    F2, F3 = field(2), field(3)
    assert dict(factor(F2, (0, 1, 1))) == {(0, 1): 1, (1, 1): 1}
    assert dict(factor(F2, (1, 0, 1))) == {(1, 1): 2}
    assert dict(factor(F3, (1, 0, 1))) == {(1, 0, 1): 1}


def test_root_order_counts():
    assert polys_with_root_order(4, 1, 3) == 2
    assert polys_with_root_order(3, 2, 4) == 1
    for Q in (2, 3, 4, 5):
        assert polys_with_root_order(Q, 1, 1) == 1


def test_root_order_brute():
    F = field(3)
    quad = [f for f in enumerate_monic_irreducibles(F, 2) if ffpoly.root_order(F, f) == 4]
    assert quad == [(1, 0, 1)]


def test_poly_text_roundtrip():
    for q in (3, 4, 9):
        F = field(q)
        for f in enumerate_monic_irreducibles(F, 2):
            assert ffpoly.parse_poly(F, ffpoly.format_poly(F, f)) == f
    with pytest.raises(ValueError):
        ffpoly.parse_poly(field(3), '1,2')


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 9]), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_tilde_is_involution_on_irreducibles(q, m, seed):
    F = field(q * q)
    irr = enumerate_monic_irreducibles(F, m)
    irr = [f for f in irr if f != (0, 1)]
    f = irr[seed % len(irr)]
    g = tilde(F, f)
    assert is_irreducible(F, g)
    assert tilde(F, g) == f


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 9]), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_bar_is_involution_on_irreducibles(q, m, seed):
    F = field(q)
    irr = [f for f in enumerate_monic_irreducibles(F, m) if f != (0, 1)]
    f = irr[seed % len(irr)]
    g = bar(F, f)
    assert is_irreducible(F, g)
    assert bar(F, g) == f


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 4]), st.lists(st.integers(0, 100), min_size=2, max_size=4))
def test_bar_is_multiplicative(q, picks):
    F = field(q)
    pool = [f for m in (1, 2) for f in enumerate_monic_irreducibles(F, m) if f != (0, 1)]
    fs = [pool[i % len(pool)] for i in picks]
    prod, prod_bar = (1,), (1,)
    for f in fs:
        prod = ffpoly.poly_mul(F, prod, f)
        prod_bar = ffpoly.poly_mul(F, prod_bar, bar(F, f))
    assert bar(F, prod) == prod_bar


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=4))
def test_factor_reassembles(q, picks):
    F = field(q)
    pool = [f for m in (1, 2, 3) for f in enumerate_monic_irreducibles(F, m)]
    f = (1,)
    for i in picks:
        f = ffpoly.poly_mul(F, f, pool[i % len(pool)])
    back = (1,)
    for phi, e in factor(F, f):
        assert is_irreducible(F, phi)
        back = ffpoly.poly_mul(F, back, ffpoly.poly_pow(F, phi, e))
    assert back == f


def test_irreducible_sort_order_is_stable():
    F = field(3)
    polys = list(itertools.chain.from_iterable(enumerate_monic_irreducibles(F, m) for m in (1, 2)))
    assert polys == sorted(polys, key=lambda f: ffpoly.poly_key(F, f))
