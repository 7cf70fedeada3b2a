from fractions import Fraction

import pytest

from cycind import series
from cycind.classdata import GroupId, enumerate_classes
from cycind.ffpoly import field
from cycind.series import (
    PROPERTIES, Weight, charpoly_by_series, charpoly_count, cycle_index_series,
    finite_n_probability, jordan_block_mean, limit_interval, limit_probability,
    weyl_limit_distance,
)


def test_total_mass():
    s = cycle_index_series('GL', 2, Weight.one(), 4)
    assert list(s) == [1] * 5
    sp = cycle_index_series('Sp', 3, Weight.one(), 4)
    assert list(sp) == [1, 0, 1, 0, 1]
    o = cycle_index_series('O', 3, Weight.one(), 5)
    assert list(o) == [1] + [2] * 5


def test_semisimple_coefficient():
    s = cycle_index_series('GL', 2, Weight.predicate('semisimple'), 2)
    assert s[2] == Fraction(1, 2)


def test_gl22_probabilities():
    assert finite_n_probability('GL', 2, 2, 'semisimple') == Fraction(1, 2)
    assert finite_n_probability('GL', 2, 2, 'regular') == Fraction(5, 6)
    assert finite_n_probability('GL', 2, 2, 'regular-semisimple') == Fraction(1, 3)


def test_non_slotwise_predicate_rejected():
    with pytest.raises(ValueError):
        finite_n_probability('GL', 2, 2, 'cyclic-of-order-3')


def _enumerated_average(g, pred):
    from cycind.classdata import acting_order
    tot = Fraction(0)
    for d, size in enumerate_classes(g):
        if all(pred(lam) for lam in d.unsigned().values()):
            tot += size
    return tot / acting_order(g)


@pytest.mark.parametrize('fam,n,q', [
    ('GL', 3, 3), ('GL', 4, 2), ('Mat', 3, 2), ('U', 3, 2), ('U', 4, 2),
    ('Sp', 4, 3), ('Sp', 6, 3), ('Sp', 4, 5),
])
def test_series_matches_class_enumeration(fam, n, q):
    g = GroupId(fam, n, q)
    for name, pred in PROPERTIES.items():
        s = cycle_index_series(fam, q, Weight.predicate(name), n)
        assert s[n] == _enumerated_average(g, pred), name


@pytest.mark.parametrize('n,q', [(3, 3), (4, 3), (5, 3), (4, 5)])
def test_orthogonal_series_sums_both_groups(n, q):
    for name, pred in PROPERTIES.items():
        s = cycle_index_series('O', q, Weight.predicate(name), n)
        both = (_enumerated_average(GroupId('Oplus', n, q), pred)
                + _enumerated_average(GroupId('Ominus', n, q), pred))
        assert s[n] == both


def test_mat_probability_normalization():
    # plain count over all 16 matrices of Mat(2,2)
    import itertools
    import numpy as np
    from cycind.oracle import rcf_data
    F = field(2)
    count = 0
    for entries in itertools.product(range(2), repeat=4):
        M = np.array(entries).reshape(2, 2)
        if all(PROPERTIES['semisimple'](lam) for lam in rcf_data(F, M).values()):
            count += 1
    assert finite_n_probability('Mat', 2, 2, 'semisimple') == Fraction(count, 16)


def test_limits():
    mid, half = limit_probability('rss-GL', 2)
    assert mid == Fraction(1, 2) and half == 0
    lo, hi = limit_interval('reg-GL', 2)
    assert lo <= Fraction(31, 36) <= hi
    lo, hi = limit_interval('ss-Mat', 2, Fraction(1, 10 ** 9))
    assert hi - lo < Fraction(1, 10 ** 9)
    # rss-Mat tends to 1 as q grows
    assert limit_probability('rss-Mat', 101)[0] > Fraction(98, 100)


def test_limit_contains_late_finite_values():
    for kind in series.LIMIT_KINDS:
        lo, hi = limit_interval(kind, 3)
        last = series.finite_sequence(kind, 3, 20)[-1]
        assert abs(float(last) - float(lo + hi) / 2) < 1e-6, kind


def test_charpoly_examples():
    assert charpoly_count('GL', 2, (1, 0, 1)) == 4
    assert charpoly_count('GL', 2, (1, 1, 1)) == 2
    assert charpoly_count('Sp', 3, (1, 0, 1)) == 6


@pytest.mark.parametrize('fam,q,phi', [
    ('GL', 3, (2, 0, 1)), ('GL', 2, (1, 1, 1, 1)), ('GL', 3, (1, 1, 0, 1)),
    ('U', 2, (1, 1)), ('U', 2, (1, 0, 1)), ('U', 3, (1, 0, 1)),
    ('Sp', 3, (1, 1, 0, 1, 1)), ('Sp', 3, (1, 2, 1)), ('Sp', 5, (1, 0, 1)),
    ('O', 3, (2, 1, 2, 1)), ('O', 3, (1, 0, 1)), ('O', 5, (4, 3, 1)),
])
def test_charpoly_two_routes(fam, q, phi):
    assert charpoly_count(fam, q, phi) == charpoly_by_series(fam, q, phi)


def test_steinberg():
    for fam, n, q in (('GL', 3, 2), ('GL', 5, 2), ('U', 4, 2), ('Sp', 6, 3), ('O', 5, 3), ('O', 6, 3)):
        count, target = series.steinberg_identity(fam, n, q)
        assert count == target


def test_jordan_examples():
    for q in (2, 3, 5):
        assert jordan_block_mean('GL', 1, q) == 1
    assert jordan_block_mean('GL', 2, 2) == Fraction(5, 3)
    assert jordan_block_mean('U', 1, 2) == 1


def test_gl_jordan_closed_form():
    means = series.jordan_block_means('GL', 2, 12)
    for n in range(1, 13):
        assert means[n] == series.gl_jordan_mean_closed_form(n, 2)


def test_weyl_examples():
    dist = series.factorization_type_distribution(2, 3)
    assert dist[(0, 1)] == Fraction(3, 8)  # one irreducible quadratic
    for q in (2, 3, 5):
        assert weyl_limit_distance(1, q) == 0
    assert weyl_limit_distance(2, 101) < weyl_limit_distance(2, 3)


def test_avg_order_examples():
    assert series.avg_order_lower_bound('U', 1, 2) == 2
    assert series.avg_order_lower_bound('Sp', 2, 3) == 1
    assert series.avg_order_lower_bound('U', 2, 2) == 1


def test_gordon_examples():
    ok, lhs, rhs = series.gordon_check(2, 2, 10)
    assert ok and lhs[5] == rhs[5] == 2
    assert series.gordon_check(2, 1, 5)[1][0] == 1
    assert series.gordon_check(3, 3, 20)[0]


def test_product_lemmas():
    assert series.allpoly_check(2, 3, 12)
    assert series.allpoly_check(3, 2, 10)


def test_neumann_praeger():
    for n in range(2, 9):
        for q in (2, 3):
            assert series.neumann_praeger_check(n, q)['ok']


def test_csv_columns():
    text = series.probability_rows_csv([('GL', 2, 2, 'semisimple', Fraction(1, 2))])
    assert text.splitlines() == ['family,n,q,property,exact,decimal',
                                 'GL,2,2,semisimple,1/2,0.5']


def test_even_q_rejected():
    with pytest.raises(ValueError):
        cycle_index_series('Sp', 4, Weight.one(), 4)
