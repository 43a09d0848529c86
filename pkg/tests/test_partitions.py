from fractions import Fraction
from itertools import count

import pytest
from hypothesis import given, settings, strategies as st

from curvecount.jacobi import macmahon
from curvecount.numeric import DualNumber, sigma
from curvecount.partitions import (
    EnumerationGuard,
    behrend_sign,
    count_partitions,
    dt_degree0,
    kummer_euler_characteristics,
    kummer_series,
    partition_counts,
    partition_series,
)
from curvecount.series import Factor, MultiSeries, product_eval, var


def euler_product(n_max):
    s = product_eval((Factor((m,), -1) for m in count(1)), (var("q", 0, n_max),))
    return [s.coeff((n,)) for n in range(n_max + 1)]


@pytest.mark.parametrize("d,n,v", [(2, 4, 5), (3, 2, 3), (3, 3, 6)])
def test_counts(d, n, v):
    assert count_partitions(d, n) == v


@pytest.mark.parametrize("d", range(1, 7))
def test_small_sizes(d):
    assert count_partitions(d, 1) == 1
    assert count_partitions(d, 2) == d


def test_one_dimensional():
    assert partition_counts(1, 20) == (1,) * 21


def test_two_dimensional_is_euler_product():
    assert list(partition_counts(2, 12)) == euler_product(12)
    assert list(partition_counts(2, 6)) == [1, 1, 2, 3, 5, 7, 11]


def test_three_dimensional_is_macmahon():
    m = macmahon(10)
    assert list(partition_counts(3, 10)) == [m.coeff((n,)) for n in range(11)]


def test_solid_partitions():
    # known counts of 4-dimensional order ideals (solid partitions)
    assert list(partition_counts(4, 6)) == [1, 1, 4, 10, 26, 59, 140]


def test_guard():
    with pytest.raises(EnumerationGuard):
        partition_counts(4, 30)
    assert partition_counts(4, 3, limit=3)[3] == 10


def test_partition_series_box():
    s = partition_series(3, 4)
    assert s.profile[0].hi == 4 and s.coeff((4,)) == 13


def test_kummer_abelian_surface():
    got = kummer_euler_characteristics(2, 1, 10)
    assert got[:4] == [1, Fraction(3, 2), Fraction(4, 3), Fraction(7, 4)]
    assert got == [Fraction(sigma(1, n), n) for n in range(1, 11)]


def test_kummer_k3xe():
    got = kummer_euler_characteristics(3, 24, 10)
    assert got == [Fraction(24 * sigma(2, n), n) for n in range(1, 11)]


def test_kummer_zero_euler():
    s = kummer_series(3, 0, 5)
    assert s == MultiSeries.one(s.profile, DualNumber(1))


@pytest.mark.parametrize("n,variant,v", [(1, "k3xe", 24), (1, "abelian", 1), (2, "abelian", Fraction(-5, 2)), (4, "k3xe", -126)])
def test_dt_degree0(n, variant, v):
    assert dt_degree0(n, variant) == v


def test_dt_degree0_ratio_and_sign():
    for n in range(1, 11):
        assert dt_degree0(n, "k3xe") == 24 * dt_degree0(n, "abelian")
        eul = kummer_euler_characteristics(3, 24, 10)[n - 1]
        assert behrend_sign(n) * eul == dt_degree0(n, "k3xe")


def test_dt_degree0_errors():
    with pytest.raises(ValueError):
        dt_degree0(0, "k3xe")
    with pytest.raises(ValueError):
        dt_degree0(1, "quintic")


@settings(max_examples=100, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(2, 3))
def test_power_axioms_on_partition_series(n, m, d):
    f = partition_series(d, 6)
    one = MultiSeries.one(f.profile)
    g = partition_series(2, 6)
    a, b = DualNumber(0, n), DualNumber(n, m)
    assert f.pow_ring(0) == one
    assert f.pow_ring(1) == f
    assert f.pow_ring(a) * g.pow_ring(a) == (f * g).pow_ring(a)
    assert f.pow_ring(a + b) == f.pow_ring(a) * f.pow_ring(b)
    assert f.pow_ring(a * b) == f.pow_ring(a).pow_ring(b)
