from fractions import Fraction
from math import comb

import pytest

from curvecount.gw import (
    correspondence_check,
    dt_side_genus_coeff,
    eisenstein,
    gw_potential,
    renorm_remainder,
)
from curvecount.jacobi import eta24_inverse
from curvecount.numeric import bernoulli


def test_eisenstein_values():
    c4 = eisenstein(4, 2)
    assert c4[0] == Fraction(1, 2880)
    assert c4[1] == Fraction(1, 12)
    assert eisenstein(6, 2)[2] == Fraction(11, 120)


def test_eisenstein_odd_weight():
    with pytest.raises(ValueError):
        eisenstein(5, 3)


def test_f2_0_anchor_both_sides():
    assert gw_potential(2, 0)[0] == Fraction(1, 240)
    assert dt_side_genus_coeff(2, 0) == Fraction(1, 240)


def test_potential_factorization():
    for g in range(2, 5):
        pot = gw_potential(g, 3)
        const = Fraction(24 * (-1) ** g * comb(2 * g, 2)) * bernoulli(2 * g - 2) / (2 * g - 2)
        want = (eta24_inverse(3) * eisenstein(2 * g, 3).series).scale(const)
        assert pot.series == want


def test_remainder_support():
    assert renorm_remainder(0) == {}
    for d in range(4):
        assert set(renorm_remainder(d, 12)) <= set(range(1, d + 1))


def test_correspondence_grid():
    rep = correspondence_check(6, 3)
    assert rep.passed
    assert len(rep.records) == 5 * 4


def test_correspondence_degenerate_grids():
    rep = correspondence_check(2, 0)
    assert rep.passed and len(rep.records) == 1
    assert rep.records[0]["gw"] == Fraction(1, 240)
    empty = correspondence_check(1, 3)
    assert empty.passed and empty.records == []


def test_single_constant_reading_fails_from_degree_one():
    # one constant c_d on the whole renormalized sum gives 6/5 where the potential has 11/10
    assert gw_potential(2, 1)[1] == Fraction(11, 10)
    assert dt_side_genus_coeff(2, 1, scheme="single_constant") == Fraction(6, 5)
    assert dt_side_genus_coeff(2, 0, scheme="single_constant") == Fraction(1, 240)
    assert not correspondence_check(3, 1, scheme="single_constant").passed


def test_u_sign_flip_breaks_anchor():
    assert dt_side_genus_coeff(2, 0, flip_u_sign=True) == Fraction(-1, 240)


def test_genus_domain():
    with pytest.raises(ValueError):
        dt_side_genus_coeff(1, 0)
    with pytest.raises(ValueError):
        gw_potential(1, 2)
