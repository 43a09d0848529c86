from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvecount.igusa import IgusaConfig, m_table
from curvecount.invariants import (
    AbelianClass,
    InadmissibleClass,
    K3xEClass,
    dt_abelian,
    dt_k3xe_0d,
    dtpt_abelian,
    dtpt_verify_k3xe,
    mc_k3xe,
    n_factor,
    pt_k3xe_0d,
    verify_abelian_routes,
    verify_k3xe_routes,
)
from curvecount.jacobi import a_table, m_direct
from curvecount.numeric import gcd_ext, sigma


def test_class_validation():
    with pytest.raises(InadmissibleClass):
        K3xEClass(0, 3)
    with pytest.raises(InadmissibleClass):
        K3xEClass(1, 0, beta_sq=3)
    with pytest.raises(InadmissibleClass):
        K3xEClass(1, 0, beta_sq=-4)
    with pytest.raises(InadmissibleClass):
        K3xEClass(1, 0, beta_sq=4, beta_div=2)  # 4 / 4 = 1 is odd
    K3xEClass(0, 0, beta_sq=-2)
    with pytest.raises(InadmissibleClass):
        AbelianClass(0, 0, 0, 3)
    with pytest.raises(InadmissibleClass):
        AbelianClass(1, -1, 0, 0)
    AbelianClass(0, 1, 1, 0)


@pytest.mark.parametrize("n,d,v", [(1, 0, 24), (2, 0, -60), (3, 0, 80), (1, 1, 600)])
def test_dt_k3xe_values(n, d, v):
    for route in ("closed_formula", "product_log", "wall_crossing", "multiple_cover"):
        assert dt_k3xe_0d(n, d, route) == v


def test_dt_2_1_from_m_table():
    m = m_direct(1, -1, 2)
    want = m[1, 2] + Fraction(m[1, 1], 2)
    assert m[1, 1] == -600
    assert dt_k3xe_0d(2, 1) == want
    assert dt_k3xe_0d(2, 1, "product_log") == want


def test_dt_k3xe_rejects_nonpositive_n():
    with pytest.raises(InadmissibleClass):
        dt_k3xe_0d(0, 1)
    with pytest.raises(ValueError):
        dt_k3xe_0d(1, 1, "guess")


def test_gcd_divisor_rule_differs_and_n_rule_matches_log():
    # at (2, 1) the gcd reading drops the k = 2 term
    assert dt_k3xe_0d(2, 1, divisor_rule="gcd") != dt_k3xe_0d(2, 1, "product_log")
    assert dt_k3xe_0d(2, 2, divisor_rule="gcd") == dt_k3xe_0d(2, 2, "product_log")


def test_mc_primitive_single_term():
    tab = m_table(IgusaConfig(3, 2, 10))
    c = K3xEClass(3, 2, beta_sq=4, beta_div=1)
    assert mc_k3xe(c) == -tab[3, 2, 3]


def test_mc_minus_two_curve():
    assert mc_k3xe(K3xEClass(1, 0, beta_sq=-2, beta_div=1)) == 1


def test_mc_imprimitive():
    c = K3xEClass(2, 1, beta_sq=8, beta_div=2)
    tab = m_table(IgusaConfig(5, 1, 10))
    assert mc_k3xe(c) == tab[5, 1, 2] + Fraction(tab[2, 1, 1], 2)


def test_mc_negative_n_is_exact_integer_sign():
    v = mc_k3xe(K3xEClass(-1, 1, beta_sq=0))
    assert isinstance(v, Fraction)


def test_mc_zero_class_on_grid():
    for n in range(1, 11):
        for d in range(6):
            assert mc_k3xe(K3xEClass(n, d)) == dt_k3xe_0d(n, d)


@pytest.mark.parametrize("args,v", [((1, 1, 1, 1), 1), ((2, 2, 2, 2), 5), ((0, 0, 6, 2), 5), ((0, 0, 3, 2), 1)])
def test_n_factor(args, v):
    assert n_factor(*args) == v


def test_n_factor_non_integral_is_zero():
    # d1 d2 / k = 1/2
    assert n_factor(1, 1, 2, 2) == 0


def test_dt_abelian_anchors():
    for d in range(7):
        assert dt_abelian(AbelianClass(1, 0, 0, d), "closed_formula") == 1
        assert dt_abelian(AbelianClass(1, 0, 0, d), "multiple_cover") == 1
    assert dt_abelian(AbelianClass(2, 0, 0, 2), "closed_formula") == Fraction(-5, 2)
    assert dt_abelian(AbelianClass(1, 1, 1, 1)) == 8


def test_dt_abelian_type_order_irrelevant():
    for perm in ((0, 0, 4), (0, 4, 0), (4, 0, 0)):
        assert dt_abelian(AbelianClass(2, *perm)) == dt_abelian(AbelianClass(2, 0, 0, 4), "closed_formula")


def test_closed_formula_domain():
    with pytest.raises(InadmissibleClass):
        dt_abelian(AbelianClass(1, 1, 1, 1), "closed_formula")


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 6))
def test_abelian_specialization_collapses_to_k_equals_n(n, d):
    # only k = n survives, with a(-1) = -1, and n_factor gives sigma_2(gcd(n, d))
    a = a_table(0)
    c = AbelianClass(n, 0, 0, d)
    single = (-1) ** n * Fraction(n_factor(0, 0, d, n) * a[-1], n)
    assert dt_abelian(c, "multiple_cover") == single
    assert single == Fraction((-1) ** (n - 1) * sigma(2, gcd_ext(n, d)), n)


def test_pt_degree_zero_vanishes():
    assert [pt_k3xe_0d(n, 0) for n in range(1, 9)] == [0] * 8


def test_dtpt_identity():
    rep = dtpt_verify_k3xe(1, 8)
    assert rep.passed


def test_dtpt_abelian():
    for c, v in ((AbelianClass(1, 0, 0, 1), 1), (AbelianClass(2, 0, 0, 2), Fraction(-5, 2))):
        out = dtpt_abelian(c)
        assert out["equal"] and out["dt"] == v == out["pt"]


def test_dtpt_abelian_degree_zero():
    # the quotient by the degree-0 series removes the whole (n, 0) column
    out = dtpt_abelian(AbelianClass(3, 0, 0, 0))
    assert out["dt"] == Fraction(10, 3)
    assert out["pt"] == 0 and not out["equal"]


def test_verifiers_small():
    r1 = verify_k3xe_routes(4, 2)
    assert r1.passed and r1.config["k_divides_gcd_variant_differs_at"] > 0
    assert verify_abelian_routes(4, 3).passed
