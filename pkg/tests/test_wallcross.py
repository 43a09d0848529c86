from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from curvecount.numeric import BiDualNumber, sigma
from curvecount.wallcross import (
    BiWallcrossInput,
    WallcrossInput,
    abelian_input,
    bidual_assemble,
    dual_assemble,
    dt_abelian_wallcross,
    dt_k3xe_wallcross,
    hilb_quotient_euler,
    k3xe_input,
    l_k3xe,
    l_red_k3xe,
    n_red_abelian,
    n_red_k3xe,
)


@pytest.mark.parametrize("n,d,v", [(1, 0, 24), (2, 2, 30), (3, 1, Fraction(8, 3))])
def test_n_red(n, d, v):
    assert n_red_k3xe(n, d) == v


def test_n_red_domain():
    with pytest.raises(ValueError):
        n_red_k3xe(0, 1)
    with pytest.raises(ValueError):
        WallcrossInput(1, 1, n_red={(0, 1): 1})


def test_l_tables():
    assert l_k3xe(0, 1) == 24
    assert all(l_k3xe(1, d) == 0 for d in range(5))
    assert all(l_red_k3xe(n, d) == 0 for n in range(4) for d in range(4))


def test_degree0_column():
    out = dt_k3xe_wallcross(4, 0)
    assert [out[(n, 0)] for n in range(1, 5)] == [24, -60, 80, -126]


def test_first_curve_class():
    out = dt_k3xe_wallcross(2, 1)
    # 24 (a_1 sigma_2(1) + a_0 sigma_2(1))
    assert out[(1, 1)] == 600
    assert out[(2, 1)] == -1452


def test_zero_input_gives_zero():
    inp = WallcrossInput(3, 2, n_red={}, l={(0, 0): 1}, l_red={})
    assert set(dual_assemble(inp).values()) == {0}


def test_grid_overflow():
    with pytest.raises(ValueError):
        dual_assemble(WallcrossInput(2, 2, n_red={(3, 0): 1}))


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 3))
def test_linear_in_n_red(scale):
    base = k3xe_input(4, 0)
    scaled = WallcrossInput(4, 0, n_red={k: scale * v for k, v in base.n_red.items()}, l=base.l, l_red=base.l_red)
    a, b = dual_assemble(base), dual_assemble(scaled)
    assert all(b[k] == scale * a[k] for k in a)


@pytest.mark.parametrize("d,v", [(1, 1), (2, Fraction(3, 2)), (6, 2)])
def test_hilb_quotient_euler(d, v):
    assert hilb_quotient_euler(d) == v


def test_hilb_quotient_euler_is_sigma1_over_d():
    assert [hilb_quotient_euler(d) for d in range(1, 11)] == [Fraction(sigma(1, d), d) for d in range(1, 11)]


def test_abelian_anchors():
    out = dt_abelian_wallcross(3, 3)
    assert all(out[(1, d)] == 1 for d in range(4))
    assert out[(2, 2)] == Fraction(-5, 2)
    assert out[(3, 3)] == Fraction(10, 3)


def test_abelian_matches_reduced_formula():
    out = dt_abelian_wallcross(8, 6)
    for (n, d), v in out.items():
        assert v == (-1) ** (n - 1) * n * n_red_abelian(n, d)


def test_bidual_input_lines():
    inp = abelian_input(3, 3)
    assert all(v.c00 == v.c10 == v.c01 == 0 for v in inp.n_bullet.values())
    assert all(v.c01 == v.c11 == 0 for v in inp.l_bullet.values())


def test_eps1_only_l_has_no_e1e2_part():
    inp = BiWallcrossInput(3, 2, n_bullet={}, l_bullet={(0, 0): BiDualNumber(1), (0, 1): BiDualNumber(0, 5)})
    assert all(v.c11 == 0 for v in bidual_assemble(inp).values())
