import pytest

from curvecount.igusa import IgusaConfig, check_symmetry, chi10, m_table, m_table_for, minus_inverse_chi10
from curvecount.jacobi import m_direct
from curvecount.series import MultiSeries, Var
from curvecount.tables import TableRangeError


@pytest.fixture(scope="module")
def table22():
    return m_table(IgusaConfig(2, 2, 10))


def test_config_window_defaults():
    cfg = IgusaConfig(2, 3, 5)
    assert cfg.required_window == (-14, 19)
    assert (cfg.p_lo, cfg.p_hi) == (-14, 19)


def test_config_rejects_narrow_window():
    with pytest.raises(ValueError):
        IgusaConfig(2, 2, 5, p_lo=-3)
    with pytest.raises(ValueError):
        IgusaConfig(-1, 2)


def test_config_allows_wider_window():
    cfg = IgusaConfig(1, 1, 4, p_lo=-40)
    assert cfg.n_window == (-40, 4)


def test_chi10_leading_terms():
    x = chi10(IgusaConfig(1, 1, 4))
    assert x[(1, 1, 1)] == 1
    assert x[(0, 1, 1)] == -2
    assert x[(-1, 1, 1)] == 1


def test_chi10_t_tt_symmetric():
    x = chi10(IgusaConfig(2, 2, 4))
    for (k, h, d), c in x.terms.items():
        assert x.coeff((k, d, h)) == c


def test_chi10_times_inverse_is_one():
    cfg = IgusaConfig(2, 2, 4)
    x = chi10(cfg)
    inv = minus_inverse_chi10(cfg).scale(-1)
    # lift both into a common box around t^0 tt^0
    box = (Var("p", cfg.p_lo, cfg.n_max), Var("t", -1, 1), Var("tt", -1, 1))
    prod = MultiSeries(box, x.terms) * MultiSeries(box, inv.terms)
    # chi10 reaches p^-1, so the product is exact only below the top p-edge
    near = [(e, c) for e, c in prod.terms.items() if e[1] <= 0 and e[2] <= 0 and abs(e[0]) < cfg.n_max]
    assert dict(near) == {(0, 0, 0): 1}


def test_prefactor_rows(table22):
    assert [table22[0, 0, n] for n in range(1, 6)] == [-n for n in range(1, 6)]
    assert table22[0, 0, 0] == 0 and table22[0, 0, -1] == 0
    assert table22[1, 0, 0] == -2
    assert [table22[1, 0, n] for n in range(1, 6)] == [-24 * n for n in range(1, 6)]


def test_agrees_with_weierstrass_route():
    tab = m_table(IgusaConfig(1, 5, 10))
    md = m_direct(5, -10, 10)
    for d in range(6):
        for n in range(-10, 11):
            assert tab[1, d, n] == md[d, n], (d, n)


def test_h_d_symmetry(table22):
    assert check_symmetry(table22) == []


def test_reads_outside_certified_range(table22):
    with pytest.raises(TableRangeError):
        table22[3, 0, 0]
    with pytest.raises(TableRangeError):
        table22[1, 1, 11]


def test_table_meta(table22):
    assert table22.meta["sufficiency_bound"] == [-12, 22]
    assert m_table_for(2, 2, 10) is table22


def test_negative_n_entries_are_exposed(table22):
    # m(h, d, n) versus m(h, d, -n) is left open; both sides are readable
    assert table22[2, 2, -3] is not None and table22[2, 2, 3] is not None
