"""The Igusa cusp form chi_10 and the master table m(h, d, n).

``chi_10 = p t tt prod (1 - p^k t^h tt^d)^c(4hd - k^2)`` over ``h > 0 or
d > 0`` (all k) together with ``h = d = 0, k < 0``.  Only ``k = -1`` survives
in the last family, giving the prefactor ``p t tt (1 - 1/p)^2``.

``-1/chi_10`` is expanded in the region ``0 < |t| < |p| < 1``: the prefactor
inverts to ``-sum_{j>=1} j p^j`` (positive powers of p) and every other
factor is expanded in powers of its own monomial.  Then

    sum m(h, d, n) p^n t^(h-1) tt^(d-1) = -1/chi_10.

Window certificate.  ``c(4hd - k^2)`` vanishes unless ``k^2 <= 4hd + 1``, so
``|k| <= h + d`` for every factor, and any term of the product at (t, tt)
degree (a, b) has ``|p| <= a + b``.  With ``S = h_max + d_max`` the product
therefore fits in ``[-S, S]``, and ``m(h, d, n)`` for ``n <= n_max`` needs the
prefactor up to ``p^(n_max + S)``.  The module works in the wider window
``[-2(S + 2), n_max + 2(S + 2)]`` and certifies ``n`` in ``[-2(S + 2), n_max]``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .jacobi import c_table
from .series import Factor, MultiSeries, Var, multiply_factor
from .tables import CoeffTable

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IgusaConfig:
    h_max: int
    d_max: int
    n_max: int = 10
    p_lo: int | None = None
    p_hi: int | None = None

    def __post_init__(self):
        if self.h_max < 0 or self.d_max < 0:
            raise ValueError("h_max and d_max must be non-negative")
        need_lo, need_hi = self.required_window
        lo = need_lo if self.p_lo is None else self.p_lo
        hi = need_hi if self.p_hi is None else self.p_hi
        if lo > need_lo or hi < need_hi:
            raise ValueError(
                f"p-window [{lo}, {hi}] is narrower than the certified sufficiency bound "
                f"[{need_lo}, {need_hi}]"
            )
        object.__setattr__(self, "p_lo", lo)
        object.__setattr__(self, "p_hi", hi)

    @property
    def slack(self) -> int:
        return 2 * (self.h_max + self.d_max + 2)

    @property
    def required_window(self) -> tuple[int, int]:
        return (-self.slack, self.n_max + self.slack)

    @property
    def n_window(self) -> tuple[int, int]:
        return (self.p_lo, self.n_max)


def _factor_stream(cfg: IgusaConfig, c: CoeffTable):
    """Factors with (h, d) != (0, 0), ordered by h + d."""
    H, D = cfg.h_max, cfg.d_max
    for s in range(1, H + D + 1):
        for h in range(max(0, s - D), min(H, s) + 1):
            d = s - h
            kmax = isqrt(4 * h * d + 1)
            for k in range(-kmax, kmax + 1):
                e = c[4 * h * d - k * k]
                if e:
                    yield h, d, k, e


def _product(cfg: IgusaConfig, sign: int) -> MultiSeries:
    """prod_{(h,d) != (0,0)} (1 - p^k t^h tt^d)^(sign * c(4hd - k^2))."""
    c = c_table(max(4 * cfg.h_max * cfg.d_max, 0))
    box = (Var("p", cfg.p_lo, cfg.p_hi), Var("t", 0, cfg.h_max), Var("tt", 0, cfg.d_max))
    f = MultiSeries.one(box)
    nfac = 0
    for h, d, k, e in _factor_stream(cfg, c):
        f = multiply_factor(f, Factor((k, h, d), sign * e))
        nfac += 1
    log.debug("igusa product: %d factors, %d terms", nfac, len(f))
    return f


def chi10(cfg: IgusaConfig) -> MultiSeries:
    """Truncated chi_10 in the box p x t in [0, h_max+1] x tt in [0, d_max+1]."""
    prod = _product(cfg, +1)
    box = (Var("p", cfg.p_lo, cfg.p_hi), Var("t", 0, cfg.h_max + 1), Var("tt", 0, cfg.d_max + 1))
    lifted = MultiSeries(box, {(a, b + 1, e + 1): x for (a, b, e), x in prod.terms.items()})
    # p t tt (1 - 1/p)^2 = t tt (p - 2 + 1/p)
    lead = MultiSeries(box, {(1, 0, 0): 1, (0, 0, 0): -2, (-1, 0, 0): 1})
    return lead * lifted


def minus_inverse_chi10(cfg: IgusaConfig) -> MultiSeries:
    """-1/chi_10 in the box p x t in [-1, h_max-1] x tt in [-1, d_max-1], p <= n_max exact."""
    inv = _product(cfg, -1)
    box = inv.profile
    pref = MultiSeries(box, {(j, 0, 0): -j for j in range(1, cfg.p_hi + 1)})
    body = pref * inv
    out = (Var("p", cfg.p_lo, cfg.n_max), Var("t", -1, cfg.h_max - 1), Var("tt", -1, cfg.d_max - 1))
    return MultiSeries(out, {(a, b - 1, e - 1): x for (a, b, e), x in body.terms.items()})


@lru_cache(maxsize=8)
def m_table(cfg: IgusaConfig) -> CoeffTable:
    series = minus_inverse_chi10(cfg)
    values = {}
    for (n, a, b), x in series.terms.items():
        values[(a + 1, b + 1, n)] = x
    lo, hi = cfg.n_window
    return CoeffTable(
        name="m",
        axes=("h", "d", "n"),
        bounds={"h": (0, cfg.h_max), "d": (0, cfg.d_max), "n": (lo, hi)},
        values=values,
        meta={
            "source": "-1/chi_10, region 0<|t|<|p|<1",
            "p_window": [cfg.p_lo, cfg.p_hi],
            "sufficiency_bound": list(cfg.required_window),
        },
    )


def m_table_for(h_max: int, d_max: int, n_max: int) -> CoeffTable:
    """Smallest cached table covering the requested ranges."""
    return m_table(IgusaConfig(h_max, d_max, max(n_max, 1)))


def check_symmetry(table: CoeffTable) -> list[tuple]:
    """Entries where m(h, d, n) != m(d, h, n), both certified."""
    bad = []
    for (h, d, n), v in table.items():
        if (d, h, n) in table and table[d, h, n] != v:
            bad.append((h, d, n))
    return bad
