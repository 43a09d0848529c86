"""Genus expansion of the K3 x E potential on both sides of the asymptotic correspondence.

GW side: renormalized Eisenstein series ``C_k`` assembled into

    F^g(t) = 24 / prod(1 - t^m)^24 * (-1)^g B_{2g-2} / (2g - 2) * binom(2g, 2) * C_{2g}(t).

DT side: expanding ``-log(1 - p^l)`` at ``p = e^{iu}`` and collecting ``u^{2g-2}``
leaves divergent sums ``sum_l m(d, l) l^{2g-2}``.  Splitting

    m(d, l) = -24 a_d l + r(d, l),      r(d, l) = 0 for l > d,

the linear tail is renormalized with ``sum_l l^s -> zeta(-s)`` and the remainder is a
finite sum.  The tail is ``a_d`` copies of the degree-0 series, so by default it
carries the degree-0 constant ``c_0 = -1/2``; the remainder carries ``c_d``.
``scheme='single_constant'`` applies ``c_d`` to both pieces instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .jacobi import eta24_inverse, euler_numbers_hilb_k3, m_direct
from .numeric import bernoulli, sigma, zeta_negative
from .report import Report
from .series import MultiSeries, var

SCHEMES = ("split_tail", "single_constant")


@dataclass(frozen=True)
class EisensteinSeries:
    weight: int
    series: MultiSeries

    def __getitem__(self, n: int):
        return self.series.coeff((n,))


def eisenstein(k: int, t_max: int) -> EisensteinSeries:
    """C_k(t) = -B_k/(k k!) + (2/k!) sum_n sigma_{k-1}(n) t^n."""
    if k % 2 or k < 2:
        raise ValueError(f"C_k needs an even weight k >= 2, got {k}")
    terms = {(0,): -bernoulli(k) / (k * factorial(k))}
    for n in range(1, t_max + 1):
        terms[(n,)] = Fraction(2 * sigma(k - 1, n), factorial(k))
    return EisensteinSeries(k, MultiSeries((var("t", 0, t_max),), terms))


@dataclass(frozen=True)
class GWPotential:
    genus: int
    series: MultiSeries

    def __getitem__(self, d: int) -> Fraction:
        return self.series.coeff((d,))


def gw_potential(g: int, d_max: int) -> GWPotential:
    if g < 2:
        raise ValueError("the reduced potential is defined for g >= 2")
    const = Fraction(24 * (-1) ** g * comb(2 * g, 2)) * bernoulli(2 * g - 2) / (2 * g - 2)
    series = (eta24_inverse(d_max) * eisenstein(2 * g, d_max).series).scale(const)
    return GWPotential(g, series)


# -- DT side ----------------------------------------------------------------------


def _m_rows(d_max: int, ell_max: int):
    return m_direct(d_max, 0, ell_max)


def renorm_remainder(d: int, ell_max: int | None = None) -> dict[int, Fraction]:
    """r(d, l) = m(d, l) + 24 a_d l for 1 <= l <= ell_max, checked to vanish for l > d."""
    ell_max = max(ell_max or 0, d + 4)
    m = _m_rows(d, ell_max)
    a_d = euler_numbers_hilb_k3(d)[d]
    r = {ell: m[d, ell] + 24 * a_d * ell for ell in range(1, ell_max + 1)}
    stray = [ell for ell, v in r.items() if ell > d and v]
    if stray:
        raise ArithmeticError(f"r({d}, l) is nonzero beyond l = d at l = {stray}")
    return {ell: v for ell, v in r.items() if ell <= d}


def _genus_prefactor(g: int, flip_u_sign: bool) -> Fraction:
    k = 2 * g - 2
    # (i u)^(2g-2) contributes (-1)^(g-1); together with the -log expansion this is (-1)^g
    sign = (-1) ** g * (-1 if flip_u_sign else 1)
    return sign * bernoulli(k) / (factorial(k) * k)


def dt_side_genus_coeff(g: int, d: int, scheme: str = "split_tail", flip_u_sign: bool = False) -> Fraction:
    if g < 2:
        raise ValueError("only genus g >= 2 terms are renormalized")
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}")
    K = _genus_prefactor(g, flip_u_sign)
    a_d = euler_numbers_hilb_k3(d)[d]
    tail = -24 * a_d * zeta_negative(2 * g - 1)
    finite = sum((v * ell ** (2 * g - 2) for ell, v in renorm_remainder(d).items()), Fraction(0))
    c0, cd = Fraction(-1, 2), (Fraction(-1, 2) if d == 0 else Fraction(-1))
    if scheme == "split_tail":
        return K * (c0 * tail + cd * finite)
    return K * cd * (tail + finite)


def correspondence_check(g_max: int, d_max: int, scheme: str = "split_tail") -> Report:
    rep = Report("gw-check", {"g_max": g_max, "d_max": d_max, "scheme": scheme})
    if g_max < 2 or d_max < 0:
        return rep.finish()
    bad = []
    for g in range(2, g_max + 1):
        pot = gw_potential(g, d_max)
        for d in range(d_max + 1):
            gw, dt = pot[d], dt_side_genus_coeff(g, d, scheme)
            rep.add({"g": g, "d": d, "gw": gw, "dt": dt, "equal": gw == dt})
            if gw != dt:
                bad.append((g, d))
    rep.check("GW = renormalized DT on the grid", not bad, f"differ at {bad}" if bad else "")
    return rep.finish()
