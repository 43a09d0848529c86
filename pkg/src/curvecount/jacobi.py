"""The named (p, t) series: Weierstrass p, phi_{-2,1}, and their tables.

Conventions follow the displayed expansions literally:

* ``wp = 1/12 + p/(1-p)^2 + sum_{d>=1} sum_{k|d} k (p^k - 2 + p^-k) t^d``;
  its t^0 row only has non-negative powers of p.
* ``phi = (p - 2 + 1/p) prod_m (1 - p t^m)^2 (1 - t^m/p)^2 / (1 - t^m)^4``.
* ``sum c(4d - k^2) p^k t^d = 24 phi wp`` and ``sum a(4d - r^2) p^r t^d = -phi``.
* ``sum m(d, n) p^n t^d = -24 wp / prod (1 - t^m)^24``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import count

from .numeric import divisors
from .series import Factor, MultiSeries, Var, product_eval, var
from .tables import CoeffTable


class WellDefinednessError(ArithmeticError):
    """Two coefficients that must agree through 4d - k^2 disagree."""


def _pt_profile(p_lo, p_hi, t_max):
    return (Var("p", p_lo, p_hi), var("t", 0, t_max))


def weierstrass_p(p_lo: int, p_hi: int, t_max: int) -> MultiSeries:
    if p_hi < 1:
        raise ValueError("the p-window must reach at least p^1")
    terms: dict = {(0, 0): Fraction(1, 12)}
    for j in range(1, p_hi + 1):
        if j >= p_lo:
            terms[(j, 0)] = j
    for d in range(1, t_max + 1):
        for k in divisors(d):
            for e, c in ((k, k), (0, -2 * k), (-k, k)):
                terms[(e, d)] = terms.get((e, d), 0) + c
    return MultiSeries(_pt_profile(p_lo, p_hi, t_max), terms)


def _phi_factors():
    for m in count(1):
        yield Factor((1, m), 2)
        yield Factor((-1, m), 2)
        yield Factor((0, m), -4)


def phi_m21(p_lo: int, p_hi: int, t_max: int) -> MultiSeries:
    """Weak Jacobi form of weight -2 and index 1."""
    need = t_max + 1
    if p_lo > -need or p_hi < need:
        raise ValueError(
            f"p-window [{p_lo}, {p_hi}] cannot hold the t^{t_max} rows; need [-{need}, {need}]"
        )
    # partial products in t-degree s only reach |p| <= s, so this window is exact
    work = _pt_profile(-need, need, t_max)
    prod = product_eval(_phi_factors(), work)
    lead = MultiSeries(work, {(1, 0): 1, (0, 0): -2, (-1, 0): 1})
    phi = lead * prod
    return MultiSeries(_pt_profile(p_lo, p_hi, t_max), phi.terms)


def _read_table(name, series: MultiSeries, t_max: int, k_max: int, bound: int) -> CoeffTable:
    values: dict = {}
    witness: dict = {}
    for d in range(t_max + 1):
        for k in range(-k_max, k_max + 1):
            m = 4 * d - k * k
            c = series.coeff((k, d))
            if m < -1:
                if c:
                    raise WellDefinednessError(f"{name}({m}) = {c} at (d={d}, k={k}); expected 0")
                continue
            if m in values:
                if values[m] != c:
                    raise WellDefinednessError(
                        f"{name}({m}) is {values[m]} at {witness[m]} but {c} at (d={d}, k={k})"
                    )
            else:
                values[m] = c
                witness[m] = (d, k)
    top = max(bound, 4 * t_max)
    return CoeffTable(
        name=name,
        axes=("m",),
        bounds={"m": (None, top)},
        values={(m,): _exact(v) for m, v in values.items() if v},
        meta={"grid": {"d": [0, t_max], "k": [-k_max, k_max]}},
    )


def _exact(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


def _grid(bound: int, k_max: int | None):
    if bound < -1:
        raise ValueError("table bound must be >= -1")
    t_max = max(0, (bound + 1) // 4)
    if k_max is None:
        k_max = 2 * t_max + 2
    return t_max, max(k_max, 1)


@lru_cache(maxsize=16)
def c_table(bound: int, k_max: int | None = None) -> CoeffTable:
    """c(m) for all m <= bound, read off 24 phi wp and checked for consistency."""
    t_max, k_max = _grid(bound, k_max)
    # phi rows are finite, so a wide phi window is exact; wp's t^0 row is
    # one-sided and infinite and must reach p^(k_max + t_max + 1)
    w = k_max + t_max + 1
    phi = phi_m21(-w, w, t_max)
    wp24 = weierstrass_p(-w, w, t_max).scale(24)
    out_box = _pt_profile(-k_max, k_max, t_max)
    prod = MultiSeries(out_box, (phi * wp24).terms)
    return _read_table("c", prod, t_max, k_max, bound)


@lru_cache(maxsize=16)
def a_table(bound: int, k_max: int | None = None) -> CoeffTable:
    """a(m) for all m <= bound, read off -phi."""
    t_max, k_max = _grid(bound, k_max)
    w = max(k_max, t_max + 1)
    phi = phi_m21(-w, w, t_max)
    return _read_table("a", -phi, t_max, k_max, bound)


@lru_cache(maxsize=16)
def eta24_inverse(t_max: int) -> MultiSeries:
    """prod_{m>=1} (1 - t^m)^-24, whose coefficients are the a_d."""
    return product_eval((Factor((m,), -24) for m in count(1)), (var("t", 0, t_max),))


def euler_numbers_hilb_k3(d_max: int) -> list[int]:
    s = eta24_inverse(d_max)
    return [s.coeff((d,)) for d in range(d_max + 1)]


@lru_cache(maxsize=16)
def macmahon(q_max: int, sign: int = 1) -> MultiSeries:
    """M(q) = prod (1 - q^n)^-n; ``sign=-1`` gives M(-q)."""
    return product_eval(
        (Factor((n,), -n, coeff=sign**n) for n in count(1)), (var("q", 0, q_max),)
    )


@lru_cache(maxsize=16)
def m_direct(d_max: int, n_min: int | None = None, n_max: int = 10) -> CoeffTable:
    """m(d, n) from -24 wp / prod (1 - t^m)^24 on 0 <= d <= d_max, n_min <= n <= n_max."""
    if n_min is None:
        n_min = -d_max
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    wp = weierstrass_p(n_min, n_max, d_max)
    eta = eta24_inverse(d_max)
    # the eta factor has no p, so lift it into the (p, t) box and multiply
    lifted = MultiSeries(wp.profile, {(0, d): c for (d,), c in eta.terms.items()})
    series = (wp * lifted).scale(-24)
    values = {}
    for (n, d), c in series.terms.items():
        if c:
            values[(d, n)] = _exact(c)
    return CoeffTable(
        name="m_direct",
        axes=("d", "n"),
        bounds={"d": (0, d_max), "n": (n_min, n_max)},
        values=values,
        meta={"source": "-24 wp / prod (1-t^m)^24"},
    )


def m_divisor_formula(d: int, ell: int, a: list[int] | None = None) -> int:
    """m(d, l) = -24 l sum_{d1+d2=d, d1=0 or l|d1} a_{d2}, valid for l >= 1."""
    if ell < 1:
        raise ValueError("the divisor formula holds for l >= 1 only")
    if a is None:
        a = euler_numbers_hilb_k3(d)
    total = a[d]
    for d1 in range(ell, d + 1, ell):
        total += a[d - d1]
    return -24 * ell * total


def row_is_symmetric(f: MultiSeries, t_degree: int) -> bool:
    """Is the t^d row invariant under p -> 1/p inside the window?"""
    ip, it = f.index("p"), f.index("t")
    pv = f.profile[ip]
    reach = min(-pv.lo, pv.hi)
    for e, c in f.terms.items():
        if e[it] != t_degree or abs(e[ip]) > reach:
            continue
        mirror = list(e)
        mirror[ip] = -e[ip]
        if f.terms.get(tuple(mirror), 0) != c:
            return False
    return True
