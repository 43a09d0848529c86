"""Dual-number wall-crossing assembly of reduced DT series.

K3 x E: ``DT^red_{n,(0,d)}`` is the eps-coefficient of

    exp(sum_{n>0,d} (-1)^(n-1) n N^red_{n,d} eps q^n t^d) * sum (L + L^red eps) q^n t^d

Abelian threefolds, ``A = B x E``: over Q[e1, e2]/(e1^2, e2^2),

    sum DT^bullet q^n t^d = exp(sum (-1)^(n-1) n N^bullet q^n t^d) * sum L^bullet q^n t^d

and ``DT^{A-red}`` is the e1*e2 component.  The N and L tables are injected
data; the helpers below build the ones the geometry supplies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .jacobi import euler_numbers_hilb_k3
from .numeric import BiDualNumber, DualNumber, gcd_ext, sigma
from .partitions import partition_series
from .series import MultiSeries, var


@dataclass
class WallcrossInput:
    n_max: int
    d_max: int
    n_red: dict = field(default_factory=dict)
    l: dict = field(default_factory=dict)
    l_red: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(n < 1 for n, _ in self.n_red):
            raise ValueError("N^red is only defined for n >= 1")


@dataclass
class BiWallcrossInput:
    n_max: int
    d_max: int
    n_bullet: dict = field(default_factory=dict)
    l_bullet: dict = field(default_factory=dict)


def n_red_k3xe(n: int, d: int) -> Fraction:
    """N^red_{n,(0,d)} = 24/n^2 * sigma_2(gcd(n, d))."""
    if n < 1:
        raise ValueError("N^red needs n >= 1")
    return Fraction(24 * sigma(2, gcd_ext(n, d)), n * n)


def n_red_abelian(n: int, d: int) -> Fraction:
    """N^{A-red}_{n,(0,0,d)} = sigma_2(gcd(n, d))/n^2."""
    if n < 1:
        raise ValueError("N^{A-red} needs n >= 1")
    return Fraction(sigma(2, gcd_ext(n, d)), n * n)


def l_k3xe(n: int, d: int, a: list | None = None) -> int:
    """L_{n,(0,d)}: the q^n t^d coefficient of prod (1 - t^m)^-24 (so zero unless n = 0)."""
    if n != 0:
        return 0
    if a is None:
        a = euler_numbers_hilb_k3(d)
    return a[d]


def l_red_k3xe(n: int, d: int) -> int:
    return 0


def hilb_quotient_euler(d: int) -> Fraction:
    """e(Hilb^d(B)/B) for an abelian surface B: the q^d coefficient of log sum P_2(n) q^n."""
    if d < 1:
        raise ValueError("d must be positive")
    return Fraction(partition_series(2, d).log().coeff((d,)))


def k3xe_input(n_max: int, d_max: int) -> WallcrossInput:
    a = euler_numbers_hilb_k3(d_max)
    grid = [(n, d) for n in range(0, n_max + 1) for d in range(d_max + 1)]
    return WallcrossInput(
        n_max,
        d_max,
        n_red={(n, d): n_red_k3xe(n, d) for n, d in grid if n >= 1},
        l={(n, d): l_k3xe(n, d, a) for n, d in grid},
        l_red={(n, d): l_red_k3xe(n, d) for n, d in grid},
    )


def abelian_input(n_max: int, d_max: int) -> BiWallcrossInput:
    n_b = {}
    l_b = {}
    for d in range(d_max + 1):
        for n in range(1, n_max + 1):
            n_b[(n, d)] = BiDualNumber(0, 0, 0, n_red_abelian(n, d))
        l_b[(0, d)] = BiDualNumber(1) if d == 0 else BiDualNumber(0, hilb_quotient_euler(d))
    return BiWallcrossInput(n_max, d_max, n_bullet=n_b, l_bullet=l_b)


def _profile(n_max, d_max):
    return (var("q", 0, n_max), var("t", 0, d_max))


def _check_grid(inp, tables):
    for name, tab in tables.items():
        for n, d in tab:
            if not (0 <= n <= inp.n_max and 0 <= d <= inp.d_max):
                raise ValueError(f"{name} entry {(n, d)} overflows the grid {inp.n_max}x{inp.d_max}")


def dual_assemble(inp: WallcrossInput) -> dict:
    """DT^red_{n,(0,d)} for 1 <= n <= n_max, 0 <= d <= d_max."""
    _check_grid(inp, {"n_red": inp.n_red, "l": inp.l, "l_red": inp.l_red})
    prof = _profile(inp.n_max, inp.d_max)
    expo = MultiSeries(
        prof,
        {(n, d): DualNumber(0, (-1) ** (n - 1) * n * v) for (n, d), v in inp.n_red.items()},
    )
    keys = set(inp.l) | set(inp.l_red)
    lser = MultiSeries(
        prof, {k: DualNumber(inp.l.get(k, 0), inp.l_red.get(k, 0)) for k in keys}
    )
    total = expo.exp() * lser
    return {
        (n, d): DualNumber.lift(total.coeff((n, d))).eps
        for n in range(1, inp.n_max + 1)
        for d in range(inp.d_max + 1)
    }


def bidual_assemble(inp: BiWallcrossInput) -> dict:
    """Full DT^bullet_{n,(0,d)} in Q[e1, e2] for 0 <= n <= n_max, 0 <= d <= d_max."""
    _check_grid(inp, {"n_bullet": inp.n_bullet, "l_bullet": inp.l_bullet})
    prof = _profile(inp.n_max, inp.d_max)
    expo = MultiSeries(
        prof,
        {(n, d): v * ((-1) ** (n - 1) * n) for (n, d), v in inp.n_bullet.items() if n >= 1},
    )
    lser = MultiSeries(prof, dict(inp.l_bullet))
    total = expo.exp() * lser
    return {
        (n, d): BiDualNumber.lift(total.coeff((n, d)))
        for n in range(0, inp.n_max + 1)
        for d in range(inp.d_max + 1)
    }


def dt_k3xe_wallcross(n_max: int, d_max: int) -> dict:
    return dual_assemble(k3xe_input(n_max, d_max))


def dt_abelian_wallcross(n_max: int, d_max: int) -> dict:
    """DT^{A-red}_{n,(0,0,d)}: the e1*e2 component of the bi-dual assembly."""
    full = bidual_assemble(abelian_input(n_max, d_max))
    return {k: v.c11 for k, v in full.items() if k[0] >= 1}
