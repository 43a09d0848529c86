"""d-dimensional partitions and the degree-0 power-structure pipeline.

A d-dimensional partition of n is a downward-closed set of n cells in N^d, so
P_1 = 1, P_2 counts integer partitions and P_3 plane partitions.  Counts come
from exhaustive enumeration: every ideal is reached exactly once from its
canonical parent, the ideal with its lexicographically largest maximal cell
removed.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .numeric import EPS, DualNumber, sigma
from .series import MultiSeries, var

# exhaustive enumeration is exponential in n; limits keep runs short
GUARD = {1: 500, 2: 40, 3: 16, 4: 11, 5: 8, 6: 7}
DEFAULT_GUARD = 4

# Euler characteristic of the non-translated factor Y (K3 surface or a point)
DEGREE0_EULER = {"k3xe": 24, "abelian": 1}


def behrend_sign(n: int) -> int:
    """Sign between e(Hilb^n/A) and the reduced DT invariant, taken as given."""
    return (-1) ** (n - 1)


class EnumerationGuard(ValueError):
    pass


def _guard(d: int, n: int, limit: int | None):
    if d < 1:
        raise ValueError("dimension must be >= 1")
    cap = limit if limit is not None else GUARD.get(d, DEFAULT_GUARD)
    if n > cap:
        raise EnumerationGuard(
            f"enumerating {d}-dimensional partitions of {n} exceeds the guard n <= {cap}"
        )


def _maximal(cells: frozenset, d: int):
    for c in cells:
        if all(c[:i] + (c[i] + 1,) + c[i + 1:] not in cells for i in range(d)):
            yield c


def _addable(cells: frozenset, d: int):
    if not cells:
        yield (0,) * d
        return
    seen = set()
    for c in cells:
        for i in range(d):
            x = c[:i] + (c[i] + 1,) + c[i + 1:]
            if x in cells or x in seen:
                continue
            seen.add(x)
            if all(x[j] == 0 or x[:j] + (x[j] - 1,) + x[j + 1:] in cells for j in range(d)):
                yield x


@lru_cache(maxsize=None)
def partition_counts(d: int, n_max: int, limit: int | None = None) -> tuple[int, ...]:
    """(P_d(0), ..., P_d(n_max)) by depth-first enumeration of order ideals."""
    _guard(d, n_max, limit)
    counts = [0] * (n_max + 1)
    stack = [frozenset()]
    while stack:
        ideal = stack.pop()
        counts[len(ideal)] += 1
        if len(ideal) == n_max:
            continue
        for c in _addable(ideal, d):
            child = ideal | {c}
            if c == max(_maximal(child, d)):
                stack.append(child)
    return tuple(counts)


def count_partitions(d: int, n: int, limit: int | None = None) -> int:
    return partition_counts(d, n, limit)[n]


def partition_series(d: int, n_max: int, limit: int | None = None) -> MultiSeries:
    """sum_n P_d(n) q^n from brute-force counts."""
    counts = partition_counts(d, n_max, limit)
    return MultiSeries((var("q", 0, n_max),), {(n,): c for n, c in enumerate(counts)})


def kummer_series(d: int, e_Y: int, n_max: int, limit: int | None = None) -> MultiSeries:
    """(sum P_d(n) q^n)^(e_Y * eps) over the dual numbers.

    The eps-coefficient at q^n is the Euler characteristic of
    Hilb^n(Y x A)/A when d = dim(Y x A) and e_Y = e(Y).
    """
    base = partition_series(d, n_max, limit)
    if e_Y == 0:
        return MultiSeries.one(base.profile, DualNumber(1))
    return base.pow_ring(EPS * e_Y)


def kummer_euler_characteristics(d: int, e_Y: int, n_max: int) -> list:
    s = kummer_series(d, e_Y, n_max)
    out = []
    for n in range(1, n_max + 1):
        c = s.coeff((n,))
        out.append(DualNumber.lift(c).eps)
    return out


def dt_degree0(n: int, variant: str):
    """Reduced degree-0 DT invariant of K3 x E or of an abelian threefold."""
    if n < 1:
        raise ValueError("degree-0 reduced invariants are defined for n >= 1")
    if variant not in DEGREE0_EULER:
        raise ValueError(f"variant must be one of {sorted(DEGREE0_EULER)}")
    return Fraction(behrend_sign(n) * DEGREE0_EULER[variant] * sigma(2, n), n)
