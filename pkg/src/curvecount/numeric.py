"""Exact scalars and small number-theoretic helpers.

Rationals are :class:`fractions.Fraction`.  The two nilpotent extensions
used for reduced-invariant bookkeeping are

* :class:`DualNumber`, elements of Q[e]/(e^2), and
* :class:`BiDualNumber`, elements of Q[e1, e2]/(e1^2, e2^2).

Both interoperate with ``int`` and ``Fraction`` on either side of an operator.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Union

Rational = Fraction
Scalar = Union[int, Fraction]


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_rational(x) -> str:
    """Serialize as ``"num/den"``; the sign always sits on the numerator."""
    x = to_rational(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip().replace("−", "-")
    return Fraction(s)


def gcd_ext(a: int, b: int) -> int:
    """gcd(|a|, |b|) with the convention gcd(x, 0) = |x|."""
    return gcd(a, b)


def gcd_many(*values: int) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def divisors(n: int) -> list[int]:
    if n <= 0:
        raise ValueError(f"divisors are only enumerated for positive n, got {n}")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def sigma(s: int, n: int) -> int:
    """Sum of ``l**s`` over the positive divisors ``l`` of ``n``."""
    if s < 0:
        raise ValueError("sigma needs a non-negative power")
    return sum(l**s for l in divisors(n))


@lru_cache(maxsize=None)
def _bernoulli_list(k: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, k + 1):
        # sum_{j=0}^{m} C(m+1, j) B_j = 0
        acc = sum(comb(m + 1, j) * B[j] for j in range(m))
        B.append(-acc / (m + 1))
    return tuple(B)


def bernoulli(k: int) -> Fraction:
    """Bernoulli number ``B_k`` with ``B_1 = -1/2``."""
    if k < 0:
        raise ValueError("bernoulli index must be non-negative")
    return _bernoulli_list(k)[k]


def zeta_negative(s: int) -> Fraction:
    """zeta(-s) = -B_{s+1}/(s+1) for integer s >= 1."""
    if s < 1:
        raise ValueError("only zeta(-s) with s >= 1 is supported")
    return -bernoulli(s + 1) / (s + 1)


def _coerce(x):
    if isinstance(x, (int, Fraction)):
        return x
    return None


class DualNumber:
    """a + b*e with e^2 = 0."""

    __slots__ = ("real", "eps")

    def __init__(self, real: Scalar = 0, eps: Scalar = 0):
        self.real = to_rational(real)
        self.eps = to_rational(eps)

    @classmethod
    def lift(cls, x) -> "DualNumber":
        if isinstance(x, DualNumber):
            return x
        return cls(x, 0)

    def __repr__(self):
        return f"DualNumber({self.real}, {self.eps})"

    def __str__(self):
        return f"{self.real} + {self.eps}e"

    def __add__(self, other):
        if isinstance(other, DualNumber):
            return DualNumber(self.real + other.real, self.eps + other.eps)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.real + o, self.eps)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.real, -self.eps)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DualNumber):
            return DualNumber(
                self.real * other.real, self.real * other.eps + self.eps * other.real
            )
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.real * o, self.eps * o)

    __rmul__ = __mul__

    def inverse(self) -> "DualNumber":
        if self.real == 0:
            raise ZeroDivisionError("dual number with zero real part is not invertible")
        r = 1 / self.real
        return DualNumber(r, -self.eps * r * r)

    def __truediv__(self, other):
        if isinstance(other, DualNumber):
            return self * other.inverse()
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return DualNumber(self.real / o, self.eps / o)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.inverse() * o

    def __eq__(self, other):
        if isinstance(other, DualNumber):
            return self.real == other.real and self.eps == other.eps
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.eps == 0 and self.real == o

    def __hash__(self):
        return hash((DualNumber, self.real, self.eps))

    def __bool__(self):
        return bool(self.real) or bool(self.eps)


class BiDualNumber:
    """c00 + c10*e1 + c01*e2 + c11*e1*e2 with e1^2 = e2^2 = 0."""

    __slots__ = ("c00", "c10", "c01", "c11")

    def __init__(self, c00: Scalar = 0, c10: Scalar = 0, c01: Scalar = 0, c11: Scalar = 0):
        self.c00 = to_rational(c00)
        self.c10 = to_rational(c10)
        self.c01 = to_rational(c01)
        self.c11 = to_rational(c11)

    @classmethod
    def lift(cls, x) -> "BiDualNumber":
        if isinstance(x, BiDualNumber):
            return x
        return cls(x)

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c00, self.c10, self.c01, self.c11)

    def __repr__(self):
        return "BiDualNumber({}, {}, {}, {})".format(*self.coeffs())

    def __add__(self, other):
        if isinstance(other, BiDualNumber):
            return BiDualNumber(*(a + b for a, b in zip(self.coeffs(), other.coeffs())))
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return BiDualNumber(self.c00 + o, self.c10, self.c01, self.c11)

    __radd__ = __add__

    def __neg__(self):
        return BiDualNumber(-self.c00, -self.c10, -self.c01, -self.c11)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, BiDualNumber):
            a0, a1, a2, a3 = self.coeffs()
            b0, b1, b2, b3 = other.coeffs()
            return BiDualNumber(
                a0 * b0,
                a0 * b1 + a1 * b0,
                a0 * b2 + a2 * b0,
                a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
            )
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return BiDualNumber(*(a * o for a in self.coeffs()))

    __rmul__ = __mul__

    def inverse(self) -> "BiDualNumber":
        if self.c00 == 0:
            raise ZeroDivisionError("bi-dual number with zero constant part is not invertible")
        # x = c(1 + n) with n nilpotent of order 3: x^-1 = c^-1 (1 - n + n^2)
        c = self.c00
        n = BiDualNumber(0, self.c10 / c, self.c01 / c, self.c11 / c)
        return (BiDualNumber(1) - n + n * n) * (1 / c)

    def __truediv__(self, other):
        if isinstance(other, BiDualNumber):
            return self * other.inverse()
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return BiDualNumber(*(a / o for a in self.coeffs()))

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.inverse() * o

    def __eq__(self, other):
        if isinstance(other, BiDualNumber):
            return self.coeffs() == other.coeffs()
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.c10 == 0 and self.c01 == 0 and self.c11 == 0 and self.c00 == o

    def __hash__(self):
        return hash((BiDualNumber,) + self.coeffs())

    def __bool__(self):
        return any(self.coeffs())


EPS = DualNumber(0, 1)
EPS1 = BiDualNumber(0, 1, 0, 0)
EPS2 = BiDualNumber(0, 0, 1, 0)


def inverse(c):
    """Multiplicative inverse in whichever coefficient ring ``c`` lives."""
    if isinstance(c, (DualNumber, BiDualNumber)):
        return c.inverse()
    if c == 0:
        raise ZeroDivisionError("zero is not invertible")
    return Fraction(1) / c
