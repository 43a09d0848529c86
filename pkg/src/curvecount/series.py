"""Sparse truncated multivariate Laurent series.

A :class:`MultiSeries` is a finite map from exponent vectors to coefficients,
together with a *profile*: one :class:`Var` per variable giving the inclusive
degree window that is known exactly.  Coefficients inside the box are exact;
anything outside the box is unknown, and asking for it raises
:class:`BeyondTruncation` rather than returning zero.

Coefficients may be ``int``/``Fraction``, :class:`~curvecount.numeric.DualNumber`
or :class:`~curvecount.numeric.BiDualNumber`.

Truncation is a box, not a total degree.  Products keep only exponents that
land inside the result box, so a caller that mixes positive and negative
powers of a weight-0 variable (``p`` in the Laurent case) must choose a
working window wide enough that nothing dropped could be shifted back in.
The Igusa module is the one place that does this and certifies its window.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .numeric import format_rational, inverse, parse_rational

VARIABLES = ("p", "q", "t", "tt")


class BeyondTruncation(LookupError):
    """A coefficient outside the truncation box was requested."""


class IncompatibleProfiles(ValueError):
    pass


class NotAdmissible(ValueError):
    """A precondition of log/exp/invert/product expansion is violated."""


@dataclass(frozen=True)
class Var:
    """One variable of a profile with its inclusive exponent window."""

    name: str
    lo: int
    hi: int

    def __post_init__(self):
        if self.name not in VARIABLES:
            raise ValueError(f"unknown variable {self.name!r}; expected one of {VARIABLES}")
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}] for {self.name}")

    @property
    def weight(self) -> int:
        # p is a Laurent variable of weight 0 unless its window is one-sided
        if self.name == "p" and self.lo < 0:
            return 0
        return 1

    def contains(self, e: int) -> bool:
        return self.lo <= e <= self.hi


def var(name: str, lo: int, hi: int) -> Var:
    """Public constructor enforcing the window rules for user-built profiles."""
    v = Var(name, lo, hi)
    if name != "p" and lo < -1:
        raise ValueError(f"{name} allows at most one negative step (min degree -1), got {lo}")
    return v


Profile = tuple  # tuple[Var, ...]


def _intersect(a: Profile, b: Profile) -> Profile:
    if tuple(v.name for v in a) != tuple(v.name for v in b):
        raise IncompatibleProfiles(
            f"variable sets differ: {[v.name for v in a]} vs {[v.name for v in b]}"
        )
    out = []
    for x, y in zip(a, b):
        lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
        if lo > hi:
            raise IncompatibleProfiles(f"windows for {x.name} do not overlap")
        out.append(Var(x.name, lo, hi))
    return tuple(out)


def _is_zero(c) -> bool:
    return not c


class MultiSeries:
    """Immutable truncated series; see module docstring."""

    __slots__ = ("profile", "terms", "_lo", "_hi")

    def __init__(self, profile: Sequence[Var], terms: Mapping[tuple, object] | None = None):
        self.profile: Profile = tuple(profile)
        self._lo = tuple(v.lo for v in self.profile)
        self._hi = tuple(v.hi for v in self.profile)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.profile):
                raise ValueError(f"exponent {e} has wrong length for profile")
            if _is_zero(c) or not self._in_box(e):
                continue
            clean[e] = c
        self.terms: dict = clean

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, profile) -> "MultiSeries":
        return cls(profile)

    @classmethod
    def one(cls, profile, unit=1) -> "MultiSeries":
        return cls(profile, {(0,) * len(profile): unit})

    @classmethod
    def monomial(cls, profile, exps, coeff=1) -> "MultiSeries":
        return cls(profile, {tuple(exps): coeff})

    def to_json(self) -> dict:
        """Box and rational terms; ring-valued coefficients are not serialized."""
        return {
            "profile": [[v.name, v.lo, v.hi] for v in self.profile],
            "terms": [[*e, format_rational(c)] for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, blob: dict) -> "MultiSeries":
        prof = tuple(Var(n, lo, hi) for n, lo, hi in blob["profile"])
        terms = {}
        for row in blob["terms"]:
            c = parse_rational(row[-1])
            terms[tuple(row[:-1])] = c.numerator if c.denominator == 1 else c
        return cls(prof, terms)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.profile)

    def _in_box(self, e) -> bool:
        for x, lo, hi in zip(e, self._lo, self._hi):
            if x < lo or x > hi:
                return False
        return True

    def index(self, name: str) -> int:
        return self.names.index(name)

    # -- inspection ----------------------------------------------------------

    def _as_vector(self, v) -> tuple:
        if isinstance(v, Mapping):
            unknown = set(v) - set(self.names)
            if unknown:
                raise KeyError(f"unknown variables {sorted(unknown)}")
            return tuple(v.get(n, 0) for n in self.names)
        v = tuple(v)
        if len(v) != len(self.profile):
            raise ValueError("exponent vector has wrong length")
        return v

    def coeff(self, v):
        """Coefficient at exponent ``v`` (tuple or ``{name: exp}``)."""
        v = self._as_vector(v)
        if not self._in_box(v):
            raise BeyondTruncation(
                f"exponent {dict(zip(self.names, v))} is beyond truncation "
                f"{[(x.name, x.lo, x.hi) for x in self.profile]}"
            )
        return self.terms.get(v, 0)

    __getitem__ = coeff

    def items(self) -> Iterator[tuple[tuple, object]]:
        """Terms in canonical (lexicographic exponent) order."""
        for e in sorted(self.terms):
            yield e, self.terms[e]

    def __len__(self):
        return len(self.terms)

    def constant_term(self):
        return self.coeff((0,) * len(self.profile))

    def grading(self, e) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(v.weight for v in self.profile)

    def _valuation_key(self, e) -> tuple[int, int]:
        # within equal grading, weight-0 p is ordered by its exponent (|p| < 1)
        pe = 0
        for v, x in zip(self.profile, e):
            if v.weight == 0:
                pe += x
        return (self.grading(e), pe)

    def __repr__(self):
        shown = ", ".join(f"{e}: {c}" for e, c in list(self.items())[:8])
        more = "" if len(self.terms) <= 8 else ", ..."
        box = ", ".join(f"{v.name}[{v.lo},{v.hi}]" for v in self.profile)
        return f"MultiSeries<{box}>({{{shown}{more}}})"

    # -- box handling --------------------------------------------------------

    def restrict(self, profile) -> "MultiSeries":
        """Same series viewed in a smaller box."""
        profile = tuple(profile)
        box = _intersect(self.profile, profile)
        if box != profile:
            raise BeyondTruncation("restrict() cannot enlarge the truncation box")
        return MultiSeries(profile, self.terms)

    def shift(self, exps, coeff=1, profile=None) -> "MultiSeries":
        """Multiply by the monomial ``coeff * x**exps``, landing in ``profile``."""
        profile = self.profile if profile is None else tuple(profile)
        exps = tuple(exps)
        out = {}
        for e, c in self.terms.items():
            out[tuple(a + b for a, b in zip(e, exps))] = c * coeff
        return MultiSeries(profile, out)

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            return other
        return MultiSeries.one(self.profile, other)

    def __add__(self, other):
        other = self._coerce(other)
        box = _intersect(self.profile, other.profile)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiSeries(box, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.profile, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiSeries":
        return MultiSeries(self.profile, {e: x * c for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        box = _intersect(self.profile, other.profile)
        lo = tuple(v.lo for v in box)
        hi = tuple(v.hi for v in box)
        n = len(box)
        out: dict = {}
        b_items = list(other.terms.items())
        for ea, ca in self.terms.items():
            for eb, cb in b_items:
                ok = True
                w = [0] * n
                for i in range(n):
                    x = ea[i] + eb[i]
                    if x < lo[i] or x > hi[i]:
                        ok = False
                        break
                    w[i] = x
                if not ok:
                    continue
                w = tuple(w)
                c = ca * cb
                if w in out:
                    out[w] = out[w] + c
                else:
                    out[w] = c
        return MultiSeries(box, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("use invert()/pow_ring() for negative or non-integer powers")
        result = MultiSeries.one(self.profile)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            other = self._coerce(other)
        try:
            box = _intersect(self.profile, other.profile)
        except IncompatibleProfiles:
            return False
        a = self.restrict(box) if box != self.profile else self
        b = other.restrict(box) if box != other.profile else other
        keys = set(a.terms) | set(b.terms)
        return all(a.terms.get(k, 0) == b.terms.get(k, 0) for k in keys)

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.terms

    # -- transcendental operations -------------------------------------------

    def _require_positive(self, what: str):
        for e in self.terms:
            if self._valuation_key(e) <= (0, 0):
                raise NotAdmissible(
                    f"{what}: term {dict(zip(self.names, e))} does not have positive grading"
                )

    def _nilpotent_sum(self, coeffs) -> "MultiSeries":
        """sum_j coeffs(j) * self**j, for self of positive valuation."""
        total = MultiSeries.one(self.profile, coeffs(0)) if coeffs(0) else MultiSeries.zero(self.profile)
        power = MultiSeries.one(self.profile)
        j = 0
        while True:
            j += 1
            power = power * self
            if power.is_zero():
                return total
            c = coeffs(j)
            if c:
                total = total + power.scale(c)

    def log(self) -> "MultiSeries":
        """Formal logarithm; the constant term must be exactly 1."""
        if self.constant_term() != 1:
            raise NotAdmissible("log requires constant term exactly 1")
        u = self - 1
        u._require_positive("log")
        return u._nilpotent_sum(lambda j: 0 if j == 0 else Fraction((-1) ** (j + 1), j))

    def exp(self) -> "MultiSeries":
        """Formal exponential; the constant term must be exactly 0."""
        if self.constant_term() != 0:
            raise NotAdmissible("exp requires constant term exactly 0")
        self._require_positive("exp")
        facts = [1]

        def coeff(j):
            while len(facts) <= j:
                facts.append(facts[-1] * len(facts))
            return Fraction(1, facts[j])

        return self._nilpotent_sum(coeff)

    def pow_ring(self, g) -> "MultiSeries":
        """``self ** g = exp(g * log(self))`` for a ring element ``g``."""
        if self.constant_term() != 1:
            raise NotAdmissible("pow_ring requires constant term exactly 1")
        if isinstance(g, int) and g >= 0:
            return self**g
        return (self.log() * g).exp()

    def invert(self, profile=None) -> "MultiSeries":
        """Multiplicative inverse, expanded around the lowest term.

        The lowest term under (grading, weight-0 exponent) order must be a
        single invertible monomial ``c x^v``; the result is
        ``c^-1 x^-v (1 + u)^-1`` with ``u`` of positive valuation.  Terms of
        ``self`` outside its box are taken as absent, so the result is exact
        only where it does not depend on them.  ``profile`` selects the result
        box (default: the box of ``self``).
        """
        if not self.terms:
            raise NotAdmissible("cannot invert the zero series")
        profile = self.profile if profile is None else tuple(profile)
        keys = {e: self._valuation_key(e) for e in self.terms}
        low = min(keys.values())
        lead = [e for e, k in keys.items() if k == low]
        if len(lead) != 1:
            raise NotAdmissible(
                f"lowest term is not a monomial: {[dict(zip(self.names, e)) for e in lead]}"
            )
        v = lead[0]
        try:
            cinv = inverse(self.terms[v])
        except ZeroDivisionError as exc:
            raise NotAdmissible(f"leading coefficient {self.terms[v]} is not invertible") from exc
        u_terms = {}
        for e, c in self.terms.items():
            if e == v:
                continue
            w = tuple(a - b for a, b in zip(e, v))
            if self._valuation_key(w) <= (0, 0):
                raise NotAdmissible("invert: series is not a unit times (1 + positive)")
            u_terms[w] = c * cinv
        # (1 + u)^-1 lives in the result box shifted by +v
        work = tuple(Var(x.name, x.lo + s, x.hi + s) for x, s in zip(profile, v))
        u = MultiSeries(work, u_terms)
        geo = u._nilpotent_sum(lambda j: (-1) ** j)
        return geo.shift(tuple(-x for x in v), cinv, profile=profile)


# -- infinite products ----------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    """The factor ``(1 - coeff * x**exps) ** exponent``."""

    exps: tuple
    exponent: int
    coeff: object = 1
    prefactor: bool = False


def binomial_series(e: int, J: int) -> list[int]:
    """C(e, j) for j = 0..J, for any integer e."""
    out = [1]
    b = 1
    for j in range(1, J + 1):
        b = b * (e - j + 1) // j
        out.append(b)
    return out


def multiply_factor(f: MultiSeries, factor: Factor) -> MultiSeries:
    """``f * (1 - c x^m)^e`` with the binomial expansion cut at the box."""
    m = tuple(factor.exps)
    if factor.exponent == 0 or not f.terms:
        return f
    if not any(m):
        raise NotAdmissible("factor monomial must be non-constant")
    J = min((v.hi - v.lo) // abs(mi) for v, mi in zip(f.profile, m) if mi)
    if factor.exponent > 0:
        J = min(J, factor.exponent)
    binoms = binomial_series(factor.exponent, J)
    lo, hi = f._lo, f._hi
    n = len(m)
    out = dict(f.terms)
    c = factor.coeff
    power = 1
    for j in range(1, J + 1):
        power = power * (-c)
        scal = binoms[j] * power
        if not scal:
            continue
        shift = tuple(j * x for x in m)
        for e, x in f.terms.items():
            w = tuple(e[i] + shift[i] for i in range(n))
            if any(w[i] < lo[i] or w[i] > hi[i] for i in range(n)):
                continue
            val = x * scal
            if w in out:
                out[w] = out[w] + val
            else:
                out[w] = val
    return MultiSeries(f.profile, out)


def product_eval(factors: Iterable[Factor], profile, start: MultiSeries | None = None) -> MultiSeries:
    """Truncated product of a graded factor stream.

    Non-prefactor monomials must have strictly positive, non-decreasing
    grading; the stream is consumed only until the grading leaves the box, so
    infinite generators are fine.
    """
    profile = tuple(profile)
    result = start if start is not None else MultiSeries.one(profile)
    probe = MultiSeries.zero(profile)
    span = sum(v.weight * (v.hi - v.lo) for v in profile)
    last = None
    for fac in factors:
        if fac.prefactor:
            result = multiply_factor(result, fac)
            continue
        g = probe.grading(fac.exps)
        if g <= 0:
            raise NotAdmissible(f"factor {fac.exps} has non-positive grading; it would not terminate")
        if last is not None and g < last:
            raise NotAdmissible("factor stream grading must be non-decreasing")
        last = g
        if g > span:
            break
        result = multiply_factor(result, fac)
    return result


def from_coefficients(name: str, coeffs: Sequence, lo: int = 0) -> MultiSeries:
    """Single-variable series whose window is exactly the given list."""
    prof = (var(name, lo, lo + len(coeffs) - 1),)
    return MultiSeries(prof, {(lo + i,): c for i, c in enumerate(coeffs)})


def coefficient_list(f: MultiSeries) -> list:
    """Dense coefficient list of a one-variable series over its window."""
    if len(f.profile) != 1:
        raise ValueError("coefficient_list needs a single-variable series")
    v = f.profile[0]
    return [f.terms.get((i,), 0) for i in range(v.lo, v.hi + 1)]
