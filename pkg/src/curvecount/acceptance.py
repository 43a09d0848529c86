"""Acceptance suite: one exact check per criterion.

Run ``python3 -m curvecount.acceptance`` for one PASS/FAIL line per criterion.
"""
from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from .gw import correspondence_check, dt_side_genus_coeff, gw_potential
from .igusa import IgusaConfig, m_table
from .invariants import (
    AbelianClass,
    dt_abelian,
    dtpt_verify_k3xe,
    pt_k3xe_0d,
    verify_abelian_routes,
    verify_k3xe_routes,
)
from .jacobi import a_table, c_table, m_direct, macmahon
from .numeric import BiDualNumber, DualNumber, sigma
from .partitions import kummer_euler_characteristics, partition_counts
from .series import BeyondTruncation, Factor, MultiSeries, product_eval, var
from .wallcross import dt_abelian_wallcross

# wall-clock limits in seconds, where a criterion sets one
LIMITS = {1: 1.0, 2: 60.0, 6: 60.0, 8: 10.0}


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float

    @property
    def within_limit(self) -> bool:
        return self.elapsed < LIMITS.get(self.number, float("inf"))

    def line(self) -> str:
        ok = self.passed and self.within_limit
        limit = f" (limit {LIMITS[self.number]:.0f}s)" if self.number in LIMITS else ""
        return f"[{'PASS' if ok else 'FAIL'}] {self.number}. {self.title}: {self.detail} [{self.elapsed:.2f}s{limit}]"


def _failures(pairs):
    return [k for k, got, want in pairs if got != want]


def criterion_1():
    c, a = c_table(40, 6), a_table(40, 6)  # construction checks every 4d - k^2 collision, d <= 10
    got = (c[-1], c[0], a[-1], a[0], a[3], a[4])
    ok = got == (2, 20, -1, 2, -8, 12)
    return ok, f"c(-1), c(0), a(-1), a(0), a(3), a(4) = {got}; grid d<=10, |k|<=6 consistent"


def criterion_2():
    tab = m_table(IgusaConfig(1, 5, 10))
    md = m_direct(5, -10, 10)
    bad = [(d, n) for d in range(6) for n in range(-10, 11) if tab[1, d, n] != md[d, n]]
    return not bad, f"{6 * 21 - len(bad)}/{6 * 21} entries agree" + (f", differ at {bad[:5]}" if bad else "")


def criterion_3():
    rep = verify_k3xe_routes(10, 5)
    return rep.passed, "; ".join(f"{c.name}: {'ok' if c.passed else c.detail}" for c in rep.checks)


def criterion_4():
    rep = verify_abelian_routes(8, 6)
    wc = dt_abelian_wallcross(3, 3)
    anchors = [
        all(dt_abelian(AbelianClass(1, 0, 0, d), "closed_formula") == 1 for d in range(7)),
        wc[(2, 2)] == Fraction(-5, 2),
        wc[(3, 3)] == Fraction(10, 3),
    ]
    ok = rep.passed and all(anchors)
    return ok, f"routes agree: {rep.passed}; anchors 1, -5/2, 10/3: {all(anchors)}"


def criterion_5():
    rep = dtpt_verify_k3xe(4, 10)
    zero = all(pt_k3xe_0d(n, 0) == 0 for n in range(1, 11))
    failed = [c.name for c in rep.checks if not c.passed]
    return rep.passed and zero, f"series identity d<=4 to q^10; PT_(n,0)=0 for n<=10: {zero}" + (f"; failed {failed}" if failed else "")


def criterion_6():
    p2 = partition_counts(2, 12)
    euler = product_eval((Factor((m,), -1) for m in count(1)), (var("q", 0, 12),))
    p3 = partition_counts(3, 10)
    mac = macmahon(10)
    bad = _failures([(("P2", n), p2[n], euler.coeff((n,))) for n in range(13)])
    bad += _failures([(("P3", n), p3[n], mac.coeff((n,))) for n in range(11)])
    bad += _failures([(("anchor", 3), list(p3), [1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500])])
    for d in range(1, 5):
        small = partition_counts(d, 2)
        bad += _failures([(("P_d(1)", d), small[1], 1), (("P_d(2)", d), small[2], d)])
    return not bad, "P2 = Euler product to 12, P3 = MacMahon to 10, P_d(1)=1, P_d(2)=d" + (f"; differ at {bad}" if bad else "")


def _rand_series(rng, ring, n_max=6, constant=None):
    def scalar():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 6))

    def elem():
        if ring == "Q":
            return scalar()
        if ring == "Q[eps]":
            return DualNumber(scalar(), scalar())
        return BiDualNumber(scalar(), scalar(), scalar(), scalar())

    terms = {(n,): elem() for n in range(n_max + 1) if rng.random() < 0.7}
    if constant is not None:
        terms[(0,)] = constant
    return MultiSeries((var("q", 0, n_max),), terms)


def _ring_scalar(rng, ring):
    x = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return x if ring == "Q" else DualNumber(x, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def criterion_7(trials: int = 100, seed: int = 20261015):
    k2 = kummer_euler_characteristics(2, 1, 10)
    k3 = kummer_euler_characteristics(3, 24, 10)
    closed = k2 == [Fraction(sigma(1, n), n) for n in range(1, 11)] and k3 == [
        Fraction(24 * sigma(2, n), n) for n in range(1, 11)
    ]
    rng = random.Random(seed)
    bad = 0
    for ring in ("Q", "Q[eps]"):
        for _ in range(trials):
            f, g = _rand_series(rng, ring, constant=1), _rand_series(rng, ring, constant=1)
            n, m = _ring_scalar(rng, ring), _ring_scalar(rng, ring)
            one = MultiSeries.one(f.profile)
            axioms = (
                f.pow_ring(0) == one,
                f.pow_ring(1) == f,
                f.pow_ring(n) * g.pow_ring(n) == (f * g).pow_ring(n),
                f.pow_ring(n + m) == f.pow_ring(n) * f.pow_ring(m),
                f.pow_ring(n * m) == f.pow_ring(n).pow_ring(m),
            )
            bad += not all(axioms)
    ok = closed and bad == 0
    return ok, f"Kummer closed forms: {closed}; power-structure axioms failed in {bad}/{2 * trials} trials"


def criterion_8():
    rep = correspondence_check(6, 3)
    anchor_gw = gw_potential(2, 0)[0]
    anchor_dt = dt_side_genus_coeff(2, 0)
    anchor = anchor_gw == anchor_dt == Fraction(1, 240)
    return rep.passed and anchor, f"grid g<=6, d<=3 equal: {rep.passed}; F^2_0 = {anchor_gw} (GW), {anchor_dt} (DT)"


def criterion_9(trials: int = 100, seed: int = 9):
    rng = random.Random(seed)
    bad = []
    for ring in ("Q", "Q[eps]", "Q[e1,e2]"):
        for i in range(trials):
            f = _rand_series(rng, ring, constant=1)
            g = _rand_series(rng, ring, constant=0)
            if f.log().exp() != f or g.exp().log() != g:
                bad.append((ring, i, "exp/log"))
            h = f.scale(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
            if h * h.invert() != MultiSeries.one(h.profile):
                bad.append((ring, i, "invert"))
            try:
                f.coeff((f.profile[0].hi + 1,))
                bad.append((ring, i, "out-of-box returned a value"))
            except BeyondTruncation:
                pass
    return not bad, f"{3 * trials} random series per law" + (f"; failures {bad[:5]}" if bad else "")


CRITERIA = {
    1: ("coefficient anchors and well-definedness", criterion_1),
    2: ("Igusa m(1,d,n) = Weierstrass m(d,n)", criterion_2),
    3: ("K3 x E classes (0,d): closed = product log = wall-crossing", criterion_3),
    4: ("abelian type (0,0,d): closed = multiple cover = bi-dual wall-crossing", criterion_4),
    5: ("DT/PT series identity at beta = 0", criterion_5),
    6: ("partition enumeration oracles", criterion_6),
    7: ("Kummer pipeline and power-structure axioms", criterion_7),
    8: ("GW/DT genus expansion", criterion_8),
    9: ("series-engine laws", criterion_9),
}


def run_criterion(number: int) -> Outcome:
    title, fn = CRITERIA[number]
    t0 = time.perf_counter()
    passed, detail = fn()
    return Outcome(number, title, bool(passed), detail, time.perf_counter() - t0)


def main() -> int:
    outcomes = [run_criterion(k) for k in sorted(CRITERIA)]
    for o in outcomes:
        print(o.line())
    ok = all(o.passed and o.within_limit for o in outcomes)
    print(f"acceptance: {'PASS' if ok else 'FAIL'} ({sum(o.passed and o.within_limit for o in outcomes)}/{len(outcomes)})")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
