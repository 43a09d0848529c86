"""Command-line front end: ``curvecount <subcommand> ...``.

Every subcommand builds a :class:`~curvecount.report.Report`, prints it in the
requested format and exits 0 exactly when all of its checks passed.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from itertools import count
from pathlib import Path

from . import gw, invariants, jacobi, partitions, wallcross
from .cache import Cache
from .igusa import IgusaConfig, check_symmetry, m_table
from .invariants import AbelianClass, K3xEClass, InadmissibleClass
from .numeric import sigma
from .report import InvariantRecord, Report
from .series import BeyondTruncation, Factor, product_eval, var
from .tables import CoeffTable

log = logging.getLogger("curvecount")


# -- helpers ----------------------------------------------------------------------


def _igusa_table(args, cfg: IgusaConfig) -> CoeffTable:
    conf = {"h_max": cfg.h_max, "d_max": cfg.d_max, "n_max": cfg.n_max, "p_lo": cfg.p_lo, "p_hi": cfg.p_hi}
    want = {"h": (0, cfg.h_max), "d": (0, cfg.d_max), "n": cfg.n_window}
    cache = Cache(args.cache_dir, enabled=not args.no_cache)
    return cache.get_or_compute(
        "m_table", conf, lambda: m_table(cfg), validate=lambda t: t.bounds == want
    )


def _table_records(table: CoeffTable):
    return [{**dict(zip(table.axes, k)), "value": Fraction(v)} for k, v in table.rows()]


def _parse_type(s: str) -> tuple[int, int, int]:
    parts = [int(x) for x in s.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("type must be d1,d2,d3")
    return tuple(parts)


# -- subcommands ------------------------------------------------------------------


def cmd_igusa(args) -> Report:
    cfg = IgusaConfig(args.hmax, args.dmax, args.nmax, p_lo=args.plo)
    rep = Report("igusa", {"h_max": cfg.h_max, "d_max": cfg.d_max, "n_max": cfg.n_max, "p_window": [cfg.p_lo, cfg.p_hi]})
    table = _igusa_table(args, cfg)
    for r in _table_records(table):
        rep.add(r)
    asym = check_symmetry(table)
    rep.check("m(h, d, n) = m(d, h, n)", not asym, f"asymmetric at {asym[:5]}" if asym else "")
    md = jacobi.m_direct(cfg.d_max, -min(10, cfg.n_max), cfg.n_max)
    bad = [
        (d, n)
        for d in range(cfg.d_max + 1)
        for n in range(-min(10, cfg.n_max), cfg.n_max + 1)
        if cfg.h_max >= 1 and table[1, d, n] != md[d, n]
    ]
    rep.check("m(1, d, n) matches the Weierstrass route", not bad, f"differ at {bad[:5]}" if bad else "")
    return rep.finish()


def cmd_dt(args) -> Report:
    if args.family == "k3xe":
        if args.beta_sq is None:
            c = K3xEClass(args.n, args.d)
            routes = [args.route] if args.route else ["closed_formula", "product_log", "wall_crossing", "multiple_cover"]
        else:
            c = K3xEClass(args.n, args.d, args.beta_sq, args.beta_div)
            routes = ["multiple_cover"]
            if args.route not in (None, "multiple_cover"):
                raise InadmissibleClass("classes with beta != 0 only have the multiple_cover route")
        rep = Report("dt k3xe", c.as_dict())
        vals = []
        for r in routes:
            v = invariants.mc_k3xe(c) if r == "multiple_cover" else invariants.dt_k3xe_0d(c.n, c.d, r, args.divisor_rule)
            vals.append(v)
            rep.add(InvariantRecord("DT_K3xE", c.as_dict(), v, r))
    else:
        c = AbelianClass(args.n, *args.type)
        rep = Report("dt abelian", c.as_dict())
        if args.route:
            routes = [args.route]
        elif c.degenerate_degree() is not None and c.n > 0:
            routes = ["closed_formula", "multiple_cover", "wall_crossing"]
        else:
            routes = ["multiple_cover"]
        vals = []
        for r in routes:
            v = invariants.dt_abelian(c, r)
            vals.append(v)
            rep.add(InvariantRecord("DT_abelian", c.as_dict(), v, r))
    rep.check("all routes agree", len(set(vals)) == 1, " ".join(str(v) for v in vals))
    return rep.finish()


def cmd_wallcross(args) -> Report:
    rep = Report(f"wallcross {args.family}", {"n_max": args.nmax, "d_max": args.dmax})
    bad = []
    if args.family == "k3xe":
        out = wallcross.dt_k3xe_wallcross(args.nmax, args.dmax)
        for (n, d), v in sorted(out.items()):
            rep.add(InvariantRecord("DT_K3xE", {"n": n, "d": d}, v, "wall_crossing"))
            if v != invariants.dt_k3xe_0d(n, d):
                bad.append((n, d))
    else:
        out = wallcross.dt_abelian_wallcross(args.nmax, args.dmax)
        for (n, d), v in sorted(out.items()):
            c = AbelianClass(n, 0, 0, d)
            rep.add(InvariantRecord("DT_abelian", c.as_dict(), v, "wall_crossing"))
            if v != invariants.dt_abelian(c, "closed_formula"):
                bad.append((n, d))
    rep.check("wall-crossing matches the closed formula", not bad, f"differ at {bad}" if bad else "")
    return rep.finish()


def cmd_partitions(args) -> Report:
    d, n_max = args.d, args.nmax
    rep = Report("partitions", {"d": d, "n_max": n_max})
    counts = partitions.partition_counts(d, n_max, args.limit)
    for n, c in enumerate(counts):
        rep.add({"d": d, "n": n, "count": c})
    if n_max >= 1:
        rep.check("P_d(1) = 1", counts[1] == 1)
    if n_max >= 2:
        rep.check("P_d(2) = d", counts[2] == d)
    oracle = None
    if d == 2:
        oracle = _euler_product(n_max)
    elif d == 3:
        oracle = jacobi.macmahon(n_max)
        oracle = [oracle.coeff((n,)) for n in range(n_max + 1)]
    elif d == 1:
        oracle = [1] * (n_max + 1)
    if oracle is not None:
        bad = [n for n in range(n_max + 1) if counts[n] != oracle[n]]
        rep.check("enumeration matches the product formula", not bad, f"differ at {bad}" if bad else "")
    return rep.finish()


def _euler_product(n_max):
    s = product_eval((Factor((m,), -1) for m in count(1)), (var("q", 0, n_max),))
    return [s.coeff((n,)) for n in range(n_max + 1)]


def cmd_kummer(args) -> Report:
    rep = Report("kummer", {"d": args.d, "e_Y": args.ey, "n_max": args.nmax})
    vals = partitions.kummer_euler_characteristics(args.d, args.ey, args.nmax)
    for n, v in enumerate(vals, start=1):
        rep.add({"n": n, "euler": v})
    expected = None
    if args.d == 2 and args.ey == 1:
        expected = [Fraction(sigma(1, n), n) for n in range(1, args.nmax + 1)]
    elif args.d == 3:
        expected = [Fraction(args.ey * sigma(2, n), n) for n in range(1, args.nmax + 1)]
    if expected is not None:
        rep.check("matches the divisor-sum closed form", vals == expected)
    return rep.finish()


def cmd_gw(args) -> Report:
    return gw.correspondence_check(args.gmax, args.dmax, args.scheme)


def cmd_verify(args) -> Report:
    if args.which == "thm1":
        return invariants.verify_k3xe_routes(args.nmax, args.dmax)
    if args.which == "thm2":
        return invariants.verify_abelian_routes(args.nmax, args.dmax)
    return invariants.dtpt_verify_k3xe(args.dmax, args.nmax)


def cmd_tables(args) -> Report:
    which = args.which
    if which in ("c", "a"):
        table = (jacobi.c_table if which == "c" else jacobi.a_table)(args.bound)
        lo = -1
        rows = [{"m": m, "value": Fraction(table[m])} for m in range(lo, args.bound + 1)]
        config = {"bound": args.bound}
    elif which == "m":
        cfg = IgusaConfig(args.hmax, args.dmax, args.nmax)
        table = _igusa_table(args, cfg)
        lo = -args.nmax if args.nmin is None else args.nmin
        rows = [r for r in _table_records(table) if r["n"] >= lo]
        config = {"h_max": args.hmax, "d_max": args.dmax, "n_min": lo, "n_max": args.nmax}
    elif which == "mdirect":
        lo = -args.nmax if args.nmin is None else args.nmin
        rows = _table_records(jacobi.m_direct(args.dmax, lo, args.nmax))
        config = {"d_max": args.dmax, "n_min": lo, "n_max": args.nmax}
    elif which == "eta":
        s = jacobi.eta24_inverse(args.tmax)
        rows = [{"d": d, "value": Fraction(s.coeff((d,)))} for d in range(args.tmax + 1)]
        config = {"t_max": args.tmax}
    else:
        s = jacobi.macmahon(args.qmax)
        rows = [{"n": n, "value": Fraction(s.coeff((n,)))} for n in range(args.qmax + 1)]
        config = {"q_max": args.qmax}
    rep = Report(f"tables {which}", config)
    for r in rows:
        rep.add(r)
    return rep.finish()


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", type=Path, help="also write the report here")
    common.add_argument("--cache-dir", type=Path, help="overrides $CURVECOUNT_CACHE")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--jobs", type=int, default=1, help="echoed in the config; work is serial")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="curvecount", description="Exact curve-counting invariants of K3 x E and abelian threefolds.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("igusa", parents=[common], help="m(h, d, n) from -1/chi_10")
    s.add_argument("--hmax", type=int, default=2)
    s.add_argument("--dmax", type=int, default=2)
    s.add_argument("--nmax", type=int, default=10)
    s.add_argument("--plo", type=int, default=None, help="lower p-window edge")
    s.set_defaults(func=cmd_igusa)

    s = sub.add_parser("dt", parents=[common], help="a single reduced DT invariant")
    s.add_argument("family", choices=("k3xe", "abelian"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, default=0)
    s.add_argument("--beta-sq", type=int, default=None)
    s.add_argument("--beta-div", type=int, default=1)
    s.add_argument("--type", type=_parse_type, default=(0, 0, 0))
    s.add_argument("--route", choices=("closed_formula", "product_log", "wall_crossing", "multiple_cover"))
    s.add_argument("--divisor-rule", choices=("n", "gcd"), default="n")
    s.set_defaults(func=cmd_dt)

    s = sub.add_parser("wallcross", parents=[common], help="wall-crossing assembly")
    s.add_argument("family", choices=("k3xe", "abelian"))
    s.add_argument("--nmax", type=int, default=6)
    s.add_argument("--dmax", type=int, default=3)
    s.set_defaults(func=cmd_wallcross)

    s = sub.add_parser("partitions", parents=[common], help="brute-force d-dimensional partitions")
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--nmax", type=int, default=8)
    s.add_argument("--limit", type=int, default=None, help="override the enumeration guard")
    s.set_defaults(func=cmd_partitions)

    s = sub.add_parser("kummer", parents=[common], help="Euler characteristics of Hilb^n(Y x A)/A")
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--ey", type=int, default=24)
    s.add_argument("--nmax", type=int, default=8)
    s.set_defaults(func=cmd_kummer)

    s = sub.add_parser("gw-check", parents=[common], help="genus expansion on both sides")
    s.add_argument("--gmax", type=int, default=6)
    s.add_argument("--dmax", type=int, default=3)
    s.add_argument("--scheme", choices=gw.SCHEMES, default="split_tail")
    s.set_defaults(func=cmd_gw)

    s = sub.add_parser("verify", parents=[common], help="multi-route identity checks")
    s.add_argument("which", choices=("thm1", "thm2", "thm3"))
    s.add_argument("--nmax", type=int, default=10)
    s.add_argument("--dmax", type=int, default=5)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("tables", parents=[common], help="dump a coefficient table")
    s.add_argument("which", choices=("c", "a", "m", "mdirect", "eta", "macmahon"))
    s.add_argument("--bound", type=int, default=20)
    s.add_argument("--hmax", type=int, default=2)
    s.add_argument("--dmax", type=int, default=2)
    s.add_argument("--nmin", type=int, default=None)
    s.add_argument("--nmax", type=int, default=5)
    s.add_argument("--tmax", type=int, default=10)
    s.add_argument("--qmax", type=int, default=10)
    s.set_defaults(func=cmd_tables)
    return p


def run(argv=None) -> tuple[Report, str]:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    rep = args.func(args)
    rep.config["jobs"] = args.jobs
    text = rep.render(args.format)
    if args.output:
        args.output.write_text(text)
    return rep, text


def main(argv=None) -> int:
    try:
        rep, text = run(argv)
    except (ValueError, BeyondTruncation) as exc:
        print(f"curvecount: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
