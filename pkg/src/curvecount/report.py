"""Records and pass/fail reports shared by the verifiers and the CLI."""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .numeric import BiDualNumber, DualNumber, format_rational

ROUTES = ("closed_formula", "multiple_cover", "wall_crossing", "product_log")


def encode_value(v):
    if isinstance(v, DualNumber):
        return [format_rational(v.real), format_rational(v.eps)]
    if isinstance(v, BiDualNumber):
        return [format_rational(x) for x in v.coeffs()]
    if isinstance(v, (int, Fraction)):
        return format_rational(v)
    return v


@dataclass(frozen=True)
class InvariantRecord:
    """One invariant value together with the route that produced it."""

    invariant: str
    cls: dict
    value: Fraction
    route: str

    def to_json(self) -> dict:
        return {
            "invariant": self.invariant,
            "class": self.cls,
            "value": encode_value(self.value),
            "route": self.route,
        }


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    command: str
    config: dict
    records: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    elapsed: float = 0.0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def add(self, record):
        self.records.append(record)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def finish(self) -> "Report":
        self.elapsed = time.perf_counter() - self._t0
        return self

    def _record_dicts(self):
        for r in self.records:
            if hasattr(r, "to_json"):
                yield r.to_json()
            else:
                # plain ints are indices or counts; computed values arrive as Fractions
                yield {k: v if isinstance(v, int) else encode_value(v) for k, v in r.items()}

    def summary(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
            "n_records": len(self.records),
            "elapsed_seconds": round(self.elapsed, 3),
        }

    def to_jsonl(self) -> str:
        lines = [json.dumps(r, sort_keys=True) for r in self._record_dicts()]
        lines.append(json.dumps({"summary": self.summary()}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        rows = [_flatten(r) for r in self._record_dicts()]
        buf = io.StringIO()
        if rows:
            header = list(rows[0])
            w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n", extrasaction="ignore")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()

    def to_text(self) -> str:
        out = [f"# {self.command}  {json.dumps(self.config, sort_keys=True)}"]
        rows = [_flatten(r) for r in self._record_dicts()]
        if rows:
            header = list(rows[0])
            widths = {h: max(len(h), *(len(str(r.get(h, ""))) for r in rows)) for h in header}
            out.append("  ".join(h.rjust(widths[h]) for h in header))
            for r in rows:
                out.append("  ".join(str(r.get(h, "")).rjust(widths[h]) for h in header))
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            out.append(f"[{tag}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'}  ({self.elapsed:.2f}s)")
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_jsonl, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = " ".join(str(x) for x in v)
        else:
            out[key] = v
    return out
