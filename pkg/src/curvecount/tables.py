"""Memoized coefficient tables with explicit certified bounds."""
from __future__ import annotations

import csv
import io
from itertools import product
from dataclasses import dataclass, field

from .numeric import format_rational, parse_rational
from .series import BeyondTruncation


class TableRangeError(BeyondTruncation):
    """Read outside the certified bounds of a coefficient table."""


@dataclass
class CoeffTable:
    """Exact values indexed by integer tuples (or a single int).

    ``bounds`` maps each axis to an inclusive ``(lo, hi)``; ``lo`` may be
    ``None`` when the table is known to vanish below its certified range
    (as for ``c`` and ``a``, which are zero for arguments < -1).  Keys missing
    from ``values`` but inside the bounds read as zero.
    """

    name: str
    axes: tuple[str, ...]
    bounds: dict[str, tuple]
    values: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def _key(self, key) -> tuple:
        if not isinstance(key, tuple):
            key = (key,)
        if len(key) != len(self.axes):
            raise KeyError(f"{self.name} is indexed by {self.axes}, got {key}")
        return key

    def certified(self, key) -> bool:
        key = self._key(key)
        for axis, x in zip(self.axes, key):
            lo, hi = self.bounds[axis]
            if hi is not None and x > hi:
                return False
            if lo is not None and x < lo:
                return False
        return True

    def __getitem__(self, key):
        k = self._key(key)
        if not self.certified(k):
            raise TableRangeError(f"{self.name}{k} is outside certified bounds {self.bounds}")
        return self.values.get(k, 0)

    def __contains__(self, key):
        return self.certified(key)

    def items(self):
        for k in sorted(self.values):
            yield k, self.values[k]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "axes": list(self.axes),
            "bounds": {a: list(b) for a, b in self.bounds.items()},
            "values": [[*k, format_rational(v)] for k, v in self.items()],
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, blob: dict) -> "CoeffTable":
        axes = tuple(blob["axes"])
        values = {}
        for row in blob["values"]:
            key = tuple(int(x) for x in row[:-1])
            v = parse_rational(row[-1])
            values[key] = int(v) if v.denominator == 1 else v
        return cls(
            name=blob["name"],
            axes=axes,
            bounds={a: tuple(b) for a, b in blob["bounds"].items()},
            values=values,
            meta=dict(blob.get("meta", {})),
        )

    def rows(self):
        """Every certified entry when the bounds are finite, else the stored ones."""
        spans = [self.bounds[a] for a in self.axes]
        if any(lo is None or hi is None for lo, hi in spans):
            yield from self.items()
            return
        yield from ((k, self.values.get(k, 0)) for k in product(*(range(lo, hi + 1) for lo, hi in spans)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([*self.axes, "value"])
        for k, v in self.rows():
            w.writerow([*k, format_rational(v)])
        return buf.getvalue()
