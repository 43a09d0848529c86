"""Content-addressed on-disk cache for coefficient tables and series.

Entries live under ``$CURVECOUNT_CACHE`` (default ``~/.cache/curvecount``) as
``<sha256>.json``, keyed by the kind of object, its semantic config and the
format version.  Writes go to a temp file that is renamed into place.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable

from .series import MultiSeries
from .tables import CoeffTable

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
ENV_VAR = "CURVECOUNT_CACHE"


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path.home() / ".cache" / "curvecount"


def cache_key(kind: str, config: dict) -> str:
    blob = json.dumps({"kind": kind, "config": config, "version": FORMAT_VERSION}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def encode(obj) -> dict:
    if isinstance(obj, CoeffTable):
        return {"type": "table", "data": obj.to_json()}
    if isinstance(obj, MultiSeries):
        return {"type": "series", "data": obj.to_json()}
    raise TypeError(f"cannot cache {type(obj).__name__}")


def decode(blob: dict):
    kind = blob["type"]
    if kind == "table":
        return CoeffTable.from_json(blob["data"])
    if kind == "series":
        return MultiSeries.from_json(blob["data"])
    raise ValueError(f"unknown cached type {kind!r}")


def roundtrip(obj):
    """Serialize and parse back, as the cache would."""
    return decode(json.loads(json.dumps(encode(obj), sort_keys=True)))


class Cache:
    def __init__(self, directory: str | os.PathLike | None = None, enabled: bool = True):
        self.dir = Path(directory) if directory else default_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def path(self, kind: str, config: dict) -> Path:
        return self.dir / f"{cache_key(kind, config)}.json"

    def load(self, kind: str, config: dict):
        p = self.path(kind, config)
        if not p.exists():
            return None
        try:
            blob = json.loads(p.read_text())
            if blob.get("version") != FORMAT_VERSION or blob.get("kind") != kind:
                raise ValueError(f"version/kind mismatch in {p.name}")
            return decode(blob["payload"])
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("discarding unreadable cache entry %s: %s", p, exc)
            return None

    def store(self, kind: str, config: dict, obj) -> Path:
        self.dir.mkdir(parents=True, exist_ok=True)
        p = self.path(kind, config)
        blob = {"kind": kind, "config": config, "version": FORMAT_VERSION, "payload": encode(obj)}
        fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(blob, fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return p

    def get_or_compute(self, kind: str, config: dict, compute: Callable, validate: Callable | None = None):
        """Cached object if present and accepted by ``validate``, else compute and store."""
        if self.enabled:
            hit = self.load(kind, config)
            if hit is not None and validate is not None and not validate(hit):
                log.warning("cached %s failed revalidation; recomputing", kind)
                hit = None
            if hit is not None:
                self.hits += 1
                return hit
        self.misses += 1
        obj = compute()
        if self.enabled:
            self.store(kind, config, obj)
        return obj
