"""Newline-delimited JSON store for enumerated classes.

The first line is a header naming the group, the trace limit and whether the
enumeration finished.  Every further line is one class.  A complete cache for
a larger limit serves any smaller limit.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import DomainError
from .exact import ExactTrace
from .fuchsian import ConjClass, FuchsianGroup

SCHEMA = 1
ENV_VAR = "GEODESIC_GAP_CACHE"
DEFAULT_PATH = "geodesic_gaps_cache.ndjson"


def _trace_to_json(t: ExactTrace | float):
    if isinstance(t, ExactTrace):
        return {"exact": t.to_list(), "float": float(t)}
    return {"exact": None, "float": float(t)}


def _trace_from_json(d) -> ExactTrace | float:
    if d["exact"] is not None:
        return ExactTrace(*d["exact"])
    return float(d["float"])


@dataclass(frozen=True)
class CacheHeader:
    fingerprint: str
    rotation: int
    max_half_trace: ExactTrace | float
    word_length_cap: int
    complete: bool
    count: int

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "surface": "bolza",
            "fingerprint": self.fingerprint,
            "rotation": self.rotation,
            "max_half_trace": _trace_to_json(self.max_half_trace),
            "word_length_cap": self.word_length_cap,
            "complete": self.complete,
            "truncated": not self.complete,
            "count": self.count,
        }

    @classmethod
    def from_dict(cls, d: dict) -> CacheHeader:
        if d.get("schema") != SCHEMA:
            raise DomainError(f"unsupported cache schema {d.get('schema')!r}")
        return cls(
            d["fingerprint"],
            d["rotation"],
            _trace_from_json(d["max_half_trace"]),
            d["word_length_cap"],
            d["complete"],
            d["count"],
        )

    def covers(self, G: FuchsianGroup, limit: ExactTrace | float) -> bool:
        """Whether this cache holds every class up to ``limit``."""
        if self.fingerprint != G.fingerprint or not self.complete:
            return False
        if isinstance(limit, ExactTrace) and isinstance(self.max_half_trace, ExactTrace):
            return limit <= self.max_half_trace
        return float(limit) <= float(self.max_half_trace) - 1e-9 or limit == self.max_half_trace


def record(c: ConjClass) -> dict:
    exact = c.half_trace.to_list() if isinstance(c.half_trace, ExactTrace) else None
    return {
        "word": c.word,
        "half_trace_exact": exact,
        "half_trace_float": c.half_trace_float,
        "length": c.length,
        "primitive": c.primitive,
        "simple": c.simple,
    }


def from_record(d: dict) -> ConjClass:
    t = ExactTrace(*d["half_trace_exact"]) if d["half_trace_exact"] is not None else float(d["half_trace_float"])
    return ConjClass(d["word"], t, float(d["length"]), bool(d["primitive"]), d["simple"])


def resolve_path(path: str | os.PathLike | None) -> Path:
    """The environment variable wins over any configured path."""
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(path) if path else Path(DEFAULT_PATH)


def write_cache(path: str | os.PathLike, header: CacheHeader, classes: list[ConjClass]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header.to_dict(), sort_keys=True, ensure_ascii=False) + "\n")
        for c in classes:
            fh.write(json.dumps(record(c), sort_keys=True, ensure_ascii=False) + "\n")
    os.replace(tmp, path)


def read_cache(path: str | os.PathLike) -> tuple[CacheHeader, list[ConjClass]]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if ln.strip()]
    if not lines:
        raise DomainError(f"cache {path} is empty")
    header = CacheHeader.from_dict(json.loads(lines[0]))
    classes = [from_record(json.loads(ln)) for ln in lines[1:]]
    if len(classes) != header.count:
        raise DomainError(f"cache {path} is damaged: header says {header.count} records, found {len(classes)}")
    return header, classes
