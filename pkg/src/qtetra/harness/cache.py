"""Content-addressed on-disk store for computed blocks.

Entries are JSON files named by the sha256 of their key. Each file carries a
checksum of its payload; a mismatch or unreadable body triggers a warning and
the caller recomputes. Genuine I/O failures (permissions, missing disk) are
raised as ``CacheError``.
"""

from __future__ import annotations

import hashlib
import json
import os
import warnings
from pathlib import Path
from typing import Any, Callable, List, Optional

from ..exactalg import RatFunc

ENV_VAR = "QTETRA_CACHE_DIR"


class CacheError(OSError):
    pass


class CacheWarning(UserWarning):
    pass


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _canonical(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class BlockCache:
    def __init__(self, directory):
        self.root = Path(directory)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CacheError(f"cannot create cache directory {self.root}: {exc}") from exc
        self.hits = 0
        self.misses = 0

    @classmethod
    def from_env(cls, directory: Optional[str] = None) -> Optional["BlockCache"]:
        directory = directory or os.environ.get(ENV_VAR)
        return cls(directory) if directory else None

    def path_for(self, key: str) -> Path:
        return self.root / f"{_digest(key)}.json"

    def load(self, key: str) -> Optional[Any]:
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            raw = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CacheError(f"cannot read cache entry {path}: {exc}") from exc
        try:
            doc = json.loads(raw)
            ok = doc["key"] == key and doc["sha256"] == _digest(_canonical(doc["value"]))
        except (ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            warnings.warn(f"corrupted cache entry {path.name}; recomputing", CacheWarning, stacklevel=3)
            return None
        return doc["value"]

    def store(self, key: str, value: Any) -> None:
        path = self.path_for(key)
        doc = {"key": key, "value": value, "sha256": _digest(_canonical(value))}
        tmp = path.with_suffix(".tmp")
        try:
            tmp.write_text(json.dumps(doc, sort_keys=True), encoding="utf-8")
            os.replace(tmp, path)
        except OSError as exc:
            raise CacheError(f"cannot write cache entry {path}: {exc}") from exc

    def get_or_compute(self, key: str, compute: Callable[[], Any]) -> Any:
        value = self.load(key)
        if value is not None:
            self.hits += 1
            return value
        self.misses += 1
        value = compute()
        self.store(key, value)
        return value


def matrix_key(spec, d: int) -> str:
    s, t = spec
    return f"reduced-matrix/v1/{s},{t}/{d}"


def encode_matrix(M) -> List[List[str]]:
    return [[v.to_text() for v in row] for row in M]


def decode_matrix(rows) -> List[List[RatFunc]]:
    return [[RatFunc.from_text(v) for v in row] for row in rows]
