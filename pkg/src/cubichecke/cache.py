"""Versioned JSON cache for factorizations, character lists and constants.

Entries live in ``<cache_dir>/<namespace>/<sha256 of key>.json``.  An entry
written under another ``CACHE_VERSION`` is treated as missing, and an
unreadable entry is skipped with a warning.
"""
from __future__ import annotations

import hashlib
import json
import os
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

CACHE_VERSION = 1
ENV_VAR = "CHL_CACHE_DIR"


def default_cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR) or Path.home() / ".cache" / "cubichecke")


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    stale: int = 0
    corrupt: int = 0


class JsonCache:
    def __init__(self, root: Optional[os.PathLike] = None, version: int = CACHE_VERSION):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.version = version
        self.stats = CacheStats()

    def _path(self, namespace: str, key: Any) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode()).hexdigest()
        return self.root / namespace / f"{digest}.json"

    def store(self, namespace: str, key: Any, payload: Any) -> Path:
        path = self._path(namespace, key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps({"version": self.version, "key": key, "payload": payload}, sort_keys=True))
        tmp.replace(path)
        return path

    def load(self, namespace: str, key: Any) -> Optional[Any]:
        path = self._path(namespace, key)
        if not path.exists():
            self.stats.misses += 1
            return None
        try:
            entry = json.loads(path.read_text())
            version, stored_key, payload = entry["version"], entry["key"], entry["payload"]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            warnings.warn(f"skipping corrupt cache entry {path}: {exc}", RuntimeWarning, stacklevel=2)
            self.stats.corrupt += 1
            return None
        if version != self.version or stored_key != json.loads(json.dumps(key)):
            self.stats.stale += 1
            return None
        self.stats.hits += 1
        return payload

    def get_or_compute(self, namespace: str, key: Any, compute):
        hit = self.load(namespace, key)
        if hit is not None:
            return hit
        payload = compute()
        self.store(namespace, key, payload)
        return payload


def cache_store(key: Any, payload: Any, namespace: str = "misc", root: Optional[os.PathLike] = None) -> Path:
    return JsonCache(root).store(namespace, key, payload)


def cache_load(key: Any, namespace: str = "misc", root: Optional[os.PathLike] = None) -> Optional[Any]:
    return JsonCache(root).load(namespace, key)
