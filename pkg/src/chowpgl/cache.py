"""On-disk JSON cache for expensive results (generator tables, relation tables).

Entries live in ``$CHOWPGL_CACHE_DIR`` or ``~/.cache/chowpgl/``, one file per
key.  A key is the SHA-256 of the canonical JSON of (command, parameters,
engine version).  Writes go to a temporary file that is then renamed over the
target, so readers never see partial entries.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path
from typing import Any, Callable, Mapping, Optional

from .lattice_invariants import ENGINE_VERSION

ENV_VAR = "CHOWPGL_CACHE_DIR"
SCHEMA_VERSION = 1


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "chowpgl"


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(command: str, params: Mapping[str, Any], engine_version: str = ENGINE_VERSION) -> str:
    blob = canonical_json({"command": command, "params": dict(params), "engine": engine_version,
                           "schema": SCHEMA_VERSION})
    return hashlib.sha256(blob.encode()).hexdigest()


class Cache:
    def __init__(self, directory: Optional[os.PathLike] = None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.enabled = enabled

    def path_for(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, command: str, params: Mapping[str, Any]) -> Optional[Any]:
        if not self.enabled:
            return None
        path = self.path_for(cache_key(command, params))
        try:
            with open(path, encoding="utf-8") as fh:
                entry = json.load(fh)
        except (OSError, ValueError):
            return None
        if entry.get("engine_version") != ENGINE_VERSION or entry.get("schema") != SCHEMA_VERSION:
            return None
        return entry.get("payload")

    def put(self, command: str, params: Mapping[str, Any], payload: Any) -> None:
        if not self.enabled:
            return
        key = cache_key(command, params)
        entry = {"key": key, "command": command, "params": dict(params), "engine_version": ENGINE_VERSION,
                 "schema": SCHEMA_VERSION, "created_at": time.time(), "payload": payload}
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, self.path_for(key))
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def get_or_compute(self, command: str, params: Mapping[str, Any], compute: Callable[[], Any]) -> Any:
        hit = self.get(command, params)
        if hit is not None:
            return hit
        payload = compute()
        # round-trip so that hits and misses hand back identical structures
        payload = json.loads(canonical_json(payload))
        self.put(command, params, payload)
        return payload


def generator_table(p: int, torus, group, max_degree: int, cache: Optional[Cache] = None,
                    time_budget: Optional[float] = None):
    """:func:`minimal_generators` through the cache (keyed on p, torus, group, max_degree)."""
    from .lattice_invariants import GeneratorTable, TorusKind, _as_group, minimal_generators

    torus = TorusKind(torus)
    group = _as_group(group, p)
    params = {"p": p, "torus": torus.value, "group": group.label, "max_degree": max_degree}

    def compute():
        return minimal_generators(p, torus, group, max_degree, time_budget=time_budget).to_json()

    if cache is None:
        payload = compute()
    else:
        payload = cache.get_or_compute("generator-table", params, compute)
    return GeneratorTable.from_json(payload)
