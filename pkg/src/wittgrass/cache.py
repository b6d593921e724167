"""
Tiny JSON result caches (one file per module, schema-versioned,
append-only).  Corrupt caches are ignored with a warning, never trusted.
"""

from __future__ import annotations

import json
import os
import sys

SCHEMA_VERSION = 1


def cache_dir() -> str | None:
    return os.environ.get("WITTGRASS_CACHE_DIR")


def load(name: str, fingerprint: str, directory: str | None = None) -> dict:
    d = directory or cache_dir()
    if not d:
        return {}
    path = os.path.join(d, name)
    if not os.path.exists(path):
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("schema") != SCHEMA_VERSION or data.get("fingerprint") != fingerprint:
            print(f"warning: ignoring stale cache {path}", file=sys.stderr)
            return {}
        return data.get("entries", {})
    except (json.JSONDecodeError, OSError) as e:
        print(f"warning: ignoring corrupt cache {path}: {e}", file=sys.stderr)
        return {}


def store(name: str, fingerprint: str, entries: dict, directory: str | None = None):
    d = directory or cache_dir()
    if not d:
        return
    os.makedirs(d, exist_ok=True)
    path = os.path.join(d, name)
    merged = load(name, fingerprint, d)
    merged.update(entries)
    with open(path, "w") as fh:
        json.dump(
            {"schema": SCHEMA_VERSION, "fingerprint": fingerprint, "entries": merged},
            fh,
            sort_keys=True,
        )
