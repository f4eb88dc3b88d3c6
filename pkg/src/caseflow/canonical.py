"""Canonical text serialization used for wire, storage, and equality checks.

Every persisted artifact (transcripts, notes, cases, audit events, packs,
reports) goes through these helpers so that serialize -> parse -> serialize
is byte-identical.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import Any


def canonical_dumps(obj: Any) -> str:
    """Render *obj* as key-ordered, UTF-8-safe JSON with a trailing newline."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def canonical_line(obj: Any) -> str:
    """Compact single-line rendering, used for append-only log records."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def canonical_loads(text: str) -> Any:
    return json.loads(text)


def format_instant(dt: datetime) -> str:
    """UTC instant as ISO-8601 text; naive datetimes are rejected."""
    if dt.tzinfo is None:
        raise ValueError("timestamps must be timezone-aware")
    return dt.astimezone(timezone.utc).isoformat()


def parse_instant(text: str) -> datetime:
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        raise ValueError(f"timestamp without timezone: {text!r}")
    return dt.astimezone(timezone.utc)
