"""Deterministic scripted backend for tests and offline runs.

A script is a human-editable JSON file listing keyed responses:

    {"entries": [
      {"agent": "dialogue", "stage": "intake", "index": 0,
       "response": "Hello, what brings you in today?"},
      {"agent": "summary", "stage": "intake", "index": 0,
       "response": {"chief_complaint": "...", ...}}
    ]}

Matching is exact on (agent, stage, index); an optional "content_hash" pins an
entry to the SHA-256 of the request's message text. Several entries under one
key are consumed per retry attempt (the last one repeats). A request with no
entry is a hard error, never a silent fallthrough.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from caseflow.backend.base import Backend, CompletionRequest
from caseflow.canonical import canonical_dumps
from caseflow.errors import ScriptExhausted


def content_hash(request: CompletionRequest) -> str:
    return hashlib.sha256(request.content_text().encode("utf-8")).hexdigest()


def _render_response(value: Any) -> str:
    if isinstance(value, str):
        return value
    return canonical_dumps(value).rstrip("\n")


class ScriptedBackend(Backend):
    def __init__(self, entries: list[dict[str, Any]]):
        super().__init__()
        self._by_key: dict[tuple[str, str, int], list[dict[str, Any]]] = {}
        for entry in entries:
            key = (entry["agent"], entry.get("stage", ""), entry.get("index", 0))
            self._by_key.setdefault(key, []).append(entry)

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedBackend":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(data["entries"])

    def raw_complete(self, request: CompletionRequest, attempt: int) -> str:
        candidates = self._by_key.get(request.key.as_tuple(), [])
        candidates = [
            e for e in candidates
            if "content_hash" not in e or e["content_hash"] == content_hash(request)
        ]
        if not candidates:
            raise ScriptExhausted(request.key.as_tuple())
        entry = candidates[min(attempt, len(candidates) - 1)]
        return _render_response(entry["response"])
