"""Append-only audit log. Events are never rewritten; store state is always
reconstructible from the log alone (see `replay` in the store module)."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Iterable

from caseflow.canonical import canonical_line, canonical_loads, format_instant, parse_instant
from caseflow.errors import CorruptLog


class AuditKind(Enum):
    CREATED = "created"
    TURN_APPENDED = "turn_appended"
    NOTE_DRAFTED = "note_drafted"
    CLAIMED = "claimed"
    LEASE_EXPIRED = "lease_expired"
    EDITED = "edited"
    SIGNIFICANCE_RATED = "significance_rated"
    DECIDED = "decided"


@dataclass(frozen=True)
class AuditEvent:
    seq: int
    case_id: str
    kind: AuditKind
    timestamp: datetime
    payload: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {
            "seq": self.seq,
            "case_id": self.case_id,
            "kind": self.kind.value,
            "timestamp": format_instant(self.timestamp),
            "payload": self.payload,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AuditEvent":
        return cls(
            seq=data["seq"],
            case_id=data["case_id"],
            kind=AuditKind(data["kind"]),
            timestamp=parse_instant(data["timestamp"]),
            payload=data.get("payload", {}),
        )


class AuditLog:
    """In-memory event list, optionally mirrored to one-event-per-line storage."""

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path is not None else None
        self.events: list[AuditEvent] = []
        if self.path is not None and self.path.exists():
            self.events = list(read_log(self.path))

    @property
    def next_seq(self) -> int:
        return self.events[-1].seq + 1 if self.events else 0

    def append(self, case_id: str, kind: AuditKind, timestamp: datetime,
               payload: dict[str, Any]) -> AuditEvent:
        event = AuditEvent(
            seq=self.next_seq, case_id=case_id, kind=kind, timestamp=timestamp, payload=payload
        )
        self.events.append(event)
        if self.path is not None:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(canonical_line(event.to_dict()) + "\n")
        return event

    def for_case(self, case_id: str) -> list[AuditEvent]:
        return [e for e in self.events if e.case_id == case_id]


def read_log(path: str | Path) -> Iterable[AuditEvent]:
    """Parse an audit file, verifying the sequence is gapless from 0."""
    events: list[AuditEvent] = []
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines()):
        if not line.strip():
            continue
        try:
            event = AuditEvent.from_dict(canonical_loads(line))
        except (KeyError, ValueError) as exc:
            raise CorruptLog(f"{path}:{line_no + 1}: unreadable event: {exc}") from exc
        events.append(event)
    verify_sequence(events)
    return events


def verify_sequence(events: list[AuditEvent]) -> None:
    for i, event in enumerate(events):
        if event.seq != i:
            raise CorruptLog(f"sequence gap or disorder at position {i}: seq {event.seq}")
