"""The oversight backend: case queue, claim/lease, edits, ratings, decisions.

All mutation is serialized through one lock and recorded as audit events; the
store's full state can be rebuilt from the audit log alone (`replay`), and a
derived snapshot directory mirrors cases for inspection.
"""

from __future__ import annotations

import threading
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Any, Callable, Iterable

from caseflow.canonical import canonical_dumps
from caseflow.core.case import (
    Claim,
    Decide,
    Decision,
    DecisionKind,
    Edit,
    EditRecord,
    Enqueue,
    ExpireLease,
    OversightCase,
    RateSignificance,
    CaseStateKind,
    check_immutable_target,
    transition,
)
from caseflow.core.note import NoteSection, section_text, validate_note
from caseflow.core.types import SignificanceLikert
from caseflow.errors import (
    CaseflowError,
    EditMismatch,
    InvalidState,
    NotLeaseHolder,
    UnknownCase,
)
from caseflow.oversight.audit import AuditEvent, AuditKind, AuditLog, read_log

DEFAULT_LEASE_MINUTES = 60

Clock = Callable[[], datetime]


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


class TickClock:
    """Deterministic clock for scripted runs: starts at a fixed instant and
    advances by a fixed step on every reading."""

    def __init__(self, start: datetime | None = None, step_seconds: float = 1.0):
        self._current = start or datetime(2000, 1, 1, tzinfo=timezone.utc)
        self._step = timedelta(seconds=step_seconds)

    def __call__(self) -> datetime:
        value = self._current
        self._current = self._current + self._step
        return value


class InvalidEdit(CaseflowError):
    """Edit text does not parse or leaves the note schema-invalid."""


class OversightStore:
    def __init__(
        self,
        storage_dir: str | Path | None = None,
        lease_minutes: float = DEFAULT_LEASE_MINUTES,
        clock: Clock | None = None,
    ):
        self._lock = threading.RLock()
        self.lease_minutes = lease_minutes
        self.clock: Clock = clock or utc_now
        self.storage_dir = Path(storage_dir) if storage_dir else None
        log_path = None
        if self.storage_dir is not None:
            self.storage_dir.mkdir(parents=True, exist_ok=True)
            (self.storage_dir / "cases").mkdir(exist_ok=True)
            log_path = self.storage_dir / "audit.log"
        self.log = AuditLog(log_path)
        self._cases: dict[str, OversightCase] = {}
        self._queue_order: list[str] = []
        self._session_trace: dict[str, list[dict[str, Any]]] = {}
        if self.log.events:
            self._rebuild(self.log.events)

    # -- internals ---------------------------------------------------------

    def _audit(self, case_id: str, kind: AuditKind, payload: dict[str, Any]) -> AuditEvent:
        return self.log.append(case_id, kind, self.clock(), payload)

    def _snapshot(self, case: OversightCase) -> None:
        if self.storage_dir is not None:
            path = self.storage_dir / "cases" / f"{case.case_id}.json"
            path.write_text(case.serialize(), encoding="utf-8")

    def _store(self, case: OversightCase) -> None:
        self._cases[case.case_id] = case
        self._snapshot(case)

    def _get(self, case_id: str) -> OversightCase:
        try:
            return self._cases[case_id]
        except KeyError:
            raise UnknownCase(f"unknown case {case_id!r}") from None

    def _require_lease(self, case: OversightCase, reviewer_id: str) -> None:
        state = case.state
        if state.kind is not CaseStateKind.UNDER_REVIEW or state.reviewer_id != reviewer_id:
            raise NotLeaseHolder(
                f"case {case.case_id} is not under review by {reviewer_id!r}"
            )

    def _expire_if_lapsed(self, case: OversightCase, now: datetime) -> OversightCase:
        if (
            case.state.kind is CaseStateKind.UNDER_REVIEW
            and case.state.lease_expiry is not None
            and now >= case.state.lease_expiry
        ):
            case = transition(case, ExpireLease(at=now))
            self._store(case)
            self._audit(case.case_id, AuditKind.LEASE_EXPIRED, {})
        return case

    # -- session lifecycle bridge -------------------------------------------

    def record_session_event(self, case_id: str, kind: AuditKind,
                             payload: dict[str, Any]) -> None:
        """Record dialogue-side lifecycle events (turns, note drafting) for
        accountability; these precede the case entering the queue."""
        if kind not in (AuditKind.TURN_APPENDED, AuditKind.NOTE_DRAFTED):
            raise ValueError(f"not a session lifecycle event: {kind}")
        with self._lock:
            self._session_trace.setdefault(case_id, []).append(
                {"kind": kind.value, "payload": payload}
            )
            self._audit(case_id, kind, payload)

    # -- operations ----------------------------------------------------------

    def enqueue(self, case: OversightCase) -> str:
        """Ingest a drafted case into the review queue. Re-enqueueing a known
        case id is a no-op returning the same id."""
        with self._lock:
            if case.case_id in self._cases:
                return case.case_id
            if case.state.kind is not CaseStateKind.NOTE_DRAFTED:
                raise InvalidState(
                    f"case must be note_drafted to enqueue, is {case.state.kind.value}"
                )
            violations = validate_note(case.working_note)
            if violations:
                raise InvalidEdit(
                    "note failed validation: " + "; ".join(str(v) for v in violations)
                )
            snapshot = case.to_dict()
            queued = transition(case, Enqueue())
            self._store(queued)
            self._queue_order.append(case.case_id)
            self._audit(case.case_id, AuditKind.CREATED, {"case": snapshot})
            return case.case_id

    def claim(self, reviewer_id: str) -> OversightCase | None:
        """Claim the oldest waiting case (FIFO by enqueue order); None when the
        queue is empty. Lapsed leases are swept back to the queue first."""
        with self._lock:
            now = self.clock()
            for case_id in self._queue_order:
                self._expire_if_lapsed(self._cases[case_id], now)
            for case_id in self._queue_order:
                case = self._cases[case_id]
                if case.state.kind is CaseStateKind.AWAITING_OVERSIGHT:
                    return self._claim_locked(case, reviewer_id, now)
            return None

    def claim_case(self, case_id: str, reviewer_id: str) -> OversightCase:
        """Claim one specific case (the review surface claims what it shows)."""
        with self._lock:
            now = self.clock()
            case = self._expire_if_lapsed(self._get(case_id), now)
            if case.state.kind is not CaseStateKind.AWAITING_OVERSIGHT:
                raise InvalidState(
                    f"case {case_id} is not claimable ({case.state.kind.value})"
                )
            return self._claim_locked(case, reviewer_id, now)

    def _claim_locked(self, case: OversightCase, reviewer_id: str,
                      now: datetime) -> OversightCase:
        lease_expiry = now + timedelta(minutes=self.lease_minutes)
        case = transition(case, Claim(reviewer_id=reviewer_id, lease_expiry=lease_expiry, at=now))
        self._store(case)
        self._audit(
            case.case_id,
            AuditKind.CLAIMED,
            {"reviewer_id": reviewer_id, "lease_expiry": lease_expiry.isoformat()},
        )
        return case

    def apply_edit(self, case_id: str, reviewer_id: str, section_name: str,
                   before: str, after: str) -> OversightCase:
        """Apply one optimistic section edit to the working note."""
        with self._lock:
            case = self._get(case_id)
            self._require_lease(case, reviewer_id)
            check_immutable_target(section_name)
            try:
                section = NoteSection(section_name)
            except ValueError:
                raise InvalidEdit(f"unknown section {section_name!r}") from None
            record = EditRecord(
                section=section, before=before, after=after, timestamp=self.clock()
            )
            try:
                updated = transition(case, Edit(record=record, reviewer_id=reviewer_id))
            except ValueError as exc:  # unparseable section text
                raise InvalidEdit(f"section text does not parse: {exc}") from exc
            violations = validate_note(updated.working_note)
            if violations:
                raise InvalidEdit(
                    "edit leaves the note invalid: " + "; ".join(str(v) for v in violations)
                )
            self._store(updated)
            self._audit(case_id, AuditKind.EDITED, {"record": record.to_dict()})
            return updated

    def rate_significance(self, case_id: str, reviewer_id: str, section_name: str,
                          rating: SignificanceLikert) -> OversightCase:
        with self._lock:
            case = self._get(case_id)
            self._require_lease(case, reviewer_id)
            section = NoteSection(section_name)
            updated = transition(
                case,
                RateSignificance(section=section, rating=rating, reviewer_id=reviewer_id),
            )
            self._store(updated)
            self._audit(
                case_id,
                AuditKind.SIGNIFICANCE_RATED,
                {"section": section.value, "value": rating.value},
            )
            return updated

    def decide(self, case_id: str, reviewer_id: str, kind: DecisionKind) -> Decision:
        """Record the reviewer's decision and freeze the case."""
        with self._lock:
            case = self._get(case_id)
            self._require_lease(case, reviewer_id)
            if kind is DecisionKind.SEND_A and case.has_effective_edits():
                raise EditMismatch("send_a requires the working note to equal the draft")
            if kind is DecisionKind.SEND_EDITED_A and not case.edits:
                raise EditMismatch("send_edited_a requires at least one edit")
            decision = Decision(kind=kind, reviewer_id=reviewer_id, timestamp=self.clock())
            updated = transition(case, Decide(decision=decision))
            self._store(updated)
            self._audit(case_id, AuditKind.DECIDED, {"decision": decision.to_dict()})
            return decision

    # -- reads ----------------------------------------------------------------

    def get_case(self, case_id: str) -> OversightCase:
        with self._lock:
            return self._get(case_id)

    def queue(self) -> list[OversightCase]:
        """Claimable cases in FIFO order; sweeps lapsed leases on the way."""
        with self._lock:
            now = self.clock()
            out = []
            for case_id in self._queue_order:
                case = self._expire_if_lapsed(self._cases[case_id], now)
                if case.state.kind is CaseStateKind.AWAITING_OVERSIGHT:
                    out.append(case)
            return out

    def all_cases(self) -> list[OversightCase]:
        with self._lock:
            return [self._cases[cid] for cid in self._queue_order]

    def audit_for_case(self, case_id: str) -> list[AuditEvent]:
        with self._lock:
            return self.log.for_case(case_id)

    def session_trace(self, case_id: str) -> list[dict[str, Any]]:
        with self._lock:
            return list(self._session_trace.get(case_id, []))

    # -- replay ----------------------------------------------------------------

    def serialize_state(self) -> str:
        """Canonical rendering of everything replay must reproduce."""
        with self._lock:
            return canonical_dumps(
                {
                    "cases": {cid: self._cases[cid].to_dict() for cid in sorted(self._cases)},
                    "queue_order": list(self._queue_order),
                    "session_trace": {
                        cid: self._session_trace[cid] for cid in sorted(self._session_trace)
                    },
                    "next_seq": self.log.next_seq,
                }
            )

    def _rebuild(self, events: Iterable[AuditEvent]) -> None:
        for event in events:
            kind = event.kind
            if kind is AuditKind.CREATED:
                case = OversightCase.from_dict(event.payload["case"])
                queued = transition(case, Enqueue())
                self._cases[case.case_id] = queued
                self._queue_order.append(case.case_id)
            elif kind in (AuditKind.TURN_APPENDED, AuditKind.NOTE_DRAFTED):
                self._session_trace.setdefault(event.case_id, []).append(
                    {"kind": kind.value, "payload": event.payload}
                )
            elif kind is AuditKind.CLAIMED:
                from caseflow.canonical import parse_instant

                case = self._cases[event.case_id]
                self._cases[event.case_id] = transition(
                    case,
                    Claim(
                        reviewer_id=event.payload["reviewer_id"],
                        lease_expiry=parse_instant(event.payload["lease_expiry"]),
                        at=event.timestamp,
                    ),
                )
            elif kind is AuditKind.LEASE_EXPIRED:
                case = self._cases[event.case_id]
                self._cases[event.case_id] = transition(case, ExpireLease(at=event.timestamp))
            elif kind is AuditKind.EDITED:
                case = self._cases[event.case_id]
                record = EditRecord.from_dict(event.payload["record"])
                self._cases[event.case_id] = transition(
                    case, Edit(record=record, reviewer_id=case.state.reviewer_id or "")
                )
            elif kind is AuditKind.SIGNIFICANCE_RATED:
                case = self._cases[event.case_id]
                self._cases[event.case_id] = transition(
                    case,
                    RateSignificance(
                        section=NoteSection(event.payload["section"]),
                        rating=SignificanceLikert(event.payload["value"]),
                        reviewer_id=case.state.reviewer_id or "",
                    ),
                )
            elif kind is AuditKind.DECIDED:
                case = self._cases[event.case_id]
                self._cases[event.case_id] = transition(
                    case, Decide(decision=Decision.from_dict(event.payload["decision"]))
                )


def replay(source: str | Path | list[AuditEvent], *,
           lease_minutes: float = DEFAULT_LEASE_MINUTES) -> OversightStore:
    """Reconstruct a store purely from an audit log (path or event list)."""
    events = list(read_log(source)) if isinstance(source, (str, Path)) else list(source)
    from caseflow.oversight.audit import verify_sequence

    verify_sequence(events)
    store = OversightStore(storage_dir=None, lease_minutes=lease_minutes)
    store._rebuild(events)
    store.log.events = list(events)
    return store
