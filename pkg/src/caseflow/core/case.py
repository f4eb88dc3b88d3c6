"""Review-case lifecycle: states, events, and the pure transition function.

The transition relation is declared as an explicit edge table so tests can
brute-force-compare behavior against it. A Decided case is absorbing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime
from enum import Enum
from typing import Any, Mapping

from caseflow.canonical import canonical_dumps, canonical_loads, format_instant, parse_instant
from caseflow.core.note import NoteSection, SoapNote, section_text, with_section_text
from caseflow.core.types import SignificanceLikert, Transcript
from caseflow.errors import ImmutableSection, StaleEdit, TransitionError

DEFAULT_MESSAGE_B_TEXT = (
    "Thank you for your consultation. The overseeing physician has reviewed your "
    "case and would like to schedule a follow-up consultation to gather more "
    "information before sharing a diagnosis and next steps."
)

IMMUTABLE_SECTION_NAMES = frozenset({"transcript", "message_b"})


class CaseStateKind(Enum):
    CREATED = "created"
    INTAKE_IN_PROGRESS = "intake_in_progress"
    INTAKE_COMPLETE = "intake_complete"
    NOTE_DRAFTED = "note_drafted"
    AWAITING_OVERSIGHT = "awaiting_oversight"
    UNDER_REVIEW = "under_review"
    DECIDED = "decided"


@dataclass(frozen=True)
class CaseState:
    kind: CaseStateKind
    reviewer_id: str | None = None
    lease_expiry: datetime | None = None

    def __post_init__(self):
        holding = self.kind is CaseStateKind.UNDER_REVIEW
        if holding and (self.reviewer_id is None or self.lease_expiry is None):
            raise ValueError("under_review state requires reviewer_id and lease_expiry")
        if not holding and (self.reviewer_id is not None or self.lease_expiry is not None):
            raise ValueError(f"{self.kind.value} state carries no lease")

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "reviewer_id": self.reviewer_id,
            "lease_expiry": format_instant(self.lease_expiry) if self.lease_expiry else None,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CaseState":
        return cls(
            kind=CaseStateKind(data["kind"]),
            reviewer_id=data.get("reviewer_id"),
            lease_expiry=parse_instant(data["lease_expiry"]) if data.get("lease_expiry") else None,
        )


class DecisionKind(Enum):
    SEND_A = "send_a"
    SEND_EDITED_A = "send_edited_a"
    REQUEST_FOLLOW_UP_B = "request_follow_up_b"


@dataclass(frozen=True)
class Decision:
    kind: DecisionKind
    reviewer_id: str
    timestamp: datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "reviewer_id": self.reviewer_id,
            "timestamp": format_instant(self.timestamp),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Decision":
        return cls(
            kind=DecisionKind(data["kind"]),
            reviewer_id=data["reviewer_id"],
            timestamp=parse_instant(data["timestamp"]),
        )


@dataclass(frozen=True)
class EditRecord:
    section: NoteSection
    before: str
    after: str
    timestamp: datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "section": self.section.value,
            "before": self.before,
            "after": self.after,
            "timestamp": format_instant(self.timestamp),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EditRecord":
        return cls(
            section=NoteSection(data["section"]),
            before=data["before"],
            after=data["after"],
            timestamp=parse_instant(data["timestamp"]),
        )


# --- events -----------------------------------------------------------------


@dataclass(frozen=True)
class StartIntake:
    pass


@dataclass(frozen=True)
class CompleteIntake:
    pass


@dataclass(frozen=True)
class DraftNote:
    pass


@dataclass(frozen=True)
class Enqueue:
    pass


@dataclass(frozen=True)
class Claim:
    reviewer_id: str
    lease_expiry: datetime
    at: datetime


@dataclass(frozen=True)
class ExpireLease:
    at: datetime


@dataclass(frozen=True)
class Edit:
    record: EditRecord
    reviewer_id: str


@dataclass(frozen=True)
class RateSignificance:
    section: NoteSection
    rating: SignificanceLikert
    reviewer_id: str


@dataclass(frozen=True)
class Decide:
    decision: Decision


CaseEvent = (
    StartIntake
    | CompleteIntake
    | DraftNote
    | Enqueue
    | Claim
    | ExpireLease
    | Edit
    | RateSignificance
    | Decide
)

# Legal (state, event-type) edges; guards beyond the state kind are noted in
# `transition` (lease expiry for re-claim and for ExpireLease).
LIFECYCLE_EDGES: dict[CaseStateKind, tuple[type, ...]] = {
    CaseStateKind.CREATED: (StartIntake,),
    CaseStateKind.INTAKE_IN_PROGRESS: (CompleteIntake,),
    CaseStateKind.INTAKE_COMPLETE: (DraftNote,),
    CaseStateKind.NOTE_DRAFTED: (Enqueue,),
    CaseStateKind.AWAITING_OVERSIGHT: (Claim,),
    CaseStateKind.UNDER_REVIEW: (Claim, ExpireLease, Edit, RateSignificance, Decide),
    CaseStateKind.DECIDED: (),
}


@dataclass(frozen=True)
class OversightCase:
    """A review case. Transcript, draft note, and message B are fixed at
    creation; all mutation flows through `transition`."""

    case_id: str
    transcript: Transcript
    draft_note: SoapNote
    working_note: SoapNote
    message_b_text: str = DEFAULT_MESSAGE_B_TEXT
    state: CaseState = field(default_factory=lambda: CaseState(CaseStateKind.CREATED))
    edits: tuple[EditRecord, ...] = ()
    decision: Decision | None = None
    significance_ratings: Mapping[str, SignificanceLikert] = field(default_factory=dict)

    def __post_init__(self):
        if not self.case_id:
            raise ValueError("case_id must be non-empty")
        decided = self.state.kind is CaseStateKind.DECIDED
        if decided != (self.decision is not None):
            raise ValueError("decision is set iff state is decided")

    @property
    def outbound_message(self) -> str | None:
        """Text released to the patient once decided; None before that."""
        if self.decision is None:
            return None
        if self.decision.kind is DecisionKind.REQUEST_FOLLOW_UP_B:
            return self.message_b_text
        return self.working_note.patient_message

    def has_effective_edits(self) -> bool:
        return self.working_note != self.draft_note

    def to_dict(self) -> dict[str, Any]:
        return {
            "case_id": self.case_id,
            "transcript": self.transcript.to_dict(),
            "draft_note": self.draft_note.to_dict(),
            "working_note": self.working_note.to_dict(),
            "message_b_text": self.message_b_text,
            "state": self.state.to_dict(),
            "edits": [e.to_dict() for e in self.edits],
            "decision": self.decision.to_dict() if self.decision else None,
            "significance_ratings": {
                section: rating.value for section, rating in sorted(self.significance_ratings.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OversightCase":
        return cls(
            case_id=data["case_id"],
            transcript=Transcript.from_dict(data["transcript"]),
            draft_note=SoapNote.from_dict(data["draft_note"]),
            working_note=SoapNote.from_dict(data["working_note"]),
            message_b_text=data["message_b_text"],
            state=CaseState.from_dict(data["state"]),
            edits=tuple(EditRecord.from_dict(e) for e in data.get("edits", [])),
            decision=Decision.from_dict(data["decision"]) if data.get("decision") else None,
            significance_ratings={
                section: SignificanceLikert(value)
                for section, value in data.get("significance_ratings", {}).items()
            },
        )

    def serialize(self) -> str:
        return canonical_dumps(self.to_dict())

    @classmethod
    def deserialize(cls, text: str) -> "OversightCase":
        return cls.from_dict(canonical_loads(text))


def new_drafted_case(
    case_id: str,
    transcript: Transcript,
    note: SoapNote,
    *,
    message_b_text: str = DEFAULT_MESSAGE_B_TEXT,
) -> OversightCase:
    """Assemble a case at the note-drafted stage, the usual ingest point."""
    return OversightCase(
        case_id=case_id,
        transcript=transcript,
        draft_note=note,
        working_note=note,
        message_b_text=message_b_text,
        state=CaseState(CaseStateKind.NOTE_DRAFTED),
    )


def _event_name(event: CaseEvent) -> str:
    return type(event).__name__


def transition(case: OversightCase, event: CaseEvent) -> OversightCase:
    """Apply *event* to *case*, returning the updated case.

    Raises TransitionError for any edge not in the lifecycle graph; content
    checks inside legal edges raise their own errors (StaleEdit,
    ImmutableSection) without mutating the case.
    """
    kind = case.state.kind
    if not isinstance(event, LIFECYCLE_EDGES[kind]):
        raise TransitionError(kind.value, _event_name(event))

    if isinstance(event, StartIntake):
        return replace(case, state=CaseState(CaseStateKind.INTAKE_IN_PROGRESS))
    if isinstance(event, CompleteIntake):
        return replace(case, state=CaseState(CaseStateKind.INTAKE_COMPLETE))
    if isinstance(event, DraftNote):
        return replace(case, state=CaseState(CaseStateKind.NOTE_DRAFTED))
    if isinstance(event, Enqueue):
        return replace(case, state=CaseState(CaseStateKind.AWAITING_OVERSIGHT))
    if isinstance(event, Claim):
        if kind is CaseStateKind.UNDER_REVIEW:
            # A held case can only be re-claimed once its lease has lapsed.
            assert case.state.lease_expiry is not None
            if event.at < case.state.lease_expiry:
                raise TransitionError(kind.value, _event_name(event))
        return replace(
            case,
            state=CaseState(
                CaseStateKind.UNDER_REVIEW,
                reviewer_id=event.reviewer_id,
                lease_expiry=event.lease_expiry,
            ),
        )
    if isinstance(event, ExpireLease):
        assert case.state.lease_expiry is not None
        if event.at < case.state.lease_expiry:
            raise TransitionError(kind.value, _event_name(event))
        return replace(case, state=CaseState(CaseStateKind.AWAITING_OVERSIGHT))
    if isinstance(event, Edit):
        record = event.record
        current = section_text(case.working_note, record.section)
        if record.before != current:
            raise StaleEdit(
                f"section {record.section.value} changed since the edit was prepared"
            )
        updated = with_section_text(case.working_note, record.section, record.after)
        return replace(case, working_note=updated, edits=case.edits + (record,))
    if isinstance(event, RateSignificance):
        ratings = dict(case.significance_ratings)
        ratings[event.section.value] = event.rating
        return replace(case, significance_ratings=ratings)
    if isinstance(event, Decide):
        return replace(case, state=CaseState(CaseStateKind.DECIDED), decision=event.decision)
    raise TransitionError(kind.value, _event_name(event))  # pragma: no cover


def check_immutable_target(section_name: str) -> None:
    """Reject edit targets that are read-only by construction."""
    if section_name in IMMUTABLE_SECTION_NAMES:
        raise ImmutableSection(f"section {section_name!r} is read-only")
