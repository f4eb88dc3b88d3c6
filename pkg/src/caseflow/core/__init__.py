"""Shared domain types and the case lifecycle; no I/O, no model calls."""

from caseflow.core.case import (
    DEFAULT_MESSAGE_B_TEXT,
    CaseEvent,
    CaseState,
    CaseStateKind,
    Claim,
    CompleteIntake,
    Decide,
    Decision,
    DecisionKind,
    DraftNote,
    Edit,
    EditRecord,
    Enqueue,
    ExpireLease,
    LIFECYCLE_EDGES,
    OversightCase,
    RateSignificance,
    StartIntake,
    check_immutable_target,
    new_drafted_case,
    transition,
)
from caseflow.core.note import (
    HPI_SLOTS,
    NA,
    OBJECTIVE_FIELDS,
    PLAN_FIELDS,
    Assessment,
    HistoryOfPresentIllness,
    NoteSection,
    Objective,
    Plan,
    SchemaViolation,
    SoapNote,
    Subjective,
    note_word_counts,
    section_text,
    validate_note,
    with_section_text,
)
from caseflow.core.types import (
    AdviceLikert,
    DiagnosisEntry,
    Phase,
    ScreeningRecord,
    SignificanceLikert,
    Speaker,
    Transcript,
    Turn,
)

__all__ = [
    "AdviceLikert",
    "Assessment",
    "CaseEvent",
    "CaseState",
    "CaseStateKind",
    "Claim",
    "CompleteIntake",
    "DEFAULT_MESSAGE_B_TEXT",
    "Decide",
    "Decision",
    "DecisionKind",
    "DiagnosisEntry",
    "DraftNote",
    "Edit",
    "EditRecord",
    "Enqueue",
    "ExpireLease",
    "HPI_SLOTS",
    "HistoryOfPresentIllness",
    "LIFECYCLE_EDGES",
    "NA",
    "NoteSection",
    "OBJECTIVE_FIELDS",
    "Objective",
    "OversightCase",
    "PLAN_FIELDS",
    "Phase",
    "Plan",
    "RateSignificance",
    "SchemaViolation",
    "ScreeningRecord",
    "SignificanceLikert",
    "SoapNote",
    "Speaker",
    "StartIntake",
    "Subjective",
    "Transcript",
    "Turn",
    "check_immutable_target",
    "new_drafted_case",
    "note_word_counts",
    "section_text",
    "transition",
    "validate_note",
    "with_section_text",
]
