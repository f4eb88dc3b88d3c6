from __future__ import annotations

from datetime import datetime, timedelta, timezone

import pytest

from caseflow.core.case import CaseState, CaseStateKind, OversightCase
from caseflow.core.note import (
    Assessment,
    HistoryOfPresentIllness,
    Objective,
    Plan,
    SoapNote,
    Subjective,
)
from caseflow.core.types import (
    AdviceLikert,
    DiagnosisEntry,
    Phase,
    ScreeningRecord,
    Speaker,
    Transcript,
)

T0 = datetime(2030, 1, 1, tzinfo=timezone.utc)


def clean_screening() -> ScreeningRecord:
    return ScreeningRecord(verdict=AdviceLikert(1), revisions_used=0)


def make_transcript(pairs: int = 2) -> Transcript:
    t = Transcript()
    for i in range(pairs):
        t = t.append(Speaker.PATIENT, f"patient line {i}")
        t = t.append(
            Speaker.CLINICIAN,
            f"clinician question {i}?",
            phase=Phase.INTAKE,
            screening=clean_screening(),
        )
    return t


def make_note(
    differential: tuple[tuple[str, int], ...] = (("viral pharyngitis", 1), ("strep throat", 2)),
    investigations: tuple[str, ...] = ("throat swab",),
) -> SoapNote:
    entries = tuple(DiagnosisEntry(name=n, rank=r) for n, r in differential)
    return SoapNote(
        chief_complaint="sore throat for three days",
        subjective=Subjective(
            chief_complaint="sore throat for three days",
            hpi=HistoryOfPresentIllness(
                onset="three days ago",
                location="throat",
                duration="constant",
                character="scratchy pain",
                alleviating_aggravating="worse when swallowing",
                radiation="N/A",
                temporality="steady",
                severity="5/10",
            ),
            past_medical_history="N/A",
            surgical_history="N/A",
            drug_history="no regular medication",
            allergy_history="no known allergies",
            social_history="non-smoker",
        ),
        objective=Objective(
            vital_signs=("temperature 37.9 C",),
            physical_examination="N/A",
            lab_test=(),
            imaging_test_results="N/A",
        ),
        assessment=Assessment(
            analysis="short febrile sore throat without red flags",
            differential=entries,
            justifications=tuple(f"justification for {n}" for n, _ in differential),
        ),
        plan=Plan(
            investigations=investigations,
            treatments=("rest and fluids",),
            referrals=(),
            follow_ups=("review in 48 hours",),
            escalations=(),
        ),
        patient_message="Thank you for the consultation. A physician will follow up shortly.",
    )


def make_case(
    case_id: str = "case-1",
    state_kind: CaseStateKind = CaseStateKind.NOTE_DRAFTED,
    reviewer: str | None = None,
    lease_expiry: datetime | None = None,
) -> OversightCase:
    note = make_note()
    if state_kind is CaseStateKind.UNDER_REVIEW:
        state = CaseState(
            CaseStateKind.UNDER_REVIEW,
            reviewer_id=reviewer or "rev-1",
            lease_expiry=lease_expiry or (T0 + timedelta(hours=1)),
        )
    else:
        state = CaseState(state_kind)
    return OversightCase(
        case_id=case_id,
        transcript=make_transcript(),
        draft_note=note,
        working_note=note,
        state=state,
    )


@pytest.fixture
def valid_note() -> SoapNote:
    return make_note()


@pytest.fixture
def transcript() -> Transcript:
    return make_transcript()
