"""Rolling patient summary and candidate differential used to steer questioning."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from caseflow.backend.contracts import (
    ChoiceField,
    IntField,
    ListField,
    RecordContract,
    RecordListField,
    StringField,
)
from caseflow.canonical import canonical_dumps
from caseflow.core.types import DiagnosisEntry


@dataclass(frozen=True)
class PatientSummary:
    """Facts gathered so far plus open gaps; regenerated as questioning runs."""

    chief_complaint: str = ""
    hpi_facts: tuple[str, ...] = ()
    pmh_facts: tuple[str, ...] = ()
    meds_allergies: tuple[str, ...] = ()
    family_social: tuple[str, ...] = ()
    open_gaps: tuple[str, ...] = ()

    def is_empty(self) -> bool:
        return not (
            self.chief_complaint
            or self.hpi_facts
            or self.pmh_facts
            or self.meds_allergies
            or self.family_social
            or self.open_gaps
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "chief_complaint": self.chief_complaint,
            "hpi_facts": list(self.hpi_facts),
            "pmh_facts": list(self.pmh_facts),
            "meds_allergies": list(self.meds_allergies),
            "family_social": list(self.family_social),
            "open_gaps": list(self.open_gaps),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PatientSummary":
        return cls(
            chief_complaint=data.get("chief_complaint", ""),
            hpi_facts=tuple(data.get("hpi_facts", [])),
            pmh_facts=tuple(data.get("pmh_facts", [])),
            meds_allergies=tuple(data.get("meds_allergies", [])),
            family_social=tuple(data.get("family_social", [])),
            open_gaps=tuple(data.get("open_gaps", [])),
        )

    def serialize(self) -> str:
        return "" if self.is_empty() else canonical_dumps(self.to_dict()).rstrip("\n")


SUMMARY_CONTRACT = RecordContract(
    fields=(
        StringField("chief_complaint", allow_empty=True),
        ListField("hpi_facts"),
        ListField("pmh_facts"),
        ListField("meds_allergies"),
        ListField("family_social"),
        ListField("open_gaps"),
    ),
    description="patient summary",
)


class Confidence(Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


_CONFIDENCE_ORDER = {Confidence.LOW: 0, Confidence.MEDIUM: 1, Confidence.HIGH: 2}


@dataclass(frozen=True)
class CandidateDdx:
    """Working differential with per-candidate confidence."""

    entries: tuple[DiagnosisEntry, ...]
    confidences: tuple[Confidence, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.confidences):
            raise ValueError("one confidence per candidate")
        ranks = [e.rank for e in self.entries]
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise ValueError("candidate ranks must be unique and contiguous from 1")

    def refined(self) -> bool:
        """True when confidence is high enough to stop questioning: every
        candidate at medium or better and the top candidate at high."""
        if not self.entries:
            return False
        if any(_CONFIDENCE_ORDER[c] < _CONFIDENCE_ORDER[Confidence.MEDIUM] for c in self.confidences):
            return False
        top = min(range(len(self.entries)), key=lambda i: self.entries[i].rank)
        return self.confidences[top] is Confidence.HIGH

    def to_dict(self) -> dict[str, Any]:
        return {
            "candidates": [
                {"name": e.name, "rank": e.rank, "confidence": c.value}
                for e, c in zip(self.entries, self.confidences)
            ]
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CandidateDdx":
        items = data.get("candidates", [])
        return cls(
            entries=tuple(DiagnosisEntry(name=i["name"], rank=i["rank"]) for i in items),
            confidences=tuple(Confidence(i["confidence"]) for i in items),
        )

    def serialize(self) -> str:
        return canonical_dumps(self.to_dict()).rstrip("\n")


DDX_CONTRACT = RecordContract(
    fields=(
        RecordListField(
            "candidates",
            fields=(
                StringField("name"),
                IntField("rank", 1, 99),
                ChoiceField("confidence", ("low", "medium", "high")),
            ),
            min_items=1,
        ),
    ),
    description="candidate differential",
)
