"""Structured clinical note: schema, total validation, and section text access.

A note object tolerates missing content (``None``) so that `validate_note`
can report absences instead of refusing to construct; the string sentinel
``"N/A"`` marks content that was looked for and not found, which is valid.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any

from caseflow.canonical import canonical_dumps, canonical_loads
from caseflow.core.types import DiagnosisEntry

NA = "N/A"

HPI_SLOTS = (
    "onset",
    "location",
    "duration",
    "character",
    "alleviating_aggravating",
    "radiation",
    "temporality",
    "severity",
)

OBJECTIVE_FIELDS = ("vital_signs", "physical_examination", "lab_test", "imaging_test_results")
PLAN_FIELDS = ("investigations", "treatments", "referrals", "follow_ups", "escalations")


@dataclass(frozen=True)
class SchemaViolation:
    """One broken rule, located by a dotted path into the note."""

    path: str
    rule: str

    def __str__(self) -> str:
        return f"{self.path}: {self.rule}"


@dataclass(frozen=True)
class HistoryOfPresentIllness:
    """The eight mandated HPI slots; each a string or the "N/A" sentinel."""

    onset: str | None = None
    location: str | None = None
    duration: str | None = None
    character: str | None = None
    alleviating_aggravating: str | None = None
    radiation: str | None = None
    temporality: str | None = None
    severity: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {slot: getattr(self, slot) for slot in HPI_SLOTS}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "HistoryOfPresentIllness":
        return cls(**{slot: data.get(slot) for slot in HPI_SLOTS})

    @classmethod
    def all_na(cls) -> "HistoryOfPresentIllness":
        return cls(**{slot: NA for slot in HPI_SLOTS})


@dataclass(frozen=True)
class Subjective:
    chief_complaint: str | None = None
    hpi: HistoryOfPresentIllness | None = None
    past_medical_history: str | None = None
    surgical_history: str | None = None
    drug_history: str | None = None
    allergy_history: str | None = None
    social_history: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "chief_complaint": self.chief_complaint,
            "hpi": self.hpi.to_dict() if self.hpi is not None else None,
            "past_medical_history": self.past_medical_history,
            "surgical_history": self.surgical_history,
            "drug_history": self.drug_history,
            "allergy_history": self.allergy_history,
            "social_history": self.social_history,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Subjective":
        hpi = data.get("hpi")
        return cls(
            chief_complaint=data.get("chief_complaint"),
            hpi=HistoryOfPresentIllness.from_dict(hpi) if isinstance(hpi, dict) else None,
            past_medical_history=data.get("past_medical_history"),
            surgical_history=data.get("surgical_history"),
            drug_history=data.get("drug_history"),
            allergy_history=data.get("allergy_history"),
            social_history=data.get("social_history"),
        )

    @classmethod
    def all_na(cls) -> "Subjective":
        return cls(
            chief_complaint=NA,
            hpi=HistoryOfPresentIllness.all_na(),
            past_medical_history=NA,
            surgical_history=NA,
            drug_history=NA,
            allergy_history=NA,
            social_history=NA,
        )


@dataclass(frozen=True)
class Objective:
    """Self-reported measurable findings. Each field is a list of entries,
    possibly empty, or the "N/A" sentinel (empty and "N/A" render distinctly)."""

    vital_signs: tuple[str, ...] | str | None = None
    physical_examination: tuple[str, ...] | str | None = None
    lab_test: tuple[str, ...] | str | None = None
    imaging_test_results: tuple[str, ...] | str | None = None

    @staticmethod
    def _dump(value: tuple[str, ...] | str | None) -> Any:
        return list(value) if isinstance(value, tuple) else value

    @staticmethod
    def _load(value: Any) -> tuple[str, ...] | str | None:
        return tuple(value) if isinstance(value, list) else value

    def to_dict(self) -> dict[str, Any]:
        return {name: self._dump(getattr(self, name)) for name in OBJECTIVE_FIELDS}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Objective":
        return cls(**{name: cls._load(data.get(name)) for name in OBJECTIVE_FIELDS})

    @classmethod
    def all_na(cls) -> "Objective":
        return cls(**{name: NA for name in OBJECTIVE_FIELDS})


@dataclass(frozen=True)
class Assessment:
    analysis: str | None = None
    differential: tuple[DiagnosisEntry, ...] = ()
    justifications: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "analysis": self.analysis,
            "differential": [d.to_dict() for d in self.differential],
            "justifications": list(self.justifications),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Assessment":
        return cls(
            analysis=data.get("analysis"),
            differential=tuple(DiagnosisEntry.from_dict(d) for d in data.get("differential", [])),
            justifications=tuple(data.get("justifications", [])),
        )


@dataclass(frozen=True)
class Plan:
    investigations: tuple[str, ...] = ()
    treatments: tuple[str, ...] = ()
    referrals: tuple[str, ...] = ()
    follow_ups: tuple[str, ...] = ()
    escalations: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {name: list(getattr(self, name)) for name in PLAN_FIELDS}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Plan":
        return cls(**{name: tuple(data.get(name, [])) for name in PLAN_FIELDS})


@dataclass(frozen=True)
class SoapNote:
    chief_complaint: str | None = None
    subjective: Subjective | None = None
    objective: Objective | None = None
    assessment: Assessment | None = None
    plan: Plan | None = None
    patient_message: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "chief_complaint": self.chief_complaint,
            "subjective": self.subjective.to_dict() if self.subjective else None,
            "objective": self.objective.to_dict() if self.objective else None,
            "assessment": self.assessment.to_dict() if self.assessment else None,
            "plan": self.plan.to_dict() if self.plan else None,
            "patient_message": self.patient_message,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SoapNote":
        return cls(
            chief_complaint=data.get("chief_complaint"),
            subjective=(
                Subjective.from_dict(data["subjective"])
                if isinstance(data.get("subjective"), dict)
                else None
            ),
            objective=(
                Objective.from_dict(data["objective"])
                if isinstance(data.get("objective"), dict)
                else None
            ),
            assessment=(
                Assessment.from_dict(data["assessment"])
                if isinstance(data.get("assessment"), dict)
                else None
            ),
            plan=Plan.from_dict(data["plan"]) if isinstance(data.get("plan"), dict) else None,
            patient_message=data.get("patient_message"),
        )

    def serialize(self) -> str:
        return canonical_dumps(self.to_dict())

    @classmethod
    def deserialize(cls, text: str) -> "SoapNote":
        return cls.from_dict(canonical_loads(text))


class NoteSection(Enum):
    """Editable note sections, as exposed to the review surface."""

    CHIEF_COMPLAINT = "chief_complaint"
    SUBJECTIVE = "subjective"
    OBJECTIVE = "objective"
    ASSESSMENT = "assessment"
    PLAN = "plan"
    PATIENT_MESSAGE = "patient_message"


def _require_text(value: Any, path: str, out: list[SchemaViolation]) -> None:
    if value is None:
        out.append(SchemaViolation(path, "absent"))
    elif not isinstance(value, str):
        out.append(SchemaViolation(path, "must be a string"))
    elif value == "":
        out.append(SchemaViolation(path, 'empty; use "N/A" when unknown'))


def _require_entries(value: Any, path: str, out: list[SchemaViolation]) -> None:
    if value is None:
        out.append(SchemaViolation(path, "absent"))
    elif isinstance(value, str):
        if value != NA:
            out.append(SchemaViolation(path, 'string value must be the "N/A" sentinel'))
    elif isinstance(value, tuple):
        for i, item in enumerate(value):
            if not isinstance(item, str) or not item:
                out.append(SchemaViolation(f"{path}[{i}]", "entries must be non-empty strings"))
    else:
        out.append(SchemaViolation(path, 'must be a list of strings or "N/A"'))


def validate_note(note: SoapNote) -> list[SchemaViolation]:
    """Total validator: empty result iff every schema invariant holds."""
    out: list[SchemaViolation] = []

    _require_text(note.chief_complaint, "chief_complaint", out)

    subj = note.subjective
    if subj is None:
        out.append(SchemaViolation("subjective", "absent"))
    else:
        _require_text(subj.chief_complaint, "subjective.chief_complaint", out)
        if subj.hpi is None:
            out.append(SchemaViolation("subjective.hpi", "absent"))
        else:
            for slot in HPI_SLOTS:
                _require_text(getattr(subj.hpi, slot), f"subjective.hpi.{slot}", out)
        for name in (
            "past_medical_history",
            "surgical_history",
            "drug_history",
            "allergy_history",
            "social_history",
        ):
            _require_text(getattr(subj, name), f"subjective.{name}", out)

    obj = note.objective
    if obj is None:
        out.append(SchemaViolation("objective", "absent"))
    else:
        for name in OBJECTIVE_FIELDS:
            _require_entries(getattr(obj, name), f"objective.{name}", out)

    assess = note.assessment
    if assess is None:
        out.append(SchemaViolation("assessment", "absent"))
    else:
        _require_text(assess.analysis, "assessment.analysis", out)
        if not assess.differential:
            out.append(SchemaViolation("assessment.differential", "must be non-empty"))
        else:
            ranks = [d.rank for d in assess.differential]
            if sorted(ranks) != list(range(1, len(ranks) + 1)):
                out.append(
                    SchemaViolation(
                        "assessment.differential", "ranks must be unique and contiguous from 1"
                    )
                )
            elif ranks != sorted(ranks):
                out.append(
                    SchemaViolation("assessment.differential", "entries must be listed in rank order")
                )
        if len(assess.justifications) != len(assess.differential):
            out.append(
                SchemaViolation(
                    "assessment.justifications",
                    "must align 1:1 with differential "
                    f"({len(assess.justifications)} != {len(assess.differential)})",
                )
            )

    plan = note.plan
    if plan is None:
        out.append(SchemaViolation("plan", "absent"))
    else:
        for name in PLAN_FIELDS:
            value = getattr(plan, name)
            if not isinstance(value, tuple):
                out.append(SchemaViolation(f"plan.{name}", "must be a list of strings"))
            else:
                for i, item in enumerate(value):
                    if not isinstance(item, str) or not item:
                        out.append(
                            SchemaViolation(f"plan.{name}[{i}]", "entries must be non-empty strings")
                        )

    _require_text(note.patient_message, "patient_message", out)
    return out


def section_text(note: SoapNote, section: NoteSection) -> str:
    """Canonical editable text of one section.

    Free-text sections are their raw string; structured sections edit as
    canonical JSON, which parses back losslessly via `with_section_text`.
    """
    if section is NoteSection.CHIEF_COMPLAINT:
        return note.chief_complaint or ""
    if section is NoteSection.PATIENT_MESSAGE:
        return note.patient_message or ""
    part = getattr(note, section.value)
    return canonical_dumps(part.to_dict() if part is not None else None)


def with_section_text(note: SoapNote, section: NoteSection, text: str) -> SoapNote:
    """Return a copy of *note* with one section replaced by parsed *text*."""
    if section is NoteSection.CHIEF_COMPLAINT:
        return replace(note, chief_complaint=text)
    if section is NoteSection.PATIENT_MESSAGE:
        return replace(note, patient_message=text)
    data = canonical_loads(text)
    part_cls = {
        NoteSection.SUBJECTIVE: Subjective,
        NoteSection.OBJECTIVE: Objective,
        NoteSection.ASSESSMENT: Assessment,
        NoteSection.PLAN: Plan,
    }[section]
    part = part_cls.from_dict(data) if isinstance(data, dict) else None
    return replace(note, **{section.value: part})


def note_word_counts(note: SoapNote) -> dict[str, int]:
    """Per-section word counts, reported for analysis and never enforced."""

    def words(value: Any) -> int:
        if isinstance(value, str):
            return len(value.split())
        if isinstance(value, (list, tuple)):
            return sum(words(v) for v in value)
        if isinstance(value, dict):
            return sum(words(v) for v in value.values())
        return 0

    counts: dict[str, int] = {}
    for section in NoteSection:
        part = getattr(note, section.value)
        counts[section.value] = words(part.to_dict() if hasattr(part, "to_dict") else part)
    return counts
