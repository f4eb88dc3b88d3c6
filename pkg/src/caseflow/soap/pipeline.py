"""Sequential note drafting: subjective+objective, then assessment+plan
conditioned on them, then the patient-facing message conditioned on everything.
Exactly three model calls per note; structure is enforced by contracts and
unknown content is filled with the "N/A" sentinel."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from caseflow.backend.base import Backend, CompletionRequest, RequestKey
from caseflow.backend.contracts import (
    ContractViolation,
    ListField,
    RecordContract,
    RecordField,
    RecordListField,
    IntField,
    StringField,
)
from caseflow.core.note import (
    Assessment,
    HPI_SLOTS,
    Objective,
    Plan,
    SoapNote,
    Subjective,
    note_word_counts,
    validate_note,
)
from caseflow.core.types import Transcript
from caseflow.errors import CaseflowError, ContractError, EmptyMessage
from caseflow.guardrail.classifier import AdviceVerdict
from caseflow.guardrail.screening import AdviceClassifier


class EmptyTranscriptBehavior(Enum):
    ALL_NA = "all_na"
    ERROR = "error"


@dataclass(frozen=True)
class PipelineConfig:
    empty_transcript_behavior: EmptyTranscriptBehavior = EmptyTranscriptBehavior.ALL_NA
    provenance_annotations: bool = False
    max_attempts: int = 3


class InvalidNote(CaseflowError):
    def __init__(self, violations):
        super().__init__("assembled note failed schema validation: "
                         + "; ".join(str(v) for v in violations))
        self.violations = tuple(violations)


_SUBJECTIVE_FIELDS = (
    StringField("chief_complaint"),
    RecordField("hpi", tuple(StringField(slot) for slot in HPI_SLOTS)),
    StringField("past_medical_history"),
    StringField("surgical_history"),
    StringField("drug_history"),
    StringField("allergy_history"),
    StringField("social_history"),
)

_OBJECTIVE_FIELDS = (
    ListField("vital_signs", allow_na=True),
    ListField("physical_examination", allow_na=True),
    ListField("lab_test", allow_na=True),
    ListField("imaging_test_results", allow_na=True),
)

SUBJECTIVE_OBJECTIVE_CONTRACT = RecordContract(
    fields=(
        RecordField("subjective", _SUBJECTIVE_FIELDS),
        RecordField("objective", _OBJECTIVE_FIELDS),
    ),
    description="subjective and objective sections",
)


class AssessmentPlanContract(RecordContract):
    """Step-two contract; also enforces justification/differential alignment."""

    def __init__(self):
        super().__init__(
            fields=(
                RecordField(
                    "assessment",
                    (
                        StringField("analysis"),
                        RecordListField(
                            "differential",
                            (StringField("name"), IntField("rank", 1, 99)),
                            min_items=1,
                        ),
                        ListField("justifications"),
                    ),
                ),
                RecordField(
                    "plan",
                    (
                        ListField("investigations"),
                        ListField("treatments"),
                        ListField("referrals"),
                        ListField("follow_ups"),
                        ListField("escalations"),
                    ),
                ),
            ),
            description="assessment and plan sections",
        )

    def validate_text(self, text: str):
        value, violations = super().validate_text(text)
        if not violations and isinstance(value, dict):
            assessment = value.get("assessment", {})
            differential = assessment.get("differential", [])
            justifications = assessment.get("justifications", [])
            if len(justifications) != len(differential):
                violations = [
                    ContractViolation(
                        "assessment.justifications",
                        f"must align 1:1 with differential "
                        f"({len(justifications)} != {len(differential)})",
                    )
                ]
        return value, violations


ASSESSMENT_PLAN_CONTRACT = AssessmentPlanContract()

_STEP1_PROMPT = (
    "From the consultation transcript, produce the Subjective and Objective "
    "sections of a clinical note as JSON: {\"subjective\": {\"chief_complaint\", "
    "\"hpi\": {" + ", ".join(f'"{s}"' for s in HPI_SLOTS) + "}, "
    "\"past_medical_history\", \"surgical_history\", \"drug_history\", "
    "\"allergy_history\", \"social_history\"}, \"objective\": {\"vital_signs\", "
    "\"physical_examination\", \"lab_test\", \"imaging_test_results\"}}. "
    "Objective fields are lists of patient-reported measurable findings. Every "
    "field must be present; write \"N/A\" wherever the transcript holds no "
    "information. Ground every statement in the transcript. Output JSON only."
)

_STEP1_PROVENANCE_SUFFIX = (
    " Append the supporting transcript turn index to each objective entry, "
    "e.g. \"temperature 38.2 C [turn 4]\"."
)

_STEP2_PROMPT = (
    "Using the transcript and the structured Subjective and Objective sections "
    "below, produce the Assessment and Plan as JSON: {\"assessment\": "
    "{\"analysis\": step-by-step reasoning, \"differential\": [{\"name\", "
    "\"rank\"}] ranked from most probable, \"justifications\": one entry per "
    "candidate}, \"plan\": {\"investigations\", \"treatments\", \"referrals\", "
    "\"follow_ups\", \"escalations\"} as lists of concrete next steps}. "
    "Derive the reasoning from the organized sections rather than re-reading "
    "the raw transcript in isolation. Output JSON only."
)

_STEP3_PROMPT = (
    "Write the message that will be sent to the patient once the overseeing "
    "physician signs off. Use clear, empathetic, jargon-free language: greet "
    "the patient, summarize the consultation briefly, explain the likely "
    "diagnosis and the reasoning in simple terms, and lay out the recommended "
    "next steps. Output the message text only."
)


GREETING_WORDS = ("hello", "hi ", "dear", "good morning", "good afternoon", "thank you")
SUMMARY_MARKERS = ("you described", "you told", "you reported", "we discussed",
                   "summary of", "you came in")
DIAGNOSIS_MARKERS = ("likely", "diagnosis", "explanation is", "fits", "reflects",
                     "consistent with", "points to")
NEXT_STEP_MARKERS = ("next steps", "we recommend", "we suggest", "follow up",
                     "follow-up", "review in", "arrange", "please seek")


def patient_message_shape(message: str) -> dict[str, bool]:
    """Report-only shape check: greeting, consultation summary, diagnosis, and
    next steps. Advisory lexical heuristics; never enforced on generation."""
    lowered = message.lower()
    return {
        "greeting": any(marker in lowered for marker in GREETING_WORDS),
        "summary": any(marker in lowered for marker in SUMMARY_MARKERS),
        "diagnosis": any(marker in lowered for marker in DIAGNOSIS_MARKERS),
        "next_steps": any(marker in lowered for marker in NEXT_STEP_MARKERS),
    }


@dataclass(frozen=True)
class NoteBundle:
    """A drafted note plus run metadata kept alongside it."""

    note: SoapNote
    message_verdict: AdviceVerdict | None
    word_counts: dict[str, int]
    message_shape: dict[str, bool] = field(default_factory=dict)


class SoapPipeline:
    def __init__(
        self,
        backend: Backend,
        message_classifier: AdviceClassifier | None = None,
        config: PipelineConfig | None = None,
    ):
        self.backend = backend
        self.message_classifier = message_classifier
        self.config = config or PipelineConfig()

    def generate_subjective_objective(self, transcript: Transcript) -> tuple[Subjective, Objective]:
        """Step one. The caller supplies a concluded transcript; an empty one
        yields an all-"N/A" note or an error, per configuration."""
        if len(transcript) == 0:
            if self.config.empty_transcript_behavior is EmptyTranscriptBehavior.ERROR:
                raise ContractError("cannot draft a note from an empty transcript")
            return Subjective.all_na(), Objective.all_na()
        prompt = _STEP1_PROMPT
        if self.config.provenance_annotations:
            prompt += _STEP1_PROVENANCE_SUFFIX
        result = self.backend.complete(
            CompletionRequest(
                system_prompt=prompt,
                messages=(("user", "Transcript:\n" + transcript.render_text()),),
                key=RequestKey("soap", "subjective_objective", 0),
                output_contract=SUBJECTIVE_OBJECTIVE_CONTRACT,
                max_attempts=self.config.max_attempts,
            )
        )
        return (
            Subjective.from_dict(result.value["subjective"]),
            Objective.from_dict(result.value["objective"]),
        )

    def generate_assessment_plan(
        self, transcript: Transcript, subjective: Subjective, objective: Objective
    ) -> tuple[Assessment, Plan]:
        """Step two, conditioned on step one's serialized output."""
        from caseflow.canonical import canonical_dumps

        conditioning = (
            "Subjective:\n" + canonical_dumps(subjective.to_dict()).rstrip("\n")
            + "\nObjective:\n" + canonical_dumps(objective.to_dict()).rstrip("\n")
        )
        result = self.backend.complete(
            CompletionRequest(
                system_prompt=_STEP2_PROMPT,
                messages=(
                    ("user", "Transcript:\n" + transcript.render_text()),
                    ("user", conditioning),
                ),
                key=RequestKey("soap", "assessment_plan", 1),
                output_contract=ASSESSMENT_PLAN_CONTRACT,
                max_attempts=self.config.max_attempts,
            )
        )
        return (
            Assessment.from_dict(result.value["assessment"]),
            Plan.from_dict(result.value["plan"]),
        )

    def generate_patient_message(self, transcript: Transcript, note: SoapNote) -> str:
        """Step three: free-form message, deliberately unconstrained."""
        violations = validate_note(note)
        # The message is drafted against a note that is complete except for
        # the message slot itself.
        blocking = [v for v in violations if v.path != "patient_message"]
        if blocking:
            raise InvalidNote(blocking)
        result = self.backend.complete(
            CompletionRequest(
                system_prompt=_STEP3_PROMPT,
                messages=(
                    ("user", "Transcript:\n" + transcript.render_text()),
                    ("user", "Drafted note:\n" + note.serialize().rstrip("\n")),
                ),
                key=RequestKey("soap", "patient_message", 2),
                max_attempts=1,
            )
        )
        if not result.text.strip():
            raise EmptyMessage("patient message came back empty")
        return result.text

    def assemble_note(
        self,
        subjective: Subjective,
        objective: Objective,
        assessment: Assessment,
        plan: Plan,
        patient_message: str,
    ) -> SoapNote:
        """Assemble and validate; the banner chief complaint is copied from the
        subjective section."""
        note = SoapNote(
            chief_complaint=subjective.chief_complaint,
            subjective=subjective,
            objective=objective,
            assessment=assessment,
            plan=plan,
            patient_message=patient_message,
        )
        violations = validate_note(note)
        if violations:
            raise InvalidNote(violations)
        return note

    def run(self, transcript: Transcript) -> NoteBundle:
        """Full three-step drafting; the message is screened in report-only
        mode since it is the channel authorized to carry the diagnosis."""
        subjective, objective = self.generate_subjective_objective(transcript)
        assessment, plan = self.generate_assessment_plan(transcript, subjective, objective)
        partial = SoapNote(
            chief_complaint=subjective.chief_complaint,
            subjective=subjective,
            objective=objective,
            assessment=assessment,
            plan=plan,
            patient_message=None,
        )
        message = self.generate_patient_message(transcript, partial)
        note = self.assemble_note(subjective, objective, assessment, plan, message)
        verdict = None
        if self.message_classifier is not None:
            verdict = self.message_classifier.classify(
                message, transcript, key=RequestKey("guardrail", "patient_message", 0)
            )
        return NoteBundle(
            note=note,
            message_verdict=verdict,
            word_counts=note_word_counts(note),
            message_shape=patient_message_shape(message),
        )
