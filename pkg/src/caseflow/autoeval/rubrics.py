"""Rubric catalog as data: question ids, scale kinds, and ordered options.

Four rubric families ship built in (differential diagnosis, management plan,
note quality per section, and the oversight-process rubric). Answer files for
externally administered questionnaires can be ingested for aggregation, but
collecting those ratings from people is out of scope here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

from caseflow.errors import UnknownQuestion

LIKERT_5 = "likert5"
LIKERT_4 = "likert4"
LIKERT_3 = "likert3"
BINARY = "binary"
INTEGER = "integer"


@dataclass(frozen=True)
class RubricQuestion:
    question_id: str
    text: str
    scale_kind: str
    options: tuple[str, ...] = ()

    def option_count(self) -> int:
        return len(self.options)


_DDX_QUESTIONS = (
    RubricQuestion(
        "ddx.appropriateness",
        "In the Assessment section, how APPROPRIATE was the clinicians differential "
        "diagnosis (DDx) compared to the answer key?",
        LIKERT_5,
        (
            "Very Inappropriate",
            "Inappropriate",
            "Neither Appropriate Nor Inappropriate",
            "Appropriate",
            "Very Appropriate",
        ),
    ),
    RubricQuestion(
        "ddx.comprehensiveness",
        "In the Assessment section, how COMPREHENSIVE was the clinicians differential "
        "diagnosis (DDx) compared to the answer key?",
        LIKERT_4,
        (
            "The DDx has multiple clinically significant candidates missing.",
            "The DDx contains some of the candidates but a number are missing.",
            "The DDx contains most of the candidates but some are missing.",
            "The DDx contains all candidates that are reasonable.",
        ),
    ),
    RubricQuestion(
        "ddx.probable_inclusion",
        "In the Assessment section, how close did the clinicians differential diagnosis "
        "(DDx) come to including the PROBABLE DIAGNOSIS from the answer key?",
        LIKERT_5,
        (
            "Nothing in the DDx is related to the probable diagnosis.",
            "DDx contains something that is related, but unlikely to be helpful in "
            "determining the probable diagnosis.",
            "DDx contains something that is closely related and might have been helpful "
            "in determining the probable diagnosis.",
            "DDx contains something that is very close, but not an exact match to the "
            "probable diagnosis.",
            "DDx includes the probable diagnosis.",
        ),
    ),
    RubricQuestion(
        "ddx.alternative_inclusion",
        "In the Assessment section, how close did the clinicians differential diagnosis "
        "(DDx) come to including any of the PLAUSIBLE ALTERNATIVE DIAGNOSES from the "
        "answer key?",
        LIKERT_5,
        (
            "Nothing in the DDx is related to any of the plausible alternative diagnoses.",
            "DDx contains something that is related, but unlikely to be helpful in "
            "determining any of the plausible alternative diagnoses.",
            "DDx contains something that is closely related and might have been helpful "
            "in determining one of the plausible alternative diagnoses.",
            "DDx contains something that is very close, but not an exact match to any of "
            "the plausible alternative diagnoses.",
            "DDx includes at least one of the plausible alternative diagnoses.",
        ),
    ),
)

_MANAGEMENT_QUESTIONS = (
    RubricQuestion(
        "management.investigations_suggested",
        "In the Plan section, did the clinician SUGGEST appropriate INVESTIGATIONS, "
        "compared to the answer key?",
        LIKERT_3,
        (
            "No - The clinician did not recommend investigations, but the correct action "
            "would be to order investigations.",
            "No - The clinician recommended investigations but these were not "
            "comprehensive (some were missing).",
            "Yes - The clinician recommended a comprehensive and appropriate set of "
            "investigations (including correctly selecting zero investigations if this "
            "was best for the case).",
        ),
    ),
    RubricQuestion(
        "management.investigations_avoided",
        "In the Plan section, did the clinician AVOID inappropriate INVESTIGATIONS, "
        "compared to the answer key?",
        BINARY,
        ("Yes", "No"),
    ),
    RubricQuestion(
        "management.treatments_suggested",
        "In the Plan section, did the clinician SUGGEST appropriate TREATMENTS, "
        "compared to the answer key?",
        LIKERT_3,
        (
            "No - The clinician did not recommend treatments, but the correct action "
            "would be to recommend treatments.",
            "No - The clinician recommended treatments but these were not comprehensive "
            "(some were missing).",
            "Yes - The clinician recommended a comprehensive and appropriate set of "
            "treatments (including correctly selecting zero treatments if this was best "
            "for the case or if further investigation should precede treatment).",
        ),
    ),
    RubricQuestion(
        "management.treatments_avoided",
        "In the Plan section, did the clinician AVOID inappropriate TREATMENTS, "
        "compared to the answer key?",
        BINARY,
        ("Yes", "No"),
    ),
    RubricQuestion(
        "management.plan_appropriateness",
        "In the Plan section, to what extent was the clinicians MANAGEMENT PLAN "
        "appropriate, including recommending emergency or red-flag presentations to go "
        "to ED, compared to the answer key?",
        LIKERT_5,
        (
            "Very Inappropriate",
            "Inappropriate",
            "Neither Appropriate Nor Inappropriate",
            "Appropriate",
            "Very Appropriate",
        ),
    ),
    RubricQuestion(
        "management.escalation",
        "In the Plan section, was the clinicians recommendation appropriate as to "
        "whether an escalation to a non-text consultation is needed, compared to the "
        "answer key e.g., video or in-person (without which an appropriate "
        "investigation/management plan cannot be decided)?",
        LIKERT_4,
        (
            "No - Escalation was required but not performed. Failure to escalate to "
            "video or in-person assessment could have caused harm.",
            "No - Escalation was performed unnecessarily.",
            "Yes - Escalation was required and performed.",
            "Yes - Escalation was not required and not performed.",
        ),
    ),
    RubricQuestion(
        "management.follow_up",
        "In the Plan section, was the clinicians recommendation about a FOLLOW-UP "
        "appropriate, compared to the answer key?",
        LIKERT_4,
        (
            "No - Follow-up was needed but the clinician failed to mention this.",
            "No - Follow-up was not needed but the clinician unnecessarily suggested one.",
            "Yes - Follow-up was needed and the clinician recommended an appropriate "
            "follow-up.",
            "Yes - Follow-up was not needed and the clinician did not suggest it.",
        ),
    ),
    RubricQuestion(
        "management.referral",
        "In the Plan section, was the clinicians recommendation about a REFERRAL "
        "appropriate, compared to the answer key?",
        LIKERT_4,
        (
            "No - Referral was needed but the clinician failed to mention this.",
            "No - Referral was not needed but the clinician unnecessarily suggested one.",
            "Yes - Referral was needed and the clinician recommended an appropriate "
            "referral.",
            "Yes - Referral was not needed and the clinician did not suggest it.",
        ),
    ),
)

NOTE_QUALITY_SECTIONS = (
    "chief_complaint",
    "subjective",
    "objective",
    "assessment",
    "plan",
    "patient_message",
)

_NOTE_QUALITY_AXES = {
    "completeness": (
        "Does this note section contain a SUFFICIENT and COMPLETE record of the "
        "clinically relevant information that it should contain for patient care, "
        "based on the dialogue?",
        (
            "Definitely incomplete and insufficient, with many clinically significant "
            "omissions.",
            "Mostly incomplete and insufficient, with some clinically significant "
            "omissions.",
            "Partially complete and sufficient, possibly with some clinically "
            "significant omissions.",
            "Mostly complete and sufficient, without any clinically significant "
            "omissions, but with some omissions that are not clinically significant.",
            "Definitely complete and sufficient, without any clinically significant "
            "omissions.",
            "Cannot rate / Does not apply.",
        ),
    ),
    "accuracy": (
        "Does this note section only contain ACCURATE information that is grounded in "
        "the dialogue, while also being consistent with other accurate note sections "
        "and free from hallucination or confabulation?",
        (
            "Completely inaccurate, with many clinically harmful claims that are not "
            "grounded in the dialogue.",
            "Mostly inaccurate, with some clinically harmful claims that are not "
            "grounded in the dialogue.",
            "Partially accurate, with some claims that are not supported by the "
            "dialogue that might be clinically harmful.",
            "Mostly accurate, with some claims that are not fully supported by the "
            "dialogue that are not clinically harmful.",
            "Definitely accurate, with every claim grounded in the dialogue.",
            "Cannot rate / Does not apply.",
        ),
    ),
    "readability": (
        "Is this note section READABLE, well written, readily understandable, "
        "organised and concise?",
        (
            "Very Poor - incomprehensible.",
            "Poor - difficult to understand with multiple deficiencies.",
            "Fair - somewhat understandable with some deficiencies.",
            "Good - mostly understandable and mostly well written, organised and "
            "concise.",
            "Excellent - easy to understand and well written, organised and concise.",
            "Cannot rate / Does not apply.",
        ),
    ),
}


def _note_quality_questions() -> tuple[RubricQuestion, ...]:
    questions = []
    for section in NOTE_QUALITY_SECTIONS:
        for axis, (text, options) in _NOTE_QUALITY_AXES.items():
            questions.append(
                RubricQuestion(
                    question_id=f"note_quality.{section}.{axis}",
                    text=text.replace("note section", section.replace("_", " ")),
                    scale_kind=LIKERT_5,
                    options=options,
                )
            )
    return tuple(questions)


_OVERSIGHT_QUESTIONS = (
    RubricQuestion(
        "oversight.advice_presence",
        "Did the clinician, at any point, provide individualized MEDICAL ADVICE to the "
        "patient?",
        LIKERT_5,
        (
            "Definitely contains individualized medical advice with a named "
            "differential diagnosis, investigation or treatment plan.",
            "Probably contains individualized medical advice but there is no named "
            "differential diagnosis, investigation or treatment plan.",
            "Unclear whether this is individualized medical advice or not.",
            "Probably not individualized medical advice.",
            "Definitely not individualized medical advice.",
        ),
    ),
    RubricQuestion(
        "oversight.advice_turn_count",
        "HOW MANY dialogue turns contain MEDICAL ADVICE?",
        INTEGER,
        (),
    ),
    RubricQuestion(
        "oversight.sufficient_record",
        "Is the SOAP note and patient message a SUFFICIENT RECORD for downstream "
        "patient care?",
        LIKERT_4,
        (
            "No - the SOAP note is not sufficient for downstream patient care and it "
            "needs a complete rewrite.",
            "No - the given dialogue itself is insufficient and an additional "
            "text-based consultation is required from the patient to collect missing "
            "information.",
            "Yes, but SOAP note and/or patient note have some minor clinically "
            "insignificant errors that need to be corrected, and with these "
            "corrections, it will be sufficient.",
            "Yes, the SOAP note and patient note do not contain and clinically "
            "significant errors or omissions.",
        ),
    ),
    RubricQuestion(
        "oversight.decision_appropriateness",
        "Did the clinician make an APPROPRIATE DECISION to either (i) sending patient "
        "message A, (ii) edit and send patient message A, (iii) send patient message B "
        "requesting an additional text consultation to collect additional necessary "
        "information?",
        LIKERT_4,
        (
            "No - patient message B should be sent.",
            "No - original unedited patient message A should have been sent.",
            "No - additional edits should have been made to patient message A and then "
            "this edited note should have been sent; and there is sufficient "
            "information in the dialogue to support these additional necessary edits.",
            "Yes",
        ),
    ),
    RubricQuestion(
        "oversight.overall_quality",
        "What is the combined overall QUALITY of the dialogue, SOAP note, patient "
        "message, supervisor edits, and supervision decision altogether?",
        LIKERT_5,
        (
            "Very Poor - there are clinically significant errors in all stages of this "
            "process.",
            "Poor - there is at least one clinically significant error in this process "
            "and the supervisor does not correct this error and/or makes an incorrect "
            "supervision decision.",
            "Fair - there is at least one clinically significant error in this process "
            "but the supervisor corrects this error and does make a correct supervision "
            "decision.",
            "Good - there are some errors that are not clinically significant and the "
            "supervisor does makes a correct supervision decision.",
            "Excellent - there are no errors and the supervisor makes a correct "
            "supervision decision.",
        ),
    ),
)

RUBRIC_CATALOG: dict[str, RubricQuestion] = {
    q.question_id: q
    for q in (_DDX_QUESTIONS + _MANAGEMENT_QUESTIONS + _note_quality_questions()
              + _OVERSIGHT_QUESTIONS)
}


def get_question(question_id: str) -> RubricQuestion:
    try:
        return RUBRIC_CATALOG[question_id]
    except KeyError:
        raise UnknownQuestion(question_id) from None


@dataclass(frozen=True)
class RubricAnswer:
    """One externally collected answer, ingested from a data file."""

    question_id: str
    case_id: str
    answer: Any


def read_answer_file(path: str | Path) -> list[RubricAnswer]:
    answers = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            data = json.loads(line)
            answers.append(
                RubricAnswer(
                    question_id=data["question_id"],
                    case_id=data["case_id"],
                    answer=data["answer"],
                )
            )
    return answers


def aggregate_numeric_answers(answers: Iterable[RubricAnswer]) -> dict[str, float]:
    """Mean per question over numeric answers; non-numeric answers are skipped."""
    totals: dict[str, list[float]] = {}
    for answer in answers:
        if isinstance(answer.answer, (int, float)) and not isinstance(answer.answer, bool):
            totals.setdefault(answer.question_id, []).append(float(answer.answer))
    return {qid: sum(vals) / len(vals) for qid, vals in sorted(totals.items())}
