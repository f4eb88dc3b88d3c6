"""Per-case evaluation report and batch aggregation.

A report bundles the ground-truth metrics (diagnosis accuracy, plan coverage,
red-flag coverage), the dialogue advice rating, and any rubric ratings that
were run. Batch summaries are flat tables, one row per case.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from caseflow.autoeval.judges import Argument, AutoJudge, PlanCoverage
from caseflow.backend.base import RequestKey
from caseflow.canonical import canonical_dumps, canonical_loads
from caseflow.core.case import OversightCase
from caseflow.core.note import section_text, NoteSection

# Ratings of 4-5 group as favorable in summary tables; configurable at the
# aggregation call, documented here once.
FAVORABLE_THRESHOLD = 4


@dataclass(frozen=True)
class EvalReport:
    case_id: str
    top1_correct: bool
    full_ddx_correct: bool
    plan_coverage: PlanCoverage
    red_flag_coverage: float
    advice_likert_dialogue: int
    soap_likerts: dict[str, int] = field(default_factory=dict)
    rubric_answers: dict[str, Any] = field(default_factory=dict)
    rubric_arguments: dict[str, tuple[Argument, ...]] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "case_id": self.case_id,
            "top1_correct": self.top1_correct,
            "full_ddx_correct": self.full_ddx_correct,
            "plan_coverage": self.plan_coverage.to_dict(),
            "red_flag_coverage": self.red_flag_coverage,
            "advice_likert_dialogue": self.advice_likert_dialogue,
            "soap_likerts": dict(sorted(self.soap_likerts.items())),
            "rubric_answers": dict(sorted(self.rubric_answers.items())),
            "rubric_arguments": {
                qid: [a.to_dict() for a in args]
                for qid, args in sorted(self.rubric_arguments.items())
            },
        }

    def serialize(self) -> str:
        return canonical_dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EvalReport":
        coverage = data["plan_coverage"]
        return cls(
            case_id=data["case_id"],
            top1_correct=data["top1_correct"],
            full_ddx_correct=data["full_ddx_correct"],
            plan_coverage=PlanCoverage(
                per_category=dict(coverage["per_category"]),
                overall=coverage["overall"],
                covered={k: tuple(v) for k, v in coverage.get("covered", {}).items()},
            ),
            red_flag_coverage=data["red_flag_coverage"],
            advice_likert_dialogue=data["advice_likert_dialogue"],
            soap_likerts=dict(data.get("soap_likerts", {})),
            rubric_answers=dict(data.get("rubric_answers", {})),
            rubric_arguments={
                qid: tuple(Argument.from_dict(a) for a in args)
                for qid, args in data.get("rubric_arguments", {}).items()
            },
        )

    @classmethod
    def deserialize(cls, text: str) -> "EvalReport":
        return cls.from_dict(canonical_loads(text))


def evaluate_case(
    case: OversightCase,
    *,
    probable_dx: str,
    golden_plan: Mapping[str, Sequence[str]],
    red_flags: Sequence[str],
    judge: AutoJudge,
    classifier,
    likert_questions: Sequence[str] = (),
    use_working_note: bool = False,
) -> EvalReport:
    """Score one case against its scenario ground truth.

    By default the unedited draft note is scored; `use_working_note` scores
    the reviewer-edited version instead, so both sides of an edit can be
    compared."""
    note = case.working_note if use_working_note else case.draft_note
    assert note.assessment is not None and note.plan is not None
    differential = note.assessment.differential
    top1 = judge.judge_top1(differential[0], probable_dx) if differential else False
    full = top1 or (bool(differential) and judge.judge_full_ddx(differential, probable_dx))
    coverage = judge.plan_coverage(note.plan, golden_plan)
    red_flag = judge.red_flag_coverage(case.transcript, red_flags)
    advice_count = 0
    advice_worst = 1
    for i, turn in enumerate(case.transcript.clinician_turns()):
        verdict = classifier.classify(
            turn.text, case.transcript, key=RequestKey("guardrail", "count", i)
        )
        advice_worst = max(advice_worst, verdict.likert.value)
        if verdict.likert.value >= 4:
            advice_count += 1

    soap_likerts: dict[str, int] = {}
    rubric_answers: dict[str, Any] = {"oversight.advice_turn_count": advice_count}
    rubric_arguments: dict[str, tuple[Argument, ...]] = {}
    for question_id in likert_questions:
        if question_id.startswith("note_quality."):
            section = question_id.split(".")[1]
            document = section_text(note, NoteSection(section))
        else:
            document = note.serialize()
        rating = judge.rate_likert(document, question_id)
        rubric_answers[question_id] = rating.verdict
        rubric_arguments[question_id] = rating.arguments
        if question_id.startswith("note_quality."):
            soap_likerts[question_id.removeprefix("note_quality.")] = rating.verdict

    return EvalReport(
        case_id=case.case_id,
        top1_correct=top1,
        full_ddx_correct=full,
        plan_coverage=coverage,
        red_flag_coverage=red_flag,
        advice_likert_dialogue=advice_worst,
        soap_likerts=soap_likerts,
        rubric_answers=rubric_answers,
        rubric_arguments=rubric_arguments,
    )


SUMMARY_COLUMNS = (
    "case_id",
    "top1_correct",
    "full_ddx_correct",
    "plan_coverage_overall",
    "red_flag_coverage",
    "advice_likert_dialogue",
)


def summary_rows(reports: Sequence[EvalReport]) -> list[dict[str, Any]]:
    rows = []
    for report in reports:
        rows.append(
            {
                "case_id": report.case_id,
                "top1_correct": int(report.top1_correct),
                "full_ddx_correct": int(report.full_ddx_correct),
                "plan_coverage_overall": (
                    "" if report.plan_coverage.overall is None else report.plan_coverage.overall
                ),
                "red_flag_coverage": report.red_flag_coverage,
                "advice_likert_dialogue": report.advice_likert_dialogue,
            }
        )
    return rows


def summary_csv(reports: Sequence[EvalReport]) -> str:
    """One row per case, one column per metric; the plotting-friendly table."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in summary_rows(reports):
        writer.writerow(row)
    return buffer.getvalue()


def likert_favorable(values: Sequence[int], threshold: int = FAVORABLE_THRESHOLD) -> float:
    """Fraction of ratings at or above the favorable threshold (default 4-5)."""
    if not values:
        raise ValueError("no ratings to binarize")
    return sum(1 for v in values if v >= threshold) / len(values)


def batch_means(reports: Sequence[EvalReport],
                favorable_threshold: int = FAVORABLE_THRESHOLD) -> dict[str, float]:
    """Metric means across a batch; coverage means skip non-applicable cases.
    Rubric ratings aggregate as favorable fractions per question."""
    if not reports:
        return {}
    means: dict[str, float] = {
        "top1_accuracy": sum(r.top1_correct for r in reports) / len(reports),
        "full_ddx_accuracy": sum(r.full_ddx_correct for r in reports) / len(reports),
        "red_flag_coverage": sum(r.red_flag_coverage for r in reports) / len(reports),
        "advice_likert_dialogue": (
            sum(r.advice_likert_dialogue for r in reports) / len(reports)
        ),
    }
    applicable = [r.plan_coverage.overall for r in reports if r.plan_coverage.overall is not None]
    if applicable:
        means["plan_coverage_overall"] = sum(applicable) / len(applicable)
    by_question: dict[str, list[int]] = {}
    for report in reports:
        for key, value in report.soap_likerts.items():
            by_question.setdefault(f"favorable.{key}", []).append(value)
    for key, values in sorted(by_question.items()):
        means[key] = likert_favorable(values, favorable_threshold)
    return means
