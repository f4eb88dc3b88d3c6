"""Model-backed judging primitives: semantic matches, coverage checks, and
argument-conditioned rubric ratings with constrained verdicts.

Exact string equality (case- and whitespace-insensitive) short-circuits every
match judgment without touching the backend, so deterministic fixtures need no
scripted judge entries for verbatim hits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from caseflow.backend.base import Backend, CompletionRequest, RequestKey
from caseflow.backend.contracts import (
    ChoiceContract,
    ChoiceField,
    IntField,
    RecordContract,
    RecordListField,
    StringField,
)
from caseflow.core.note import Plan
from caseflow.core.types import DiagnosisEntry, Transcript
from caseflow.autoeval.rubrics import RubricQuestion, get_question

_YES_NO = ChoiceContract(("Yes", "No"))

_WHITESPACE = re.compile(r"\s+")


def normalize(text: str) -> str:
    return _WHITESPACE.sub(" ", text.strip().lower())


class Importance(Enum):
    MINOR = "minor"
    MAJOR = "major"


class Stance(Enum):
    SUPPORTING = "supporting"
    OPPOSING = "opposing"


@dataclass(frozen=True)
class Argument:
    """One judge argument: what aspect, why it matters, how much, which way."""

    topic: str
    explanation: str
    importance: Importance
    stance: Stance

    def __post_init__(self):
        if not self.topic or not self.explanation:
            raise ValueError("argument topic and explanation must be non-empty")

    def to_dict(self) -> dict:
        return {
            "topic": self.topic,
            "explanation": self.explanation,
            "importance": self.importance.value,
            "stance": self.stance.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Argument":
        return cls(
            topic=data["topic"],
            explanation=data["explanation"],
            importance=Importance(data["importance"]),
            stance=Stance(data["stance"]),
        )


@dataclass(frozen=True)
class LikertRating:
    verdict: int
    arguments: tuple[Argument, ...]


@dataclass(frozen=True)
class PlanCoverage:
    per_category: dict[str, float]
    overall: float | None
    covered: dict[str, tuple[str, ...]]

    @property
    def applicable(self) -> bool:
        return self.overall is not None

    def to_dict(self) -> dict:
        return {
            "per_category": dict(sorted(self.per_category.items())),
            "overall": self.overall,
            "covered": {k: list(v) for k, v in sorted(self.covered.items())},
        }


_MATCH_PROMPT = (
    "You compare clinical phrases. Answer exactly Yes or No: do the two phrases "
    "refer to the same condition, or does the first subsume the second as the "
    "same clinical entity?"
)

_PLAN_ITEM_PROMPT = (
    "You check management plans. Answer exactly Yes or No: does the plan below "
    "contain the given next-step item (the wording may differ, the clinical "
    "content must match)?"
)

_RED_FLAG_PROMPT = (
    "You check intake thoroughness. Answer exactly Yes or No: did the clinician "
    "ask a direct and logically relevant question covering the checklist item? "
    "A general inquiry that merely touches the same theme is insufficient "
    "evidence; the question must be demonstrably and directly linked to the "
    "item."
)

_ARGUED_RATING_PROMPT = (
    "You rate a document against one rubric question. First populate "
    "\"arguments\": a list of supporting and opposing arguments, each with a "
    "topic (the specific aspect of the document), an explanation (why that "
    "aspect supports or opposes a high rating), an importance (minor or major), "
    "and a stance (supporting or opposing). Then, conditioned on those "
    "arguments, set \"verdict\" to your final rating. Output JSON only: "
    "{\"arguments\": [...], \"verdict\": 1-N}."
)

_ARGUMENTS_ONLY_PROMPT = (
    "You analyze a document against one rubric question. Output JSON only: "
    "{\"arguments\": [{\"topic\", \"explanation\", \"importance\": "
    "minor|major, \"stance\": supporting|opposing}, ...]}."
)

_VERDICT_ONLY_PROMPT = (
    "Given the rubric question and the arguments already collected, output "
    "JSON only: {\"verdict\": 1-N} as your final rating conditioned on those "
    "arguments."
)

_ARGUMENT_FIELDS = RecordListField(
    "arguments",
    fields=(
        StringField("topic"),
        StringField("explanation"),
        ChoiceField("importance", ("minor", "major")),
        ChoiceField("stance", ("supporting", "opposing")),
    ),
    min_items=1,
)


def _rating_contract(hi: int) -> RecordContract:
    return RecordContract(fields=(_ARGUMENT_FIELDS, IntField("verdict", 1, hi)))


def _arguments_contract() -> RecordContract:
    return RecordContract(fields=(_ARGUMENT_FIELDS,))


def _verdict_contract(hi: int) -> RecordContract:
    return RecordContract(fields=(IntField("verdict", 1, hi),))


class AutoJudge:
    """All backend-mediated judgments; deterministic under scripted backends."""

    def __init__(self, backend: Backend, *, two_call_likert: bool = False,
                 max_attempts: int = 3):
        self.backend = backend
        self.two_call_likert = two_call_likert
        self.max_attempts = max_attempts

    @property
    def backend_calls(self) -> int:
        return len(self.backend.call_log)

    def _yes_no(self, system_prompt: str, body: str, stage: str) -> bool:
        result = self.backend.complete(
            CompletionRequest(
                system_prompt=system_prompt,
                messages=(("user", body),),
                key=RequestKey("judge", stage, 0),
                output_contract=_YES_NO,
                max_attempts=self.max_attempts,
            )
        )
        return result.value == "Yes"

    def judge_top1(self, predicted: DiagnosisEntry, truth: str) -> bool:
        """Does the top-ranked candidate match the ground-truth condition?
        Exact (case/whitespace-insensitive) equality answers without a call."""
        if normalize(predicted.name) == normalize(truth):
            return True
        return self._yes_no(
            _MATCH_PROMPT,
            f"Phrase 1: {predicted.name}\nPhrase 2: {truth}",
            stage=f"top1|{normalize(predicted.name)}|{normalize(truth)}",
        )

    def judge_full_ddx(self, differential: Sequence[DiagnosisEntry], truth: str) -> bool:
        """True iff any entry of the differential matches the truth."""
        if not differential:
            raise ValueError("differential must be non-empty")
        return any(self.judge_top1(entry, truth) for entry in differential)

    def plan_coverage(self, plan: Plan, golden_plan: Mapping[str, Sequence[str]]) -> PlanCoverage:
        """Fraction of golden items present in the produced plan, per category
        and pooled. Categories with no golden items are excluded; an entirely
        empty golden plan yields a defined-empty result (overall None)."""
        produced = [item for field in
                    (plan.investigations, plan.treatments, plan.referrals,
                     plan.follow_ups, plan.escalations)
                    for item in field]
        produced_normalized = {normalize(item) for item in produced}
        plan_text = "\n".join(f"- {item}" for item in produced) or "(empty plan)"

        per_category: dict[str, float] = {}
        covered: dict[str, tuple[str, ...]] = {}
        hits_total = 0
        items_total = 0
        for category in sorted(golden_plan):
            items = list(golden_plan[category])
            if not items:
                continue
            hits = []
            for item in items:
                if normalize(item) in produced_normalized:
                    present = True
                else:
                    present = self._yes_no(
                        _PLAN_ITEM_PROMPT,
                        f"Plan:\n{plan_text}\n\nItem ({category}): {item}",
                        stage=f"plan|{category}|{normalize(item)}",
                    )
                if present:
                    hits.append(item)
            per_category[category] = len(hits) / len(items)
            covered[category] = tuple(hits)
            hits_total += len(hits)
            items_total += len(items)
        overall = hits_total / items_total if items_total else None
        return PlanCoverage(per_category=per_category, overall=overall, covered=covered)

    def red_flag_coverage(self, transcript: Transcript, red_flags: Sequence[str]) -> float:
        """Fraction of checklist items covered by a direct, logically relevant
        clinician question."""
        if not red_flags:
            raise ValueError("red flag checklist must be non-empty")
        questions = "\n".join(
            f"- {t.text}" for t in transcript.clinician_turns()
        ) or "(no clinician questions)"
        hits = 0
        for item in red_flags:
            if self._yes_no(
                _RED_FLAG_PROMPT,
                f"Clinician questions:\n{questions}\n\nChecklist item: {item}",
                stage=f"redflag|{normalize(item)}",
            ):
                hits += 1
        return hits / len(red_flags)

    def rate_likert(self, document: str, question_id: str) -> LikertRating:
        """Argument-conditioned rating for one catalog question. One structured
        call by default; a two-call mode (arguments, then verdict) is available."""
        question = get_question(question_id)
        hi = self._scale_top(question)
        body = f"Rubric question: {question.text}\n"
        if question.options:
            body += "Options (1 = first):\n" + "\n".join(
                f"{i + 1}. {opt}" for i, opt in enumerate(question.options)
            ) + "\n"
        body += f"\nDocument:\n{document}"
        if not self.two_call_likert:
            result = self.backend.complete(
                CompletionRequest(
                    system_prompt=_ARGUED_RATING_PROMPT,
                    messages=(("user", body),),
                    key=RequestKey("judge", f"likert|{question_id}", 0),
                    output_contract=_rating_contract(hi),
                    max_attempts=self.max_attempts,
                )
            )
            value = result.value
        else:
            first = self.backend.complete(
                CompletionRequest(
                    system_prompt=_ARGUMENTS_ONLY_PROMPT,
                    messages=(("user", body),),
                    key=RequestKey("judge", f"likert_args|{question_id}", 0),
                    output_contract=_arguments_contract(),
                    max_attempts=self.max_attempts,
                )
            )
            second = self.backend.complete(
                CompletionRequest(
                    system_prompt=_VERDICT_ONLY_PROMPT,
                    messages=(
                        ("user", body),
                        ("user", "Arguments:\n" + first.text),
                    ),
                    key=RequestKey("judge", f"likert_verdict|{question_id}", 0),
                    output_contract=_verdict_contract(hi),
                    max_attempts=self.max_attempts,
                )
            )
            value = {"arguments": first.value["arguments"], "verdict": second.value["verdict"]}
        return LikertRating(
            verdict=value["verdict"],
            arguments=tuple(Argument.from_dict(a) for a in value["arguments"]),
        )

    @staticmethod
    def _scale_top(question: RubricQuestion) -> int:
        # Option lists may carry a trailing human-only "cannot rate" entry;
        # the scale kind fixes the auto-ratable range.
        tops = {"likert5": 5, "likert4": 4, "likert3": 3, "binary": 2}
        if question.scale_kind not in tops:
            raise ValueError(f"{question.question_id} is not a scale question")
        return tops[question.scale_kind]


def count_advice_turns(transcript: Transcript, classifier) -> int:
    """Number of clinician turns classified at probable-or-definite advice."""
    count = 0
    for i, turn in enumerate(transcript.clinician_turns()):
        verdict = classifier.classify(
            turn.text, transcript, key=RequestKey("guardrail", "count", i)
        )
        if verdict.likert.value >= 4:
            count += 1
    return count
