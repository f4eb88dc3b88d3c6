"""Screen-and-revise loop for outbound clinician turns.

A turn passes at verdict 1-2. Anything above triggers up to three revisions;
if the third still fails, a fixed deflection template goes out instead and the
screening record is flagged. The loop always returns text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from caseflow.backend.base import Backend, CompletionRequest, RequestKey
from caseflow.backend.contracts import NonEmptyTextContract
from caseflow.core.types import MAX_REVISIONS, ScreeningRecord
from caseflow.guardrail.classifier import (
    AdviceVerdict,
    render_context,
    sentence_advice_level,
    split_sentences,
)

PASS_THRESHOLD = 2  # verdict <= 2 passes; 3 ("unclear") is treated as unsafe

DEFLECTION_TEMPLATE = (
    "I understand wanting answers right away, and I'm sorry I can't be more "
    "specific. I'm not able to share findings or recommendations during this "
    "conversation. Everything you've told me will be reviewed by the "
    "overseeing physician, who will follow up with you directly about the "
    "findings and next steps."
)


class AdviceClassifier(Protocol):
    def classify(self, turn_text: str, context: object = None,
                 key: RequestKey | None = None) -> AdviceVerdict: ...


class Reviser(Protocol):
    def revise(self, turn_text: str, context: object, verdict: AdviceVerdict,
               key: RequestKey | None = None) -> str: ...


@dataclass(frozen=True)
class ScreeningOutcome:
    final_text: str
    record: ScreeningRecord

    @property
    def flagged(self) -> bool:
        return self.record.flagged


def screen_and_revise(
    turn_text: str,
    context: object,
    classifier: AdviceClassifier,
    reviser: Reviser,
    *,
    key_stage: str = "",
    max_revisions: int = MAX_REVISIONS,
) -> ScreeningOutcome:
    verdict = classifier.classify(
        turn_text, context, key=RequestKey(agent="guardrail", stage=key_stage, index=0)
    )
    if verdict.likert.value <= PASS_THRESHOLD:
        return ScreeningOutcome(
            final_text=turn_text,
            record=ScreeningRecord(verdict=verdict.likert, revisions_used=0),
        )

    current = turn_text
    revision_texts: list[str] = []
    for i in range(1, max_revisions + 1):
        current = reviser.revise(
            current, context, verdict, key=RequestKey(agent="revise", stage=key_stage, index=i - 1)
        )
        revision_texts.append(current)
        verdict = classifier.classify(
            current, context, key=RequestKey(agent="guardrail", stage=key_stage, index=i)
        )
        if verdict.likert.value <= PASS_THRESHOLD:
            return ScreeningOutcome(
                final_text=current,
                record=ScreeningRecord(
                    verdict=verdict.likert,
                    revisions_used=i,
                    revision_texts=tuple(revision_texts),
                ),
            )
    # Revision budget exhausted; send the safe deflection and flag the record.
    return ScreeningOutcome(
        final_text=DEFLECTION_TEMPLATE,
        record=ScreeningRecord(
            verdict=verdict.likert,
            revisions_used=max_revisions,
            revision_texts=tuple(revision_texts),
        ),
    )


REVISER_SYSTEM_PROMPT = (
    "The reply below was flagged for containing individualized medical advice "
    "(a diagnosis, or a recommendation for treatment, medication, tests, "
    "referrals, or lifestyle changes tailored to the patient). Rewrite it to "
    "remove every trace of such advice while keeping the empathetic tone and "
    "any legitimate questions. Do not add new advice. Output only the "
    "rewritten reply."
)


class ModelReviser:
    """Regenerates the turn through the backend with a removal instruction."""

    def __init__(self, backend: Backend, max_attempts: int = 3):
        self.backend = backend
        self.max_attempts = max_attempts

    def revise(self, turn_text: str, context: object, verdict: AdviceVerdict,
               key: RequestKey | None = None) -> str:
        context_text = render_context(context)
        body = ""
        if context_text:
            body += f"Dialogue context:\n{context_text}\n\n"
        body += f"Flagged reply (graded {verdict.likert.value}/5: {verdict.rationale}):\n{turn_text}"
        result = self.backend.complete(
            CompletionRequest(
                system_prompt=REVISER_SYSTEM_PROMPT,
                messages=(("user", body),),
                key=key or RequestKey(agent="revise"),
                output_contract=NonEmptyTextContract(),
                max_attempts=self.max_attempts,
            )
        )
        return result.text


class RedactionReviser:
    """Deterministic reviser: drops sentences the rule oracle rates above the
    pass threshold. Falls back to the deflection template when nothing is left."""

    def revise(self, turn_text: str, context: object, verdict: AdviceVerdict,
               key: RequestKey | None = None) -> str:
        kept = [
            s for s in split_sentences(turn_text)
            if sentence_advice_level(s) <= PASS_THRESHOLD
        ]
        redacted = " ".join(kept).strip()
        return redacted if redacted else DEFLECTION_TEMPLATE
