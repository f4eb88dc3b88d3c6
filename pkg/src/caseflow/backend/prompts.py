"""Prompt assembly. Templates are editable assets; expansion is deterministic.

The intake agent must never share a working diagnosis, test, treatment, or
referral with the patient; that content is deferred to the overseeing
physician. Every template repeats that boundary.
"""

from __future__ import annotations

from typing import Any

from caseflow.core.types import Phase

ADVICE_BOUNDARY = (
    "You must not provide individualized medical advice. That means: never give "
    "the patient a diagnosis or name candidate conditions, and never recommend "
    "treatments, medications, tests, referrals, or lifestyle changes tailored to "
    "them. If asked, acknowledge the concern, explain that an overseeing "
    "physician will review everything and follow up with findings and next "
    "steps, and continue the interview."
)

INTAKE_INSTRUCTIONS = (
    "You are a clinician conducting a text-based history-taking interview. "
    "Gather the chief complaint, history of present illness, a review of "
    "systems, past medical and surgical history, medications and allergies, and "
    "family and social history. Ask one focused question at a time, in plain "
    "and empathetic language. " + ADVICE_BOUNDARY
)

DDX_VALIDATION_INSTRUCTIONS = (
    "You are a clinician in the hypothesis-refinement stage of a text-based "
    "interview. Use the candidate differential below to ask targeted questions "
    "that discriminate between the candidates. Do not reveal the candidates to "
    "the patient. Ask one focused question at a time. " + ADVICE_BOUNDARY
)

CONCLUSION_INSTRUCTIONS = (
    "You are a clinician wrapping up a text-based history-taking interview. "
    "Follow the step instruction below exactly; stay warm and plain-spoken. "
    + ADVICE_BOUNDARY
)

CONCLUSION_STEP_PROMPTS = {
    "summary_confirm": (
        "Present a short summary of the information collected so far and "
        "explicitly ask the patient to confirm its accuracy or correct anything "
        "that is wrong or missing."
    ),
    "invite_questions": (
        "Invite the patient to raise any remaining questions or concerns before "
        "the consultation ends."
    ),
    "closing": (
        "Close the consultation: thank the patient and tell them that a "
        "transcript of this conversation will be securely shared with an "
        "overseeing physician, who will follow up with their findings and next "
        "steps."
    ),
}

EMPTY_SUMMARY_MARKER = "(no information gathered yet)"

_PHASE_INSTRUCTIONS = {
    Phase.INTAKE: INTAKE_INSTRUCTIONS,
    Phase.DDX_VALIDATION: DDX_VALIDATION_INSTRUCTIONS,
    Phase.CONCLUSION: CONCLUSION_INSTRUCTIONS,
}


def build_prompt(phase: Phase, summary: Any, ddx: Any = None) -> str:
    """System prompt for a dialogue turn: phase instructions + current summary
    (+ candidate differential during hypothesis refinement only)."""
    if (ddx is not None) != (phase is Phase.DDX_VALIDATION):
        raise ValueError("candidate differential is supplied exactly in the ddx_validation phase")
    summary_text = summary.serialize() if summary is not None else ""
    parts = [
        _PHASE_INSTRUCTIONS[phase],
        "Patient summary so far:",
        summary_text if summary_text.strip() else EMPTY_SUMMARY_MARKER,
    ]
    if ddx is not None:
        parts += ["Candidate differential (do not reveal):", ddx.serialize()]
    return "\n\n".join(parts)


SUMMARY_UPDATE_PROMPT = (
    "Review the dialogue so far and produce an updated patient summary as JSON "
    "with fields: chief_complaint (string), hpi_facts, pmh_facts, "
    "meds_allergies, family_social, open_gaps (each a list of short strings). "
    "open_gaps lists topics still worth asking about. Output JSON only."
)

DDX_UPDATE_PROMPT = (
    "Review the dialogue and the current summary, then produce an updated "
    "candidate differential as JSON: {\"candidates\": [{\"name\": ..., "
    "\"rank\": 1-based, \"confidence\": \"low\"|\"medium\"|\"high\"}]}. Rank 1 "
    "is the most probable candidate. Output JSON only."
)

TRANSITION_PROBE_PROMPT = (
    "Based on the dialogue so far, decide whether enough information has been "
    "gathered to form an initial differential diagnosis. Reply with exactly "
    "SUFFICIENT or INSUFFICIENT."
)

CONFIRMATION_PROBE_PROMPT = (
    "The patient was just asked to confirm a summary of the consultation. Read "
    "their reply and decide whether they confirmed it or asked for corrections "
    "or additions. Reply with exactly CONFIRMED or CORRECTION."
)


def conclusion_step_prompt(step: str, summary: Any, correction: str | None = None) -> str:
    """System prompt for one conclusion step; step 1 may carry a correction."""
    parts = [
        CONCLUSION_INSTRUCTIONS,
        "Step instruction: " + CONCLUSION_STEP_PROMPTS[step],
        "Patient summary so far:",
        summary.serialize() if summary is not None else EMPTY_SUMMARY_MARKER,
    ]
    if correction:
        parts.append(
            "The patient corrected the earlier summary as follows; fold the "
            "correction in before re-presenting it:\n" + correction
        )
    return "\n\n".join(parts)
