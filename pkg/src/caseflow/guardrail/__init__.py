"""Outbound-turn screening: classify, revise within a bound, or deflect."""

from caseflow.guardrail.classifier import (
    AdviceVerdict,
    ModelAdviceClassifier,
    RuleAdviceClassifier,
)
from caseflow.guardrail.corpus import (
    bundled_corpus,
    ClassifierEvaluation,
    LabeledTurn,
    LabeledTurnCorpus,
    binarize,
    evaluate_classifier,
    gold_pair,
    pairwise_agreements,
)
from caseflow.guardrail.screening import (
    DEFLECTION_TEMPLATE,
    PASS_THRESHOLD,
    ModelReviser,
    RedactionReviser,
    ScreeningOutcome,
    screen_and_revise,
)

__all__ = [
    "AdviceVerdict",
    "ClassifierEvaluation",
    "DEFLECTION_TEMPLATE",
    "LabeledTurn",
    "LabeledTurnCorpus",
    "ModelAdviceClassifier",
    "ModelReviser",
    "PASS_THRESHOLD",
    "RedactionReviser",
    "RuleAdviceClassifier",
    "ScreeningOutcome",
    "binarize",
    "bundled_corpus",
    "evaluate_classifier",
    "gold_pair",
    "pairwise_agreements",
    "screen_and_revise",
]
