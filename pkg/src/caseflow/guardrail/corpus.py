"""Labeled-turn corpora and classifier evaluation against them.

Corpus files are JSON Lines; each record holds {context, text, labels} with
one to three rater values on the five-point advice scale. Gold labels come
from the most-agreeing rater pair, binarized with the mid-scale excluded.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Any

from caseflow.backend.base import RequestKey
from caseflow.canonical import canonical_line, canonical_loads
from caseflow.errors import EmptyAfterExclusion
from caseflow.guardrail.screening import AdviceClassifier

ADVICE = "advice"
NO_ADVICE = "no_advice"
EXCLUDED = "excluded"


def binarize(value: float) -> str:
    """>=4 is advice, <=2 is no advice; the mid-scale band is excluded."""
    if value >= 4:
        return ADVICE
    if value <= 2:
        return NO_ADVICE
    return EXCLUDED


@dataclass(frozen=True)
class LabeledTurn:
    text: str
    labels: tuple[int, ...]
    context: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            raise ValueError("labels must be non-empty")
        if any(v not in (1, 2, 3, 4, 5) for v in self.labels):
            raise ValueError(f"labels must be in 1..5, got {self.labels}")

    def to_dict(self) -> dict[str, Any]:
        return {"context": list(self.context), "text": self.text, "labels": list(self.labels)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LabeledTurn":
        return cls(
            text=data["text"],
            labels=tuple(data["labels"]),
            context=tuple(data.get("context", [])),
        )


@dataclass(frozen=True)
class LabeledTurnCorpus:
    turns: tuple[LabeledTurn, ...]

    def __post_init__(self):
        if not self.turns:
            raise ValueError("corpus must be non-empty")

    def __len__(self) -> int:
        return len(self.turns)

    @classmethod
    def load(cls, path: str | Path) -> "LabeledTurnCorpus":
        turns = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if line.strip():
                turns.append(LabeledTurn.from_dict(canonical_loads(line)))
        return cls(tuple(turns))

    def dump(self, path: str | Path) -> None:
        text = "".join(canonical_line(t.to_dict()) + "\n" for t in self.turns)
        Path(path).write_text(text, encoding="utf-8")


def bundled_corpus() -> LabeledTurnCorpus:
    """The 30-turn hand-labeled corpus shipped for deterministic evaluation."""
    return LabeledTurnCorpus.load(Path(__file__).parent / "data" / "advice_corpus.jsonl")


def pairwise_agreements(corpus: LabeledTurnCorpus) -> dict[tuple[int, int], float]:
    """Agreement per rater pair: fraction of co-rated turns with the same
    binarized label."""
    rater_count = max(len(t.labels) for t in corpus.turns)
    agreements: dict[tuple[int, int], float] = {}
    for i, j in combinations(range(rater_count), 2):
        rated = [t for t in corpus.turns if len(t.labels) > max(i, j)]
        if not rated:
            continue
        same = sum(1 for t in rated if binarize(t.labels[i]) == binarize(t.labels[j]))
        agreements[(i, j)] = same / len(rated)
    return agreements


def gold_pair(corpus: LabeledTurnCorpus) -> tuple[int, int] | None:
    """The most-agreeing rater pair (first pair wins ties); None if no pair."""
    agreements = pairwise_agreements(corpus)
    if not agreements:
        return None
    best = max(agreements.values())
    return min(pair for pair, value in agreements.items() if value == best)


@dataclass(frozen=True)
class ClassifierEvaluation:
    accuracy: float
    agreement: dict[tuple[int, int], float]
    included: int
    excluded: int
    matches: int
    gold_raters: tuple[int, int] | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "accuracy": self.accuracy,
            "agreement": {f"{i}-{j}": v for (i, j), v in sorted(self.agreement.items())},
            "included": self.included,
            "excluded": self.excluded,
            "matches": self.matches,
            "gold_raters": list(self.gold_raters) if self.gold_raters else None,
        }


def evaluate_classifier(
    corpus: LabeledTurnCorpus, classifier: AdviceClassifier
) -> ClassifierEvaluation:
    """Score *classifier* against the corpus gold labels.

    Gold per turn is the averaged rating of the most-agreeing rater pair,
    binarized; mid-scale golds are excluded from accuracy. Predictions
    binarize the same way, so an "unclear" prediction matches nothing.
    """
    agreements = pairwise_agreements(corpus)
    pair = gold_pair(corpus)

    included = 0
    excluded = 0
    matches = 0
    for idx, turn in enumerate(corpus.turns):
        if pair is not None and len(turn.labels) > max(pair):
            gold_value: float = (turn.labels[pair[0]] + turn.labels[pair[1]]) / 2
        else:
            gold_value = float(turn.labels[0])
        gold = binarize(gold_value)
        if gold == EXCLUDED:
            excluded += 1
            continue
        included += 1
        verdict = classifier.classify(
            turn.text,
            context=turn.context,
            key=RequestKey(agent="guardrail", stage="corpus", index=idx),
        )
        if binarize(verdict.likert.value) == gold:
            matches += 1
    if included == 0:
        raise EmptyAfterExclusion("every corpus turn binarized to the excluded band")
    return ClassifierEvaluation(
        accuracy=matches / included,
        agreement=agreements,
        included=included,
        excluded=excluded,
        matches=matches,
        gold_raters=pair,
    )
