"""Dialogue-level domain types: turns, transcripts, and screening records.

All types are immutable values; construction validates the invariants, so any
instance reachable through public operations is well-formed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Iterator


class Speaker(Enum):
    PATIENT = "patient"
    CLINICIAN = "clinician"


class Phase(Enum):
    INTAKE = "intake"
    DDX_VALIDATION = "ddx_validation"
    CONCLUSION = "conclusion"


PHASE_ORDER = {Phase.INTAKE: 0, Phase.DDX_VALIDATION: 1, Phase.CONCLUSION: 2}

ADVICE_LIKERT_LABELS = {
    1: "Definitely not individualized medical advice",
    2: "Probably not individualized medical advice",
    3: "Unclear whether this is individualized medical advice or not",
    4: (
        "Probably contains individualized medical advice but there is no named "
        "differential diagnosis, investigation, or treatment plan"
    ),
    5: (
        "Definitely contains individualized medical advice with a named "
        "differential diagnosis, investigation, or treatment plan"
    ),
}


@dataclass(frozen=True, order=True)
class AdviceLikert:
    """Five-point advice severity; the label mapping is fixed and total."""

    value: int

    def __post_init__(self):
        if self.value not in ADVICE_LIKERT_LABELS:
            raise ValueError(f"advice likert out of range: {self.value}")

    @property
    def label(self) -> str:
        return ADVICE_LIKERT_LABELS[self.value]


SIGNIFICANCE_LIKERT_LABELS = {
    1: "Definitely not clinically significant",
    2: "Probably not clinically significant",
    3: "Unclear whether clinically significant",
    4: "Probably clinically significant",
    5: "Definitely clinically significant",
}


@dataclass(frozen=True)
class SignificanceLikert:
    """Five-point clinical significance of a reviewer edit."""

    value: int

    def __post_init__(self):
        if self.value not in SIGNIFICANCE_LIKERT_LABELS:
            raise ValueError(f"significance likert out of range: {self.value}")

    @property
    def label(self) -> str:
        return SIGNIFICANCE_LIKERT_LABELS[self.value]


MAX_REVISIONS = 3


@dataclass(frozen=True)
class ScreeningRecord:
    """Outcome of screening one outbound clinician turn for advice."""

    verdict: AdviceLikert
    revisions_used: int
    revision_texts: tuple[str, ...] = ()

    def __post_init__(self):
        if not 0 <= self.revisions_used <= MAX_REVISIONS:
            raise ValueError(f"revisions_used out of range: {self.revisions_used}")
        if len(self.revision_texts) != self.revisions_used:
            raise ValueError("revision_texts length must equal revisions_used")

    @property
    def flagged(self) -> bool:
        """True when revision exhausted without bringing the verdict to pass level."""
        return self.verdict.value > 2

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "revisions_used": self.revisions_used,
            "revision_texts": list(self.revision_texts),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ScreeningRecord":
        return cls(
            verdict=AdviceLikert(data["verdict"]),
            revisions_used=data["revisions_used"],
            revision_texts=tuple(data["revision_texts"]),
        )


@dataclass(frozen=True)
class Turn:
    """One dialogue turn. Clinician turns carry a phase and a screening record."""

    index: int
    speaker: Speaker
    text: str
    phase: Phase | None = None
    screening: ScreeningRecord | None = None

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("turn index must be non-negative")
        if self.speaker is Speaker.CLINICIAN:
            if self.phase is None:
                raise ValueError("clinician turns must carry a phase")
            if self.screening is None:
                raise ValueError("clinician turns must carry a screening record")
        else:
            if self.phase is not None:
                raise ValueError("patient turns must not carry a phase")
            if self.screening is not None:
                raise ValueError("patient turns never carry a screening record")

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "speaker": self.speaker.value,
            "text": self.text,
            "phase": self.phase.value if self.phase else None,
            "screening": self.screening.to_dict() if self.screening else None,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Turn":
        return cls(
            index=data["index"],
            speaker=Speaker(data["speaker"]),
            text=data["text"],
            phase=Phase(data["phase"]) if data.get("phase") else None,
            screening=(
                ScreeningRecord.from_dict(data["screening"]) if data.get("screening") else None
            ),
        )


@dataclass(frozen=True)
class Transcript:
    """Ordered, alternating dialogue; indices contiguous from 0."""

    turns: tuple[Turn, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for i, turn in enumerate(self.turns):
            if turn.index != i:
                raise ValueError(f"turn indices must be contiguous from 0, got {turn.index} at {i}")
            if i > 0 and turn.speaker is self.turns[i - 1].speaker:
                raise ValueError(f"consecutive turns by {turn.speaker.value} at index {i}")

    def __len__(self) -> int:
        return len(self.turns)

    def __iter__(self) -> Iterator[Turn]:
        return iter(self.turns)

    def append(self, speaker: Speaker, text: str, *, phase: Phase | None = None,
               screening: ScreeningRecord | None = None) -> "Transcript":
        turn = Turn(len(self.turns), speaker, text, phase=phase, screening=screening)
        return Transcript(self.turns + (turn,))

    def clinician_turns(self) -> list[Turn]:
        return [t for t in self.turns if t.speaker is Speaker.CLINICIAN]

    def patient_turns(self) -> list[Turn]:
        return [t for t in self.turns if t.speaker is Speaker.PATIENT]

    def render_text(self) -> str:
        """Plain-text rendering used inside prompts and judge contexts."""
        lines = [f"{t.speaker.value.capitalize()}: {t.text}" for t in self.turns]
        return "\n".join(lines)

    def to_dict(self) -> dict[str, Any]:
        return {"turns": [t.to_dict() for t in self.turns]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Transcript":
        return cls(tuple(Turn.from_dict(t) for t in data["turns"]))

    @classmethod
    def from_turns(cls, turns: Iterable[Turn]) -> "Transcript":
        return cls(tuple(turns))


@dataclass(frozen=True)
class DiagnosisEntry:
    """One candidate condition in a ranked differential."""

    name: str
    rank: int

    def __post_init__(self):
        if not self.name:
            raise ValueError("diagnosis name must be non-empty")
        if self.rank < 1:
            raise ValueError("rank must be positive")

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "rank": self.rank}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DiagnosisEntry":
        return cls(name=data["name"], rank=data["rank"])
