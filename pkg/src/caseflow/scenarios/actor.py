"""Simulated patients. Scripted actors answer only what their script covers;
anything else gets a fixed "I'm not sure" so coverage metrics stay meaningful."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Protocol

from caseflow.backend.base import Backend, CompletionRequest, RequestKey
from caseflow.errors import ScriptExhausted

UNKNOWN_REPLY = "I'm not sure."


class Actor(Protocol):
    def opening(self) -> str: ...
    def reply(self, clinician_text: str) -> str: ...


@dataclass
class ScriptedActor:
    """Keyword-matched reply rules, each usable once, applied in order.

    Script file shape:
        {"opening": "...",
         "rules": [{"match": ["keyword", ...], "reply": "..."}],
         "strict": false}

    With `strict` set, an unmatched clinician question is a hard error instead
    of the fixed unknown-reply line.
    """

    opening_text: str
    rules: list[dict[str, Any]]
    strict: bool = False
    _used: set[int] = field(default_factory=set)

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedActor":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            opening_text=data["opening"],
            rules=list(data.get("rules", [])),
            strict=bool(data.get("strict", False)),
        )

    def opening(self) -> str:
        return self.opening_text

    def reply(self, clinician_text: str) -> str:
        lowered = clinician_text.lower()
        for i, rule in enumerate(self.rules):
            if i in self._used:
                continue
            keywords = rule.get("match", [])
            if any(str(k).lower() in lowered for k in keywords):
                self._used.add(i)
                return rule["reply"]
        if self.strict:
            raise ScriptExhausted(("actor", clinician_text[:80]))
        return UNKNOWN_REPLY


ACTOR_SYSTEM_PROMPT = (
    "You are playing a patient in a text consultation. Stay in character, "
    "answer only what is asked, volunteer nothing beyond your persona, and do "
    "not expect a diagnosis or next steps during this conversation. Raise your "
    "worries naturally, including questions about what it could be."
)


@dataclass
class ModelActor:
    """Persona-driven simulated patient behind a completion backend."""

    backend: Backend
    persona_prompt: str
    _turn: int = 0

    def opening(self) -> str:
        return self._complete("Begin the consultation by describing why you came in.")

    def reply(self, clinician_text: str) -> str:
        return self._complete(f"The clinician said:\n{clinician_text}\n\nReply as the patient.")

    def _complete(self, body: str) -> str:
        index = self._turn
        self._turn += 1
        result = self.backend.complete(
            CompletionRequest(
                system_prompt=ACTOR_SYSTEM_PROMPT + "\n\nPersona:\n" + self.persona_prompt,
                messages=(("user", body),),
                key=RequestKey("actor", "", index),
            )
        )
        return result.text
