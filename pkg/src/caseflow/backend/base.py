"""Completion interface shared by remote and scripted backends.

`complete` owns the validate-and-retry loop: when a request carries an output
contract, each raw reply is checked and a repair instruction appended until
the contract holds or the attempt budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from caseflow.backend.contracts import ContractViolation, StructureContract
from caseflow.errors import ContractError

DEFAULT_MAX_ATTEMPTS = 3


@dataclass(frozen=True)
class RequestKey:
    """Stable identity of a request: which agent asked, at which stage, and the
    sequence index within that stage. Scripted backends match on this."""

    agent: str
    stage: str = ""
    index: int = 0

    def as_tuple(self) -> tuple[str, str, int]:
        return (self.agent, self.stage, self.index)


@dataclass(frozen=True)
class CompletionRequest:
    system_prompt: str
    messages: tuple[tuple[str, str], ...]
    key: RequestKey
    output_contract: StructureContract | None = None
    max_attempts: int = DEFAULT_MAX_ATTEMPTS
    seed: int | None = None

    def __post_init__(self):
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")
        if not self.messages:
            raise ValueError("messages must be non-empty")

    def content_text(self) -> str:
        return "\n".join(text for _, text in self.messages)


@dataclass(frozen=True)
class CompletionResult:
    text: str
    attempts_used: int
    value: Any = None


@dataclass
class CallRecord:
    """One raw backend call, kept for pipeline-ordering checks."""

    key: RequestKey
    system_prompt: str
    messages: tuple[tuple[str, str], ...]
    response: str


class Backend:
    """A chat-completion backend. Subclasses implement `raw_complete`."""

    def __init__(self):
        self.call_log: list[CallRecord] = []

    def raw_complete(self, request: CompletionRequest, attempt: int) -> str:
        raise NotImplementedError

    def complete(self, request: CompletionRequest) -> CompletionResult:
        contract = request.output_contract
        current = request
        last_text = ""
        last_violations: list[ContractViolation] = []
        for attempt in range(request.max_attempts):
            text = self.raw_complete(current, attempt)
            self.call_log.append(
                CallRecord(
                    key=current.key,
                    system_prompt=current.system_prompt,
                    messages=current.messages,
                    response=text,
                )
            )
            if contract is None:
                return CompletionResult(text=text, attempts_used=attempt + 1)
            value, violations = contract.validate_text(text)
            if not violations:
                return CompletionResult(text=text, attempts_used=attempt + 1, value=value)
            last_text, last_violations = text, violations
            current = replace(
                current,
                messages=current.messages
                + (("assistant", text), ("user", _repair_instruction(violations))),
            )
        raise ContractError(
            f"output never satisfied its contract after {request.max_attempts} attempt(s)",
            last_text=last_text,
            violations=tuple(last_violations),
        )


def _repair_instruction(violations: list[ContractViolation]) -> str:
    listed = "; ".join(str(v) for v in violations[:10])
    return (
        "Your previous reply did not match the required structure. "
        f"Problems: {listed}. Reply again with the full corrected output only."
    )


@dataclass
class StaticBackend(Backend):
    """Returns one fixed reply for every request; handy as a constant judge."""

    reply: str = "No"

    def __post_init__(self):
        super().__init__()

    def raw_complete(self, request: CompletionRequest, attempt: int) -> str:
        return self.reply


@dataclass(frozen=True)
class BackendKind:
    """Declarative backend selection, e.g. from a config file.

    kind "remote_http" uses endpoint/model_name/auth_env_var; kind "scripted"
    uses script_path and is fully deterministic given (script, request)."""

    kind: str
    endpoint: str = ""
    model_name: str = ""
    auth_env_var: str = ""
    script_path: str = ""

    def __post_init__(self):
        if self.kind not in ("remote_http", "scripted"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "remote_http" and not self.endpoint:
            raise ValueError("remote_http backend requires an endpoint")
        if self.kind == "scripted" and not self.script_path:
            raise ValueError("scripted backend requires a script_path")

    def build(self) -> Backend:
        if self.kind == "scripted":
            from caseflow.backend.scripted import ScriptedBackend

            return ScriptedBackend.from_file(self.script_path)
        from caseflow.backend.remote import RemoteHttpBackend

        return RemoteHttpBackend(self.endpoint, self.model_name, self.auth_env_var)

    @classmethod
    def from_dict(cls, data: dict) -> "BackendKind":
        return cls(
            kind=data["kind"],
            endpoint=data.get("endpoint", ""),
            model_name=data.get("model_name", ""),
            auth_env_var=data.get("auth_env_var", ""),
            script_path=data.get("script_path", ""),
        )
