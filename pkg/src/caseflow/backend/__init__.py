"""Completion backends, output contracts, and prompt assembly."""

from caseflow.backend.base import (
    Backend,
    BackendKind,
    CallRecord,
    CompletionRequest,
    CompletionResult,
    RequestKey,
    StaticBackend,
)
from caseflow.backend.contracts import (
    ChoiceContract,
    ChoiceField,
    ContractViolation,
    Field,
    IntField,
    ListField,
    NonEmptyTextContract,
    RecordContract,
    RecordField,
    RecordListField,
    StringField,
    StructureContract,
)
from caseflow.backend.prompts import build_prompt
from caseflow.backend.remote import RemoteHttpBackend
from caseflow.backend.scripted import ScriptedBackend

__all__ = [
    "Backend",
    "BackendKind",
    "CallRecord",
    "ChoiceContract",
    "ChoiceField",
    "CompletionRequest",
    "CompletionResult",
    "ContractViolation",
    "Field",
    "IntField",
    "ListField",
    "NonEmptyTextContract",
    "RecordContract",
    "RecordField",
    "RecordListField",
    "RemoteHttpBackend",
    "RequestKey",
    "ScriptedBackend",
    "StaticBackend",
    "StringField",
    "StructureContract",
    "build_prompt",
]
