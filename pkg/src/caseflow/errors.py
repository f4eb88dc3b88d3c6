"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any


class CaseflowError(Exception):
    """Base class for all package errors."""


class TransitionError(CaseflowError):
    """An event was applied to a case state that does not accept it."""

    def __init__(self, from_state: str, event: str):
        super().__init__(f"illegal transition: {event} in state {from_state}")
        self.from_state = from_state
        self.event = event


class TransportError(CaseflowError):
    """Remote completion endpoint unreachable or misbehaving."""


class ContractError(CaseflowError):
    """Structured output never satisfied its contract within the attempt budget."""

    def __init__(self, message: str, last_text: str = "", violations: tuple | None = None):
        super().__init__(message)
        self.last_text = last_text
        self.violations = tuple(violations or ())


class ScriptExhausted(CaseflowError):
    """Scripted backend has no response for the request key."""

    def __init__(self, key: Any):
        super().__init__(f"no scripted response for key {key}")
        self.key = key


class SessionConcluded(CaseflowError):
    """Operation attempted on a dialogue session that already concluded."""


class InvalidState(CaseflowError):
    """A service operation saw a case in a state it cannot act on."""


class UnknownCase(CaseflowError):
    """No case with the given id in the store."""


class NotLeaseHolder(CaseflowError):
    """Mutation attempted by a reviewer who does not hold the case lease."""


class ImmutableSection(CaseflowError):
    """Edit targeted the transcript or the fixed follow-up message."""


class StaleEdit(CaseflowError):
    """Edit's `before` snapshot no longer matches the current section content."""


class EditMismatch(CaseflowError):
    """Decision kind is inconsistent with the case's edit history."""


class CorruptLog(CaseflowError):
    """Audit log has a gap or a non-monotone sequence number."""


class EmptyAfterExclusion(CaseflowError):
    """Every corpus turn binarized to the excluded mid-scale band."""


class UnknownQuestion(CaseflowError):
    """Rubric question id is not in the catalog."""


class PackParseError(CaseflowError):
    """Scenario pack file could not be parsed."""

    def __init__(self, path: str, detail: str):
        super().__init__(f"{path}: {detail}")
        self.path = path
        self.detail = detail


class PackValidationError(CaseflowError):
    """Scenario pack parsed but violates an invariant."""

    def __init__(self, field: str, detail: str):
        super().__init__(f"{field}: {detail}")
        self.field = field
        self.detail = detail


class EmptyMessage(CaseflowError):
    """Generated patient message was empty."""
