"""Declarative output contracts checked against completion text.

Contracts describe the required shape of a structured reply (record fields,
lists, choice sets, integer scales). They parse the raw text themselves, so a
completion either yields a value satisfying the contract or a list of
violations feeding the validate-and-retry loop.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from caseflow.core.note import NA


@dataclass(frozen=True)
class ContractViolation:
    path: str
    rule: str

    def __str__(self) -> str:
        return f"{self.path}: {self.rule}"


@dataclass(frozen=True)
class StringField:
    """A string value; `allow_na` admits the "N/A" sentinel explicitly."""

    name: str
    allow_na: bool = True
    allow_empty: bool = False

    def check(self, value: Any, path: str, out: list[ContractViolation]) -> None:
        if not isinstance(value, str):
            out.append(ContractViolation(path, "must be a string"))
        elif not value and not self.allow_empty:
            out.append(ContractViolation(path, "must be non-empty" + (' (use "N/A")' if self.allow_na else "")))


@dataclass(frozen=True)
class ListField:
    """A list of non-empty strings; optionally "N/A" stands in for the list."""

    name: str
    allow_na: bool = False
    min_items: int = 0

    def check(self, value: Any, path: str, out: list[ContractViolation]) -> None:
        if isinstance(value, str):
            if not (self.allow_na and value == NA):
                out.append(ContractViolation(path, "must be a list" + (' or "N/A"' if self.allow_na else "")))
            return
        if not isinstance(value, list):
            out.append(ContractViolation(path, "must be a list"))
            return
        if len(value) < self.min_items:
            out.append(ContractViolation(path, f"needs at least {self.min_items} item(s)"))
        for i, item in enumerate(value):
            if not isinstance(item, str) or not item:
                out.append(ContractViolation(f"{path}[{i}]", "items must be non-empty strings"))


@dataclass(frozen=True)
class IntField:
    name: str
    lo: int
    hi: int

    def check(self, value: Any, path: str, out: list[ContractViolation]) -> None:
        if not isinstance(value, int) or isinstance(value, bool):
            out.append(ContractViolation(path, "must be an integer"))
        elif not self.lo <= value <= self.hi:
            out.append(ContractViolation(path, f"must be in [{self.lo}, {self.hi}]"))


@dataclass(frozen=True)
class ChoiceField:
    name: str
    options: tuple[str, ...]

    def check(self, value: Any, path: str, out: list[ContractViolation]) -> None:
        if value not in self.options:
            out.append(ContractViolation(path, f"must be one of {list(self.options)}"))


@dataclass(frozen=True)
class RecordField:
    name: str
    fields: tuple["Field", ...]

    def check(self, value: Any, path: str, out: list[ContractViolation]) -> None:
        check_record(value, self.fields, path, out)


@dataclass(frozen=True)
class RecordListField:
    """A list of records, each matching the same field set."""

    name: str
    fields: tuple["Field", ...]
    min_items: int = 0

    def check(self, value: Any, path: str, out: list[ContractViolation]) -> None:
        if not isinstance(value, list):
            out.append(ContractViolation(path, "must be a list"))
            return
        if len(value) < self.min_items:
            out.append(ContractViolation(path, f"needs at least {self.min_items} item(s)"))
        for i, item in enumerate(value):
            check_record(item, self.fields, f"{path}[{i}]", out)


Field = StringField | ListField | IntField | ChoiceField | RecordField | RecordListField


def check_record(value: Any, fields: tuple[Field, ...], path: str,
                 out: list[ContractViolation]) -> None:
    if not isinstance(value, dict):
        out.append(ContractViolation(path, "must be a record"))
        return
    for spec in fields:
        child = f"{path}.{spec.name}" if path else spec.name
        if spec.name not in value:
            out.append(ContractViolation(child, "absent"))
        else:
            spec.check(value[spec.name], child, out)


class StructureContract:
    """Base contract: parse raw completion text and report violations."""

    description: str = ""

    def validate_text(self, text: str) -> tuple[Any, list[ContractViolation]]:
        raise NotImplementedError


class RecordContract(StructureContract):
    """Requires a JSON record with the given fields. Field order in the
    contract is the order repair instructions cite them in."""

    def __init__(self, fields: tuple[Field, ...], description: str = ""):
        self.fields = fields
        self.description = description

    def validate_text(self, text: str) -> tuple[Any, list[ContractViolation]]:
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            return None, [ContractViolation("$", f"not valid JSON: {exc.msg}")]
        out: list[ContractViolation] = []
        check_record(value, self.fields, "", out)
        return value, out


class ChoiceContract(StructureContract):
    """Requires the raw text (stripped) to be exactly one of the options."""

    def __init__(self, options: tuple[str, ...], description: str = ""):
        self.options = options
        self.description = description

    def validate_text(self, text: str) -> tuple[Any, list[ContractViolation]]:
        value = text.strip()
        if value not in self.options:
            return None, [ContractViolation("$", f"must be exactly one of {list(self.options)}")]
        return value, []


class NonEmptyTextContract(StructureContract):
    """Free-form text; the only requirement is that it is non-blank."""

    def validate_text(self, text: str) -> tuple[Any, list[ContractViolation]]:
        if not text.strip():
            return None, [ContractViolation("$", "must be non-empty text")]
        return text, []
