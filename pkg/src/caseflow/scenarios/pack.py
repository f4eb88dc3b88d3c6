"""Scenario packs: the simulated-case bundle driving consultations and scoring.

A pack carries the patient persona, the ground-truth condition with plausible
alternatives, a golden management plan by category, a red-flag checklist, and
self-reportable objective findings. The bundled toy packs are synthetic
fixtures with no claim to clinical validity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from caseflow.errors import PackParseError, PackValidationError

GOLDEN_PLAN_CATEGORIES = ("investigations", "treatments", "referrals", "follow_ups")


@dataclass(frozen=True)
class PatientProfile:
    demographics: str
    presenting_story: str
    disclosure_rules: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "demographics": self.demographics,
            "presenting_story": self.presenting_story,
            "disclosure_rules": list(self.disclosure_rules),
        }


@dataclass(frozen=True)
class GroundTruth:
    probable_dx: str
    plausible_alternatives: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "probable_dx": self.probable_dx,
            "plausible_alternatives": list(self.plausible_alternatives),
        }


@dataclass(frozen=True)
class GoldenPlan:
    investigations: tuple[str, ...] = ()
    treatments: tuple[str, ...] = ()
    referrals: tuple[str, ...] = ()
    follow_ups: tuple[str, ...] = ()
    escalation_required: bool = False

    def by_category(self) -> dict[str, list[str]]:
        return {name: list(getattr(self, name)) for name in GOLDEN_PLAN_CATEGORIES}

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = self.by_category()
        data["escalation_required"] = self.escalation_required
        return data


@dataclass(frozen=True)
class ScenarioPack:
    id: str
    patient_profile: PatientProfile
    ground_truth: GroundTruth
    golden_plan: GoldenPlan
    red_flags: tuple[str, ...]
    objective_findings: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "patient_profile": self.patient_profile.to_dict(),
            "ground_truth": self.ground_truth.to_dict(),
            "golden_plan": self.golden_plan.to_dict(),
            "red_flags": list(self.red_flags),
            "objective_findings": list(self.objective_findings),
        }


def _validate(pack: ScenarioPack) -> None:
    if not pack.id:
        raise PackValidationError("id", "must be non-empty")
    if not pack.ground_truth.probable_dx:
        raise PackValidationError("ground_truth.probable_dx", "must be non-empty")
    if not pack.red_flags:
        raise PackValidationError("red_flags", "checklist must be non-empty")
    if not pack.patient_profile.presenting_story:
        raise PackValidationError("patient_profile.presenting_story", "must be non-empty")


def pack_from_dict(data: dict[str, Any]) -> ScenarioPack:
    try:
        profile = data["patient_profile"]
        truth = data["ground_truth"]
        plan = data.get("golden_plan", {})
        pack = ScenarioPack(
            id=data.get("id", ""),
            patient_profile=PatientProfile(
                demographics=profile.get("demographics", ""),
                presenting_story=profile.get("presenting_story", ""),
                disclosure_rules=tuple(profile.get("disclosure_rules", [])),
            ),
            ground_truth=GroundTruth(
                probable_dx=truth.get("probable_dx", ""),
                plausible_alternatives=tuple(truth.get("plausible_alternatives", [])),
            ),
            golden_plan=GoldenPlan(
                investigations=tuple(plan.get("investigations", [])),
                treatments=tuple(plan.get("treatments", [])),
                referrals=tuple(plan.get("referrals", [])),
                follow_ups=tuple(plan.get("follow_ups", [])),
                escalation_required=bool(plan.get("escalation_required", False)),
            ),
            red_flags=tuple(data.get("red_flags", [])),
            objective_findings=tuple(data.get("objective_findings", [])),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise PackValidationError(str(exc), "missing or malformed field") from exc
    _validate(pack)
    return pack


def load_pack(path: str | Path) -> ScenarioPack:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PackParseError(str(path), str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PackParseError(str(path), f"line {exc.lineno}: {exc.msg}") from exc
    return pack_from_dict(data)


def bundled_packs_dir() -> Path:
    return Path(__file__).parent / "packs"


def load_pack_dir(directory: str | Path) -> list[ScenarioPack]:
    """All packs in a directory (files named *.pack.json), sorted by id."""
    packs = [load_pack(p) for p in sorted(Path(directory).glob("*.pack.json"))]
    seen: set[str] = set()
    for pack in packs:
        if pack.id in seen:
            raise PackValidationError("id", f"duplicate pack id {pack.id!r}")
        seen.add(pack.id)
    return packs
