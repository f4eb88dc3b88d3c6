"""Scenario packs, simulated patients, and batch runners."""

from caseflow.scenarios.actor import ModelActor, ScriptedActor, UNKNOWN_REPLY
from caseflow.scenarios.pack import (
    GOLDEN_PLAN_CATEGORIES,
    GoldenPlan,
    GroundTruth,
    PatientProfile,
    ScenarioPack,
    bundled_packs_dir,
    load_pack,
    load_pack_dir,
    pack_from_dict,
)
from caseflow.scenarios.runner import (
    BatchResult,
    ConsultationResult,
    RunConfig,
    run_batch,
    run_consultation,
    scripted_run_config,
)

__all__ = [
    "BatchResult",
    "ConsultationResult",
    "GOLDEN_PLAN_CATEGORIES",
    "GoldenPlan",
    "GroundTruth",
    "ModelActor",
    "PatientProfile",
    "RunConfig",
    "ScenarioPack",
    "ScriptedActor",
    "UNKNOWN_REPLY",
    "bundled_packs_dir",
    "load_pack",
    "load_pack_dir",
    "pack_from_dict",
    "run_batch",
    "run_consultation",
    "scripted_run_config",
]
