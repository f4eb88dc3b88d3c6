"""Three-phase intake dialogue agent."""

from caseflow.dialogue.session import (
    ClinicianTurn,
    IntakeSession,
    PhaseConfig,
    SufficiencyMode,
    TransitionSignal,
    TurnRole,
)
from caseflow.dialogue.summary import (
    DDX_CONTRACT,
    SUMMARY_CONTRACT,
    CandidateDdx,
    Confidence,
    PatientSummary,
)

__all__ = [
    "CandidateDdx",
    "ClinicianTurn",
    "Confidence",
    "DDX_CONTRACT",
    "IntakeSession",
    "PatientSummary",
    "PhaseConfig",
    "SUMMARY_CONTRACT",
    "SufficiencyMode",
    "TransitionSignal",
    "TurnRole",
]
