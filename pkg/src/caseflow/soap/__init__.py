"""Three-call note drafting pipeline."""

from caseflow.soap.pipeline import (
    ASSESSMENT_PLAN_CONTRACT,
    EmptyTranscriptBehavior,
    InvalidNote,
    NoteBundle,
    PipelineConfig,
    SUBJECTIVE_OBJECTIVE_CONTRACT,
    SoapPipeline,
    patient_message_shape,
)

__all__ = [
    "ASSESSMENT_PLAN_CONTRACT",
    "EmptyTranscriptBehavior",
    "InvalidNote",
    "NoteBundle",
    "PipelineConfig",
    "SUBJECTIVE_OBJECTIVE_CONTRACT",
    "SoapPipeline",
    "patient_message_shape",
]
