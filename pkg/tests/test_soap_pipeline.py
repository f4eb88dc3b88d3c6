from __future__ import annotations

import json

import pytest

from caseflow.backend.scripted import ScriptedBackend
from caseflow.canonical import canonical_dumps
from caseflow.core.note import HPI_SLOTS, validate_note
from caseflow.core.types import Transcript
from caseflow.errors import ContractError, EmptyMessage
from caseflow.guardrail.classifier import RuleAdviceClassifier
from caseflow.soap.pipeline import (
    EmptyTranscriptBehavior,
    PipelineConfig,
    SoapPipeline,
)
from tests.conftest import make_transcript


def subjective_payload(**overrides):
    data = {
        "chief_complaint": "sore throat",
        "hpi": {slot: "N/A" for slot in HPI_SLOTS},
        "past_medical_history": "N/A",
        "surgical_history": "N/A",
        "drug_history": "N/A",
        "allergy_history": "N/A",
        "social_history": "N/A",
    }
    data.update(overrides)
    return data


def objective_payload(**overrides):
    data = {
        "vital_signs": ["temperature 38.2 C"],
        "physical_examination": "N/A",
        "lab_test": [],
        "imaging_test_results": "N/A",
    }
    data.update(overrides)
    return data


def assessment_payload(n_justifications=2):
    return {
        "analysis": "step-by-step reasoning over the reported symptoms",
        "differential": [
            {"name": "viral pharyngitis", "rank": 1},
            {"name": "strep throat", "rank": 2},
        ],
        "justifications": [f"reason {i}" for i in range(n_justifications)],
    }


def plan_payload():
    return {
        "investigations": ["throat swab"],
        "treatments": ["rest and fluids"],
        "referrals": [],
        "follow_ups": ["review in 48 hours"],
        "escalations": [],
    }


def step1_entry(response=None):
    return {
        "agent": "soap",
        "stage": "subjective_objective",
        "index": 0,
        "response": response
        or {"subjective": subjective_payload(), "objective": objective_payload()},
    }


def step2_entry(response=None):
    return {
        "agent": "soap",
        "stage": "assessment_plan",
        "index": 1,
        "response": response or {"assessment": assessment_payload(), "plan": plan_payload()},
    }


def step3_entry(text="Thank you for talking with me today. A physician will review "
                     "everything and send your next steps."):
    return {"agent": "soap", "stage": "patient_message", "index": 2, "response": text}


def make_pipeline(entries, config=None):
    backend = ScriptedBackend(entries)
    return SoapPipeline(
        backend, message_classifier=RuleAdviceClassifier(), config=config
    ), backend


class TestStepOne:
    def test_unmentioned_surgery_fills_na(self, transcript):
        pipeline, _ = make_pipeline([step1_entry()])
        subjective, _ = pipeline.generate_subjective_objective(transcript)
        assert subjective.surgical_history == "N/A"

    def test_self_reported_vital_lands_in_objective(self, transcript):
        pipeline, _ = make_pipeline([step1_entry()])
        _, objective = pipeline.generate_subjective_objective(transcript)
        assert "temperature 38.2 C" in objective.vital_signs

    def test_empty_transcript_default_yields_all_na(self):
        pipeline, backend = make_pipeline([])
        subjective, objective = pipeline.generate_subjective_objective(Transcript())
        assert subjective.surgical_history == "N/A"
        assert all(getattr(subjective.hpi, slot) == "N/A" for slot in HPI_SLOTS)
        assert objective.vital_signs == "N/A"
        assert backend.call_log == []

    def test_empty_transcript_error_mode(self):
        config = PipelineConfig(empty_transcript_behavior=EmptyTranscriptBehavior.ERROR)
        pipeline, _ = make_pipeline([], config=config)
        with pytest.raises(ContractError):
            pipeline.generate_subjective_objective(Transcript())


class TestStepTwo:
    def test_contract_satisfied_on_first_try(self, transcript):
        pipeline, _ = make_pipeline([step1_entry(), step2_entry()])
        subjective, objective = pipeline.generate_subjective_objective(transcript)
        assessment, plan = pipeline.generate_assessment_plan(transcript, subjective, objective)
        assert len(assessment.differential) == 2
        assert len(assessment.justifications) == 2
        assert plan.investigations == ("throat swab",)

    def test_missing_justifications_consume_one_repair(self, transcript):
        bad = {"assessment": assessment_payload(n_justifications=0), "plan": plan_payload()}
        entries = [
            step1_entry(),
            {"agent": "soap", "stage": "assessment_plan", "index": 1, "response": bad},
            step2_entry(),
        ]
        pipeline, backend = make_pipeline(entries)
        subjective, objective = pipeline.generate_subjective_objective(transcript)
        assessment, _ = pipeline.generate_assessment_plan(transcript, subjective, objective)
        assert len(assessment.justifications) == len(assessment.differential)
        step2_calls = [r for r in backend.call_log if r.key.stage == "assessment_plan"]
        assert len(step2_calls) == 2

    def test_prompt_embeds_serialized_subjective_verbatim(self, transcript):
        pipeline, backend = make_pipeline([step1_entry(), step2_entry()])
        subjective, objective = pipeline.generate_subjective_objective(transcript)
        pipeline.generate_assessment_plan(transcript, subjective, objective)
        request = [r for r in backend.call_log if r.key.stage == "assessment_plan"][0]
        body = "\n".join(text for _, text in request.messages)
        assert canonical_dumps(subjective.to_dict()).rstrip("\n") in body
        assert canonical_dumps(objective.to_dict()).rstrip("\n") in body


class TestStepThree:
    def test_scripted_message_returned_verbatim(self, transcript):
        message = "Hello! Thanks for your patience. Here is a summary of what we discussed."
        pipeline, _ = make_pipeline([step1_entry(), step2_entry(), step3_entry(message)])
        bundle = pipeline.run(transcript)
        assert bundle.note.patient_message == message

    def test_empty_message_is_an_error(self, transcript):
        pipeline, _ = make_pipeline([step1_entry(), step2_entry(), step3_entry("   ")])
        with pytest.raises(EmptyMessage):
            pipeline.run(transcript)

    def test_message_screening_is_report_only(self, transcript):
        message = (
            "Hello. Based on the consultation you most likely have viral pharyngitis; "
            "you should rest and drink fluids, and we will arrange a throat swab."
        )
        pipeline, _ = make_pipeline([step1_entry(), step2_entry(), step3_entry(message)])
        bundle = pipeline.run(transcript)
        assert bundle.note.patient_message == message  # never revised
        assert bundle.message_verdict is not None
        assert bundle.message_verdict.likert.value >= 4


class TestPipelineShape:
    def test_exactly_three_calls_in_order(self, transcript):
        pipeline, backend = make_pipeline([step1_entry(), step2_entry(), step3_entry()])
        pipeline.run(transcript)
        soap_keys = [r.key.as_tuple() for r in backend.call_log if r.key.agent == "soap"]
        assert soap_keys == [
            ("soap", "subjective_objective", 0),
            ("soap", "assessment_plan", 1),
            ("soap", "patient_message", 2),
        ]

    def test_later_prompts_embed_earlier_outputs(self, transcript):
        pipeline, backend = make_pipeline([step1_entry(), step2_entry(), step3_entry()])
        bundle = pipeline.run(transcript)
        records = {r.key.stage: r for r in backend.call_log if r.key.agent == "soap"}
        step2_body = "\n".join(t for _, t in records["assessment_plan"].messages)
        assert canonical_dumps(bundle.note.subjective.to_dict()).rstrip("\n") in step2_body
        step3_body = "\n".join(t for _, t in records["patient_message"].messages)
        assert bundle.note.assessment.analysis in step3_body
        assert "throat swab" in step3_body

    def test_every_note_validates_cleanly(self, transcript):
        pipeline, _ = make_pipeline([step1_entry(), step2_entry(), step3_entry()])
        bundle = pipeline.run(transcript)
        assert validate_note(bundle.note) == []
        assert bundle.note.chief_complaint == bundle.note.subjective.chief_complaint

    def test_word_counts_reported_never_enforced(self, transcript):
        pipeline, _ = make_pipeline([step1_entry(), step2_entry(), step3_entry()])
        bundle = pipeline.run(transcript)
        assert set(bundle.word_counts) == {
            "chief_complaint", "subjective", "objective", "assessment", "plan",
            "patient_message",
        }
        assert bundle.word_counts["patient_message"] > 0

    def test_deterministic_under_scripted_backend(self, transcript):
        entries = [step1_entry(), step2_entry(), step3_entry()]
        pipeline_a, _ = make_pipeline(entries)
        pipeline_b, _ = make_pipeline(entries)
        assert (
            pipeline_a.run(transcript).note.serialize()
            == pipeline_b.run(transcript).note.serialize()
        )


class TestMessageShape:
    def test_full_shape_passes(self, transcript):
        from caseflow.soap.pipeline import patient_message_shape

        message = ("Hello, and thank you for the consultation. You described two "
                   "months of burning. The most likely explanation is acid reflux. "
                   "We recommend a review in four weeks.")
        assert patient_message_shape(message) == {
            "greeting": True, "summary": True, "diagnosis": True, "next_steps": True,
        }

    def test_bare_message_reports_missing_parts(self):
        from caseflow.soap.pipeline import patient_message_shape

        shape = patient_message_shape("All done.")
        assert shape["greeting"] is False
        assert shape["next_steps"] is False

    def test_run_reports_shape_without_enforcing(self, transcript):
        pipeline, _ = make_pipeline([step1_entry(), step2_entry(), step3_entry("Short note.")])
        bundle = pipeline.run(transcript)
        assert bundle.note.patient_message == "Short note."
        assert bundle.message_shape["greeting"] is False
