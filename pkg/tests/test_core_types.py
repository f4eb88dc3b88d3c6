from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from caseflow.core.types import (
    AdviceLikert,
    DiagnosisEntry,
    Phase,
    ScreeningRecord,
    SignificanceLikert,
    Speaker,
    Transcript,
    Turn,
)
from tests.conftest import clean_screening


class TestAdviceLikert:
    def test_labels_total(self):
        labels = {AdviceLikert(v).label for v in range(1, 6)}
        assert len(labels) == 5
        assert AdviceLikert(1).label.startswith("Definitely not")
        assert "named" in AdviceLikert(5).label

    @pytest.mark.parametrize("bad", [0, 6, -1])
    def test_out_of_range_rejected(self, bad):
        with pytest.raises(ValueError):
            AdviceLikert(bad)


class TestScreeningRecord:
    def test_revision_texts_must_align(self):
        with pytest.raises(ValueError):
            ScreeningRecord(verdict=AdviceLikert(1), revisions_used=1, revision_texts=())

    def test_flagged_iff_verdict_above_pass(self):
        assert not ScreeningRecord(AdviceLikert(2), 0).flagged
        assert ScreeningRecord(AdviceLikert(5), 3, ("a", "b", "c")).flagged

    def test_revisions_bounded(self):
        with pytest.raises(ValueError):
            ScreeningRecord(AdviceLikert(1), 4, ("a", "b", "c", "d"))


class TestTurn:
    def test_clinician_requires_phase_and_screening(self):
        with pytest.raises(ValueError):
            Turn(0, Speaker.CLINICIAN, "hi", phase=Phase.INTAKE)
        with pytest.raises(ValueError):
            Turn(0, Speaker.CLINICIAN, "hi", screening=clean_screening())

    def test_patient_never_screened(self):
        with pytest.raises(ValueError):
            Turn(0, Speaker.PATIENT, "hi", screening=clean_screening())
        with pytest.raises(ValueError):
            Turn(0, Speaker.PATIENT, "hi", phase=Phase.INTAKE)


class TestTranscript:
    def test_append_keeps_indices_contiguous(self):
        t = Transcript().append(Speaker.PATIENT, "a")
        t = t.append(Speaker.CLINICIAN, "b", phase=Phase.INTAKE, screening=clean_screening())
        assert [turn.index for turn in t] == [0, 1]

    def test_alternation_enforced(self):
        t = Transcript().append(Speaker.PATIENT, "a")
        with pytest.raises(ValueError):
            t.append(Speaker.PATIENT, "again")

    def test_gap_rejected(self):
        turn = Turn(1, Speaker.PATIENT, "a")
        with pytest.raises(ValueError):
            Transcript((turn,))

    @given(st.integers(min_value=0, max_value=12), st.booleans())
    def test_alternation_holds_for_any_public_construction(self, n, start_patient):
        t = Transcript()
        speaker = Speaker.PATIENT if start_patient else Speaker.CLINICIAN
        for _ in range(n):
            if speaker is Speaker.PATIENT:
                t = t.append(speaker, "x")
            else:
                t = t.append(speaker, "y?", phase=Phase.INTAKE, screening=clean_screening())
            speaker = Speaker.CLINICIAN if speaker is Speaker.PATIENT else Speaker.PATIENT
        assert [turn.index for turn in t] == list(range(n))
        for a, b in zip(t.turns, t.turns[1:]):
            assert a.speaker is not b.speaker

    def test_roundtrip(self):
        t = Transcript().append(Speaker.PATIENT, "hello")
        t = t.append(Speaker.CLINICIAN, "hi?", phase=Phase.INTAKE, screening=clean_screening())
        assert Transcript.from_dict(t.to_dict()) == t


class TestDiagnosisEntry:
    def test_rank_positive(self):
        with pytest.raises(ValueError):
            DiagnosisEntry(name="x", rank=0)

    def test_name_non_empty(self):
        with pytest.raises(ValueError):
            DiagnosisEntry(name="", rank=1)


def test_significance_likert_labels():
    assert SignificanceLikert(1).label == "Definitely not clinically significant"
    assert SignificanceLikert(5).label == "Definitely clinically significant"
    with pytest.raises(ValueError):
        SignificanceLikert(0)
