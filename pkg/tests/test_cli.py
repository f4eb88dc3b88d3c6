from __future__ import annotations

import json
from pathlib import Path

import pytest

from caseflow.cli import main
from caseflow.scenarios.pack import bundled_packs_dir
from tests.conftest import make_case, make_transcript
from tests.test_guardrail import ORDERING_TURN

PACKS = str(bundled_packs_dir())


def tree_bytes(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


class TestRunCommand:
    def test_run_produces_artifacts_and_exits_zero(self, tmp_path, capsys):
        code = main(["run", "--packs", PACKS, "--out", str(tmp_path / "out")])
        assert code == 0
        out = capsys.readouterr().out
        assert "3 case(s), 0 failure(s)" in out
        assert (tmp_path / "out" / "summary.csv").exists()
        assert (tmp_path / "out" / "store" / "audit.log").exists()

    def test_two_runs_byte_identical(self, tmp_path):
        main(["run", "--packs", PACKS, "--out", str(tmp_path / "a")])
        main(["run", "--packs", PACKS, "--out", str(tmp_path / "b")])
        assert tree_bytes(tmp_path / "a") == tree_bytes(tmp_path / "b")

    def test_missing_packs_dir_fails(self, tmp_path):
        code = main(["run", "--packs", str(tmp_path / "empty"), "--out", str(tmp_path / "o")])
        assert code == 2


class TestScreenCommand:
    def test_clean_transcript_exits_zero(self, tmp_path, capsys):
        path = tmp_path / "transcript.json"
        path.write_text(json.dumps(make_transcript().to_dict()), encoding="utf-8")
        assert main(["screen", "--transcript", str(path)]) == 0
        out = capsys.readouterr().out
        assert "turn 1: 1" in out

    def test_advice_turn_flags_nonzero_exit(self, tmp_path, capsys):
        from caseflow.core.types import Phase, Speaker, Transcript
        from tests.conftest import clean_screening

        t = Transcript().append(Speaker.PATIENT, "hello")
        t = t.append(Speaker.CLINICIAN, ORDERING_TURN, phase=Phase.INTAKE,
                     screening=clean_screening())
        path = tmp_path / "transcript.json"
        path.write_text(json.dumps(t.to_dict()), encoding="utf-8")
        assert main(["screen", "--transcript", str(path)]) == 1
        assert "turn 1: 5" in capsys.readouterr().out


class TestNoteCommand:
    def test_note_from_stored_transcript(self, tmp_path):
        from tests.test_soap_pipeline import step1_entry, step2_entry, step3_entry

        transcript_path = tmp_path / "transcript.json"
        transcript_path.write_text(
            json.dumps(make_transcript().to_dict()), encoding="utf-8"
        )
        script_path = tmp_path / "script.json"
        script_path.write_text(
            json.dumps({"entries": [step1_entry(), step2_entry(), step3_entry()]}),
            encoding="utf-8",
        )
        out_path = tmp_path / "note.json"
        code = main([
            "note", "--transcript", str(transcript_path),
            "--script", str(script_path), "--out", str(out_path),
        ])
        assert code == 0
        note = json.loads(out_path.read_text(encoding="utf-8"))
        assert note["subjective"]["hpi"]["radiation"] == "N/A"


class TestEvalCommand:
    def test_eval_case_against_pack(self, tmp_path):
        case_path = tmp_path / "case.json"
        case = make_case(case_id="case-eval")
        case_path.write_text(case.serialize(), encoding="utf-8")
        pack_path = tmp_path / "p.pack.json"
        pack_path.write_text(json.dumps({
            "id": "p",
            "patient_profile": {"demographics": "adult", "presenting_story": "sore throat"},
            "ground_truth": {"probable_dx": "viral pharyngitis"},
            "golden_plan": {"investigations": ["throat swab"], "treatments": []},
            "red_flags": ["drooling or inability to swallow"],
        }), encoding="utf-8")
        script_path = tmp_path / "judges.json"
        script_path.write_text(json.dumps({"entries": [
            {"agent": "judge", "stage": "redflag|drooling or inability to swallow",
             "index": 0, "response": "No"},
        ]}), encoding="utf-8")
        out_path = tmp_path / "report.json"
        code = main([
            "eval", "--case", str(case_path), "--pack", str(pack_path),
            "--script", str(script_path), "--out", str(out_path),
        ])
        assert code == 0
        report = json.loads(out_path.read_text(encoding="utf-8"))
        assert report["top1_correct"] is True
        assert report["plan_coverage"]["per_category"]["investigations"] == 1.0
        assert report["red_flag_coverage"] == 0.0
