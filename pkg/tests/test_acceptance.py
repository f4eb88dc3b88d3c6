"""Acceptance suite: one test per release criterion, each printing a
pass/fail line. Run with `pytest tests/test_acceptance.py -s -v`."""

from __future__ import annotations

import dataclasses
import random
import time
from contextlib import contextmanager
from datetime import timedelta
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from caseflow.autoeval.judges import AutoJudge, normalize
from caseflow.backend.base import StaticBackend
from caseflow.backend.scripted import ScriptedBackend
from caseflow.cli import main
from caseflow.core.case import CaseStateKind, DecisionKind
from caseflow.core.note import NoteSection, Plan, section_text, validate_note
from caseflow.core.types import DiagnosisEntry, Phase, Speaker, Transcript
from caseflow.errors import CaseflowError
from caseflow.guardrail.classifier import RuleAdviceClassifier
from caseflow.guardrail.corpus import bundled_corpus, evaluate_classifier
from caseflow.guardrail.screening import RedactionReviser, screen_and_revise
from caseflow.oversight.api import create_app
from caseflow.oversight.store import OversightStore, TickClock, replay
from caseflow.scenarios.pack import bundled_packs_dir, load_pack_dir
from caseflow.scenarios.runner import run_consultation, scripted_run_config
from caseflow.core.types import SignificanceLikert
from tests.conftest import clean_screening, make_case, make_note

PACKS_DIR = bundled_packs_dir()


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] {name}: FAIL")
        raise
    print(f"[ACCEPTANCE] {name}: PASS")


def tree_bytes(root: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


def test_deterministic_end_to_end(tmp_path):
    """Two scripted runs over the bundled packs are byte-identical and fast."""
    with criterion("deterministic end-to-end"):
        started = time.monotonic()
        assert main(["run", "--packs", str(PACKS_DIR), "--out", str(tmp_path / "a")]) == 0
        assert main(["run", "--packs", str(PACKS_DIR), "--out", str(tmp_path / "b")]) == 0
        elapsed = time.monotonic() - started
        first, second = tree_bytes(tmp_path / "a"), tree_bytes(tmp_path / "b")
        assert first and first == second
        assert any(path.startswith("cases/") for path in first)
        assert any(path.startswith("reports/") for path in first)
        assert elapsed < 10.0, f"two runs took {elapsed:.2f}s"


CLEAN_SENTENCES = [
    "How long has this been going on?",
    "Can you walk me through a typical day with these symptoms?",
    "Thank you for explaining that so clearly.",
    "Any changes in appetite or sleep?",
    "I hear how worrying this has been for you.",
    "Did anything unusual happen before it started?",
]
SOFT_SENTENCES = [
    "It would be helpful to keep a log of your readings when you can.",
    "Keep an eye on the swelling and note any changes.",
]
ADVICE_SENTENCES = [
    "You should rest for two days and avoid screens.",
    "I recommend cutting back on coffee for a while.",
    "This sounds like gastritis.",
    "Start taking the tablets tonight.",
    "I will order blood work for next week.",
    "You need an MRI of the lower back.",
    "Go to the emergency department now.",
    "My advice is to take it easy for a week.",
]


def test_guardrail_bound_and_totality():
    """Fuzzed screening: revision bound, non-empty output, idempotence."""
    with criterion("guardrail bound & totality"):
        rng = random.Random(2024)
        classifier = RuleAdviceClassifier()
        reviser = RedactionReviser()
        for _ in range(1000):
            sentences = rng.choices(
                CLEAN_SENTENCES + SOFT_SENTENCES + ADVICE_SENTENCES,
                k=rng.randint(1, 4),
            )
            turn = " ".join(sentences)
            outcome = screen_and_revise(turn, None, classifier, reviser)
            assert 0 <= outcome.record.revisions_used <= 3
            assert outcome.final_text.strip()
            again = screen_and_revise(outcome.final_text, None, classifier, reviser)
            assert again.record.revisions_used == 0
            assert again.final_text == outcome.final_text


def test_guardrail_oracle_accuracy_on_bundled_corpus():
    """The rule oracle scores 100% on the shipped 30-turn corpus and the
    pairwise agreements equal the hand enumeration."""
    with criterion("guardrail oracle accuracy"):
        corpus = bundled_corpus()
        assert len(corpus) == 30
        evaluation = evaluate_classifier(corpus, RuleAdviceClassifier())
        assert evaluation.accuracy == 1.0
        assert evaluation.excluded == 0
        assert evaluation.agreement == {(0, 1): 1.0, (0, 2): 0.9, (1, 2): 0.9}
        assert evaluation.gold_raters == (0, 1)


def _random_lifecycle(rng: random.Random, sequence_index: int):
    clock = TickClock()
    store = OversightStore(clock=clock, lease_minutes=30)
    case_ids = [f"case-{sequence_index}-{i}" for i in range(rng.randint(1, 2))]
    initial = {}
    decided_snapshots: dict[str, str] = {}
    reviewers = ["rev-a", "rev-b", "rev-c"]

    for case_id in case_ids:
        case = make_case(case_id=case_id, state_kind=CaseStateKind.NOTE_DRAFTED)
        store.enqueue(case)
        initial[case_id] = (case.transcript, case.draft_note, case.message_b_text)

    for _ in range(rng.randint(3, 10)):
        op = rng.randrange(7)
        case_id = rng.choice(case_ids)
        reviewer = rng.choice(reviewers)
        try:
            if op == 0:
                store.enqueue(make_case(case_id=case_id))  # duplicate: idempotent
            elif op == 1:
                store.claim(reviewer)
            elif op == 2:
                store.claim_case(case_id, reviewer)
            elif op == 3:
                current = store.get_case(case_id)
                before = section_text(current.working_note, NoteSection.PATIENT_MESSAGE)
                if rng.random() < 0.2:
                    before = "stale snapshot"
                store.apply_edit(case_id, reviewer, "patient_message", before,
                                 f"edit {rng.randrange(1000)}")
            elif op == 4:
                store.rate_significance(case_id, reviewer, "plan",
                                        SignificanceLikert(rng.randint(1, 5)))
            elif op == 5:
                kind = rng.choice(list(DecisionKind))
                store.decide(case_id, reviewer, kind)
                decided_snapshots[case_id] = store.get_case(case_id).serialize()
            else:
                clock._current += timedelta(minutes=rng.choice([1, 45]))
                store.queue()  # sweeps lapsed leases
        except CaseflowError:
            continue

    # exactly-one-lease and terminality/immutability checks
    for case_id in case_ids:
        case = store.get_case(case_id)
        if case.state.kind is CaseStateKind.UNDER_REVIEW:
            assert case.state.reviewer_id in reviewers
            assert case.state.lease_expiry is not None
        transcript, draft, message_b = initial[case_id]
        assert case.transcript == transcript
        assert case.draft_note == draft
        assert case.message_b_text == message_b
        if case_id in decided_snapshots:
            assert case.serialize() == decided_snapshots[case_id]
            assert case.state.kind is CaseStateKind.DECIDED

    rebuilt = replay(store.log.events, lease_minutes=30)
    assert rebuilt.serialize_state() == store.serialize_state()


def test_lifecycle_properties_over_random_sequences():
    """10 000 random event sequences: one lease, terminal decisions, immutable
    inputs, and byte-equal replay."""
    with criterion("lifecycle properties (10k sequences)"):
        rng = random.Random(11)
        for i in range(10_000):
            _random_lifecycle(rng, i)


NOTE_KNOCKOUTS = {
    "chief_complaint": lambda n: dataclasses.replace(n, chief_complaint=None),
    "subjective": lambda n: dataclasses.replace(n, subjective=None),
    "subjective.hpi.radiation": lambda n: dataclasses.replace(
        n, subjective=dataclasses.replace(
            n.subjective, hpi=dataclasses.replace(n.subjective.hpi, radiation=None))),
    "subjective.surgical_history": lambda n: dataclasses.replace(
        n, subjective=dataclasses.replace(n.subjective, surgical_history=None)),
    "objective": lambda n: dataclasses.replace(n, objective=None),
    "objective.lab_test": lambda n: dataclasses.replace(
        n, objective=dataclasses.replace(n.objective, lab_test=None)),
    "assessment": lambda n: dataclasses.replace(n, assessment=None),
    "assessment.analysis": lambda n: dataclasses.replace(
        n, assessment=dataclasses.replace(n.assessment, analysis=None)),
    "plan": lambda n: dataclasses.replace(n, plan=None),
    "patient_message": lambda n: dataclasses.replace(n, patient_message=None),
}


def test_schema_totality(tmp_path):
    """Pipeline-emitted notes validate; any absent subsection is reported with
    its exact path."""
    with criterion("schema totality"):
        packs = load_pack_dir(PACKS_DIR)
        config = scripted_run_config(PACKS_DIR)
        for pack in packs:
            result = run_consultation(pack, config.actor_factory(pack), config)
            assert validate_note(result.case.working_note) == []

        rng = random.Random(5)
        knockout_names = list(NOTE_KNOCKOUTS)
        for _ in range(200):
            chosen = rng.sample(knockout_names, rng.randint(1, 4))
            # nested knockouts under a removed parent are redundant; drop them
            effective = [
                name for name in chosen
                if not any(name.startswith(parent + ".") for parent in chosen)
            ]
            note = make_note()
            for name in effective:
                note = NOTE_KNOCKOUTS[name](note)
            paths = {v.path for v in validate_note(note)}
            for name in effective:
                assert name in paths, f"knockout {name} not reported in {paths}"


def test_metric_oracles():
    """Coverage equals a brute-force recount; top1 implies full; red-flag
    fractions are exact."""
    with criterion("metric oracles"):
        rng = random.Random(99)
        categories = ("investigations", "treatments", "referrals", "follow_ups")
        vocabulary = [f"step {i}" for i in range(40)]
        judge = AutoJudge(StaticBackend(reply="No"))
        for _ in range(20):
            golden = {c: rng.sample(vocabulary, rng.randint(0, 5)) for c in categories}
            produced = {c: [x for x in golden[c] if rng.random() < 0.5] for c in categories}
            plan = Plan(**{c: tuple(produced[c]) for c in categories})
            coverage = judge.plan_coverage(plan, golden)
            pooled = {normalize(x) for items in produced.values() for x in items}
            hits = total = 0
            for c in categories:
                if not golden[c]:
                    assert c not in coverage.per_category
                    continue
                c_hits = sum(1 for x in golden[c] if normalize(x) in pooled)
                assert coverage.per_category[c] == pytest.approx(c_hits / len(golden[c]))
                hits, total = hits + c_hits, total + len(golden[c])
            assert coverage.overall == (
                pytest.approx(hits / total) if total else None
            )

        names = [f"condition {i}" for i in range(15)]
        for _ in range(1000):
            entries = [
                DiagnosisEntry(rng.choice(names), r + 1) for r in range(rng.randint(1, 5))
            ]
            truth = rng.choice(names)
            top1 = judge.judge_top1(entries[0], truth)
            assert (not top1) or judge.judge_full_ddx(entries, truth)

        items = [f"red flag {i}" for i in range(10)]
        transcript = Transcript().append(Speaker.PATIENT, "hello")
        transcript = transcript.append(
            Speaker.CLINICIAN, "Anything else?", phase=Phase.INTAKE,
            screening=clean_screening(),
        )
        for k in range(11):
            entries = [
                {"agent": "judge", "stage": f"redflag|{item}", "index": 0,
                 "response": "Yes" if i < k else "No"}
                for i, item in enumerate(items)
            ]
            scripted_judge = AutoJudge(ScriptedBackend(entries))
            assert scripted_judge.red_flag_coverage(transcript, items) == pytest.approx(k / 10)


def test_three_call_pipeline():
    """Backend log per note shows (S,O) -> (A,P) -> message, later prompts
    embedding earlier outputs verbatim."""
    with criterion("three-call pipeline"):
        from caseflow.canonical import canonical_dumps

        packs = load_pack_dir(PACKS_DIR)
        config = scripted_run_config(PACKS_DIR)
        for pack in packs:
            result = run_consultation(pack, config.actor_factory(pack), config)
            soap_calls = [r for r in result.backend.call_log if r.key.agent == "soap"]
            assert [r.key.as_tuple() for r in soap_calls] == [
                ("soap", "subjective_objective", 0),
                ("soap", "assessment_plan", 1),
                ("soap", "patient_message", 2),
            ]
            note = result.case.draft_note
            step2_body = "\n".join(t for _, t in soap_calls[1].messages)
            assert canonical_dumps(note.subjective.to_dict()).rstrip("\n") in step2_body
            assert canonical_dumps(note.objective.to_dict()).rstrip("\n") in step2_body
            step3_body = "\n".join(t for _, t in soap_calls[2].messages)
            partial = dataclasses.replace(note, patient_message=None)
            assert partial.serialize().rstrip("\n") in step3_body


def test_conclusion_contract():
    """Every concluded toy session ends with the summarize-confirm, invite,
    and closing turns, in that order, verified by role tags."""
    with criterion("conclusion contract"):
        packs = load_pack_dir(PACKS_DIR)
        config = scripted_run_config(PACKS_DIR)
        for pack in packs:
            result = run_consultation(pack, config.actor_factory(pack), config)
            roles = result.session_log["conclusion_roles"]
            assert roles[-3:] == ["summary_confirm", "invite_questions", "closing"]
            closing_text = result.case.transcript.clinician_turns()[-1].text
            assert "securely shared with an overseeing physician" in closing_text


def test_api_conformance():
    """Golden exchanges across all eight endpoints, including the
    immutable-section and edit-mismatch error paths."""
    with criterion("API conformance"):
        store = OversightStore(clock=TickClock())
        client = TestClient(create_app(store), raise_server_exceptions=False)
        headers = {"X-Reviewer-Id": "rev-1"}

        body = make_case(case_id="case-acc", state_kind=CaseStateKind.NOTE_DRAFTED).to_dict()
        created = client.post("/cases", json=body)
        assert (created.status_code, created.json()["case_id"]) == (201, "case-acc")

        queue = client.get("/queue")
        assert queue.status_code == 200
        assert queue.json()["cases"][0]["case_id"] == "case-acc"

        claimed = client.post("/cases/case-acc/claim", headers=headers)
        assert claimed.status_code == 200
        assert claimed.json()["state"]["kind"] == "under_review"

        immutable = client.post(
            "/cases/case-acc/edits", headers=headers,
            json={"section": "transcript", "before": "", "after": "x"},
        )
        assert (immutable.status_code, immutable.json()["error"]) == (422, "immutable_section")

        before = section_text(store.get_case("case-acc").working_note,
                              NoteSection.PATIENT_MESSAGE)
        edited = client.post(
            "/cases/case-acc/edits", headers=headers,
            json={"section": "patient_message", "before": before, "after": "adjusted"},
        )
        assert edited.status_code == 200
        assert edited.json()["working_note"]["patient_message"] == "adjusted"

        mismatch = client.post("/cases/case-acc/decision", headers=headers,
                               json={"kind": "send_a"})
        assert (mismatch.status_code, mismatch.json()["error"]) == (409, "edit_mismatch")

        rated = client.post("/cases/case-acc/significance", headers=headers,
                            json={"section": "patient_message", "value": 4})
        assert rated.status_code == 200

        decided = client.post("/cases/case-acc/decision", headers=headers,
                              json={"kind": "send_edited_a"})
        assert decided.status_code == 200
        assert decided.json()["outbound_message"] == "adjusted"

        fetched = client.get("/cases/case-acc")
        assert fetched.status_code == 200
        assert fetched.json()["state"]["kind"] == "decided"

        audit = client.get("/cases/case-acc/audit")
        assert audit.status_code == 200
        assert [e["kind"] for e in audit.json()["events"]] == [
            "created", "claimed", "edited", "significance_rated", "decided",
        ]
