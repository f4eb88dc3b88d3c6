"""End-to-end consultation and batch runners.

One consultation drives the intake session against an actor, runs the note
pipeline, and yields a drafted case; a batch additionally enqueues each case
for oversight and scores it against the pack's ground truth. Scripted runs
are bitwise reproducible.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from caseflow.autoeval.judges import AutoJudge
from caseflow.autoeval.report import EvalReport, batch_means, evaluate_case, summary_csv
from caseflow.backend.base import Backend
from caseflow.backend.scripted import ScriptedBackend
from caseflow.canonical import canonical_dumps
from caseflow.core.case import DEFAULT_MESSAGE_B_TEXT, OversightCase, new_drafted_case
from caseflow.core.note import validate_note
from caseflow.core.types import Phase
from caseflow.dialogue.session import IntakeSession, PhaseConfig
from caseflow.errors import CaseflowError
from caseflow.guardrail.classifier import RuleAdviceClassifier
from caseflow.guardrail.screening import RedactionReviser
from caseflow.oversight.audit import AuditKind
from caseflow.oversight.store import OversightStore
from caseflow.scenarios.actor import Actor, ScriptedActor
from caseflow.scenarios.pack import ScenarioPack
from caseflow.soap.pipeline import PipelineConfig, SoapPipeline


@dataclass
class RunConfig:
    """Everything a consultation needs besides the pack and the actor."""

    backend_factory: Callable[[ScenarioPack], Backend]
    actor_factory: Callable[[ScenarioPack], Actor]
    classifier_factory: Callable[[Backend], Any] = lambda backend: RuleAdviceClassifier()
    reviser_factory: Callable[[Backend], Any] = lambda backend: RedactionReviser()
    phase_config: PhaseConfig = field(default_factory=PhaseConfig)
    pipeline_config: PipelineConfig = field(default_factory=PipelineConfig)
    message_b_text: str = DEFAULT_MESSAGE_B_TEXT
    likert_questions: tuple[str, ...] = ()
    case_id_prefix: str = "case-"
    max_dialogue_turns: int = 200
    workers: int = 1


@dataclass(frozen=True)
class ConsultationResult:
    case: OversightCase
    session_log: dict[str, Any]
    backend: Backend


def scripted_run_config(
    pack_dir: str | Path,
    *,
    phase_config: PhaseConfig | None = None,
    likert_questions: tuple[str, ...] = (),
) -> RunConfig:
    """Config for fully scripted runs: per-pack backend and actor scripts live
    next to each pack as {id}.backend.json and {id}.actor.json."""
    pack_dir = Path(pack_dir)

    def backend_factory(pack: ScenarioPack) -> Backend:
        return ScriptedBackend.from_file(pack_dir / f"{pack.id}.backend.json")

    def actor_factory(pack: ScenarioPack) -> Actor:
        return ScriptedActor.from_file(pack_dir / f"{pack.id}.actor.json")

    return RunConfig(
        backend_factory=backend_factory,
        actor_factory=actor_factory,
        phase_config=phase_config or PhaseConfig(),
        likert_questions=likert_questions,
    )


def run_consultation(
    pack: ScenarioPack,
    actor: Actor,
    config: RunConfig,
    *,
    backend: Backend | None = None,
    store: OversightStore | None = None,
) -> ConsultationResult:
    """Drive one full consultation and note draft for *pack*.

    Returns the case in the note-drafted state; deterministic whenever the
    actor and backend are scripted. Errors are annotated with the pack id."""
    try:
        return _run_consultation(pack, actor, config, backend=backend, store=store)
    except CaseflowError as exc:
        exc.pack_id = pack.id  # type: ignore[attr-defined]
        raise


def _run_consultation(
    pack: ScenarioPack,
    actor: Actor,
    config: RunConfig,
    *,
    backend: Backend | None,
    store: OversightStore | None,
) -> ConsultationResult:
    backend = backend or config.backend_factory(pack)
    case_id = f"{config.case_id_prefix}{pack.id}"

    def forward(kind: str, payload: dict) -> None:
        if store is not None and kind == "turn_appended":
            store.record_session_event(case_id, AuditKind.TURN_APPENDED, payload)

    session = IntakeSession(
        case_id=case_id,
        backend=backend,
        classifier=config.classifier_factory(backend),
        reviser=config.reviser_factory(backend),
        config=config.phase_config,
        on_event=forward,
    )

    def actor_reply(clinician_text: str) -> str:
        try:
            return actor.reply(clinician_text)
        except CaseflowError as exc:
            exc.turn_index = len(session.transcript)  # type: ignore[attr-defined]
            raise

    utterance = actor.opening()
    for _ in range(config.max_dialogue_turns):
        turn = session.next_turn(utterance)
        if session.phase is Phase.CONCLUSION:
            break
        utterance = actor_reply(turn.text)
    else:
        raise CaseflowError(f"dialogue exceeded {config.max_dialogue_turns} turns")
    session.conclude(actor_reply)

    pipeline = SoapPipeline(
        backend=backend,
        message_classifier=config.classifier_factory(backend),
        config=config.pipeline_config,
    )
    bundle = pipeline.run(session.transcript)
    case = new_drafted_case(
        case_id,
        session.transcript,
        bundle.note,
        message_b_text=config.message_b_text,
    )
    violations = validate_note(case.working_note)
    if violations:
        raise CaseflowError(
            "pipeline produced an invalid note: " + "; ".join(str(v) for v in violations)
        )
    if store is not None:
        store.record_session_event(
            case_id, AuditKind.NOTE_DRAFTED, {"case_id": case_id, "note_sections": "complete"}
        )
    session_log = {
        "case_id": case_id,
        "pack_id": pack.id,
        "clinician_turns": [t.to_dict() for t in session.clinician_turns],
        "conclusion_roles": [t.role.value for t in session.conclusion_turns],
        "word_counts": bundle.word_counts,
        "message_advice_likert": (
            bundle.message_verdict.likert.value if bundle.message_verdict else None
        ),
        "message_shape": bundle.message_shape,
        "backend_requests": [list(record.key.as_tuple()) for record in backend.call_log],
    }
    return ConsultationResult(case=case, session_log=session_log, backend=backend)


@dataclass(frozen=True)
class BatchResult:
    results: list[tuple[str, EvalReport]]
    failures: list[tuple[str, str]]
    means: dict[str, float]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_batch(
    packs: Sequence[ScenarioPack],
    config: RunConfig,
    store: OversightStore,
    out_dir: str | Path | None = None,
) -> BatchResult:
    """Run every pack end to end: consult, enqueue for oversight, evaluate.

    Pack failures are collected without stopping the batch, and never corrupt
    other cases' artifacts."""
    out_path = Path(out_dir) if out_dir is not None else None
    if out_path is not None:
        (out_path / "cases").mkdir(parents=True, exist_ok=True)
        (out_path / "reports").mkdir(parents=True, exist_ok=True)
        (out_path / "session_logs").mkdir(parents=True, exist_ok=True)

    def run_one(pack: ScenarioPack) -> tuple[str, ConsultationResult, EvalReport]:
        actor = config.actor_factory(pack)
        result = run_consultation(pack, actor, config, store=store)
        store.enqueue(result.case)
        judge = AutoJudge(result.backend)
        report = evaluate_case(
            result.case,
            probable_dx=pack.ground_truth.probable_dx,
            golden_plan=pack.golden_plan.by_category(),
            red_flags=pack.red_flags,
            judge=judge,
            classifier=config.classifier_factory(result.backend),
            likert_questions=config.likert_questions,
        )
        return pack.id, result, report

    results: list[tuple[str, EvalReport]] = []
    failures: list[tuple[str, str]] = []
    outcomes: list[tuple[str, ConsultationResult, EvalReport] | Exception]
    if config.workers <= 1:
        outcomes = []
        for pack in packs:
            try:
                outcomes.append(run_one(pack))
            except Exception as exc:  # isolation: a bad pack must not sink the batch
                exc.pack_id = getattr(exc, "pack_id", pack.id)  # type: ignore[attr-defined]
                outcomes.append(exc)
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            futures = [(pack, pool.submit(run_one, pack)) for pack in packs]
            outcomes = []
            for pack, future in futures:
                try:
                    outcomes.append(future.result())
                except Exception as exc:
                    exc.pack_id = getattr(exc, "pack_id", pack.id)  # type: ignore[attr-defined]
                    outcomes.append(exc)

    for outcome in outcomes:
        if isinstance(outcome, Exception):
            failures.append((getattr(outcome, "pack_id", "?"), str(outcome)))
            continue
        pack_id, consultation, report = outcome
        results.append((consultation.case.case_id, report))
        if out_path is not None:
            case = store.get_case(consultation.case.case_id)
            (out_path / "cases" / f"{case.case_id}.json").write_text(
                case.serialize(), encoding="utf-8"
            )
            (out_path / "reports" / f"{case.case_id}.json").write_text(
                report.serialize(), encoding="utf-8"
            )
            (out_path / "session_logs" / f"{case.case_id}.json").write_text(
                canonical_dumps(consultation.session_log), encoding="utf-8"
            )

    means = batch_means([report for _, report in results])
    if out_path is not None:
        (out_path / "summary.csv").write_text(
            summary_csv([report for _, report in results]), encoding="utf-8"
        )
        (out_path / "batch_summary.json").write_text(
            canonical_dumps(
                {
                    "cases": [case_id for case_id, _ in results],
                    "failures": [{"pack_id": pid, "error": msg} for pid, msg in failures],
                    "means": means,
                }
            ),
            encoding="utf-8",
        )
    return BatchResult(results=results, failures=failures, means=means)
