"""Command-line entry points: run batches, serve the oversight API, draft a
note from a stored transcript, screen a transcript, and evaluate a case."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from caseflow.autoeval.judges import AutoJudge
from caseflow.autoeval.report import evaluate_case
from caseflow.backend.remote import RemoteHttpBackend
from caseflow.backend.scripted import ScriptedBackend
from caseflow.canonical import canonical_dumps, canonical_loads
from caseflow.core.case import OversightCase
from caseflow.core.types import Transcript
from caseflow.guardrail.classifier import ModelAdviceClassifier, RuleAdviceClassifier
from caseflow.guardrail.screening import ModelReviser, RedactionReviser
from caseflow.oversight.config import ServiceConfig
from caseflow.oversight.store import OversightStore, TickClock
from caseflow.scenarios.actor import ModelActor
from caseflow.scenarios.pack import load_pack, load_pack_dir
from caseflow.scenarios.runner import RunConfig, run_batch, scripted_run_config
from caseflow.soap.pipeline import SoapPipeline


def _add_remote_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--endpoint", help="remote completion endpoint URL")
    parser.add_argument("--model", default="default", help="remote model name")
    parser.add_argument("--auth-env", default="", help="env var holding the API credential")


def _remote_backend(args: argparse.Namespace) -> RemoteHttpBackend:
    if not args.endpoint:
        raise SystemExit("--endpoint is required with --backend remote")
    return RemoteHttpBackend(args.endpoint, args.model, args.auth_env)


def cmd_run(args: argparse.Namespace) -> int:
    packs = load_pack_dir(args.packs)
    if not packs:
        print(f"no packs found in {args.packs}", file=sys.stderr)
        return 2
    if args.backend == "scripted":
        config = scripted_run_config(args.packs, likert_questions=tuple(args.likert))
        store = OversightStore(storage_dir=Path(args.out) / "store", clock=TickClock())
    else:
        def backend_factory(pack):
            return _remote_backend(args)

        def actor_factory(pack):
            return ModelActor(
                backend=_remote_backend(args),
                persona_prompt=canonical_dumps(pack.patient_profile.to_dict()),
            )

        config = RunConfig(
            backend_factory=backend_factory,
            actor_factory=actor_factory,
            classifier_factory=lambda backend: ModelAdviceClassifier(backend),
            reviser_factory=lambda backend: ModelReviser(backend),
            likert_questions=tuple(args.likert),
            workers=args.workers,
        )
        store = OversightStore(storage_dir=Path(args.out) / "store")
    config.workers = args.workers
    result = run_batch(packs, config, store, out_dir=args.out)
    for case_id, report in result.results:
        print(f"{case_id}: top1={report.top1_correct} "
              f"red_flags={report.red_flag_coverage:.2f}")
    for pack_id, error in result.failures:
        print(f"FAILED {pack_id}: {error}", file=sys.stderr)
    print(f"{len(result.results)} case(s), {len(result.failures)} failure(s) -> {args.out}")
    return 0 if result.ok else 1


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from caseflow.oversight.api import create_app

    config = ServiceConfig.load(args.config)
    storage = args.storage or config.storage_dir
    store = OversightStore(storage_dir=storage, lease_minutes=config.lease_minutes)
    app = create_app(store)
    port = args.port or config.port
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def cmd_note(args: argparse.Namespace) -> int:
    transcript = Transcript.from_dict(
        canonical_loads(Path(args.transcript).read_text(encoding="utf-8"))
    )
    if args.backend == "scripted":
        if not args.script:
            raise SystemExit("--script is required with --backend scripted")
        backend = ScriptedBackend.from_file(args.script)
    else:
        backend = _remote_backend(args)
    pipeline = SoapPipeline(backend, message_classifier=RuleAdviceClassifier())
    bundle = pipeline.run(transcript)
    output = bundle.note.serialize()
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        print(output, end="")
    return 0


def cmd_screen(args: argparse.Namespace) -> int:
    transcript = Transcript.from_dict(
        canonical_loads(Path(args.transcript).read_text(encoding="utf-8"))
    )
    classifier = RuleAdviceClassifier()
    worst = 1
    for turn in transcript.clinician_turns():
        verdict = classifier.classify(turn.text, transcript)
        worst = max(worst, verdict.likert.value)
        print(f"turn {turn.index}: {verdict.likert.value} ({verdict.rationale})")
    return 0 if worst <= 2 else 1


def cmd_eval(args: argparse.Namespace) -> int:
    case = OversightCase.deserialize(Path(args.case).read_text(encoding="utf-8"))
    pack = load_pack(args.pack)
    backend = (
        ScriptedBackend.from_file(args.script) if args.script else _remote_backend(args)
    )
    judge = AutoJudge(backend)
    report = evaluate_case(
        case,
        probable_dx=pack.ground_truth.probable_dx,
        golden_plan=pack.golden_plan.by_category(),
        red_flags=pack.red_flags,
        judge=judge,
        classifier=RuleAdviceClassifier(),
        likert_questions=tuple(args.likert),
        use_working_note=args.edited,
    )
    output = report.serialize()
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        print(output, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="caseflow")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run scenario packs end to end")
    p_run.add_argument("--packs", required=True)
    p_run.add_argument("--backend", choices=("scripted", "remote"), default="scripted")
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--workers", type=int, default=1)
    p_run.add_argument("--likert", action="append", default=[],
                       help="rubric question id to rate per case (repeatable)")
    _add_remote_args(p_run)
    p_run.set_defaults(func=cmd_run)

    p_serve = sub.add_parser("serve", help="serve the oversight HTTP API")
    p_serve.add_argument("--storage", default=None)
    p_serve.add_argument("--config", default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.set_defaults(func=cmd_serve)

    p_note = sub.add_parser("note", help="draft a note from a stored transcript")
    p_note.add_argument("--transcript", required=True)
    p_note.add_argument("--backend", choices=("scripted", "remote"), default="scripted")
    p_note.add_argument("--script", default=None)
    p_note.add_argument("--out", default=None)
    _add_remote_args(p_note)
    p_note.set_defaults(func=cmd_note)

    p_screen = sub.add_parser("screen", help="emit per-turn advice verdicts")
    p_screen.add_argument("--transcript", required=True)
    p_screen.set_defaults(func=cmd_screen)

    p_eval = sub.add_parser("eval", help="evaluate a stored case against a pack")
    p_eval.add_argument("--case", required=True)
    p_eval.add_argument("--pack", required=True)
    p_eval.add_argument("--out", default=None)
    p_eval.add_argument("--script", default=None, help="scripted judge responses")
    p_eval.add_argument("--edited", action="store_true",
                        help="score the reviewer-edited note instead of the draft")
    p_eval.add_argument("--likert", action="append", default=[])
    _add_remote_args(p_eval)
    p_eval.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
