"""Three-phase intake session: broad history taking, hypothesis refinement,
then a fixed three-step conclusion. One screened clinician turn per patient
turn; phase transitions come from a structured probe or the turn budget."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from caseflow.backend.base import Backend, CompletionRequest, RequestKey
from caseflow.backend.contracts import ChoiceContract, NonEmptyTextContract
from caseflow.backend.prompts import (
    CONFIRMATION_PROBE_PROMPT,
    DDX_UPDATE_PROMPT,
    SUMMARY_UPDATE_PROMPT,
    TRANSITION_PROBE_PROMPT,
    build_prompt,
    conclusion_step_prompt,
)
from caseflow.core.types import Phase, ScreeningRecord, Speaker, Transcript
from caseflow.dialogue.summary import DDX_CONTRACT, SUMMARY_CONTRACT, CandidateDdx, PatientSummary
from caseflow.errors import CaseflowError, SessionConcluded
from caseflow.guardrail.screening import AdviceClassifier, Reviser, screen_and_revise


class SufficiencyMode(Enum):
    MODEL_SIGNAL = "model_signal"
    TURN_BUDGET_ONLY = "turn_budget_only"


@dataclass(frozen=True)
class PhaseConfig:
    max_turns_intake: int = 20
    max_turns_ddx: int = 10
    sufficiency_mode: SufficiencyMode = SufficiencyMode.MODEL_SIGNAL

    def __post_init__(self):
        if self.max_turns_intake < 1 or self.max_turns_ddx < 1:
            raise ValueError("turn budgets must be >= 1")


class TransitionSignal(Enum):
    STAY = "stay"
    ADVANCE = "advance"


class TurnRole(Enum):
    QUESTION = "question"
    SUMMARY_CONFIRM = "summary_confirm"
    INVITE_QUESTIONS = "invite_questions"
    CLOSING = "closing"


@dataclass(frozen=True)
class ClinicianTurn:
    text: str
    phase: Phase
    summary: PatientSummary
    ddx: CandidateDdx | None
    role: TurnRole
    screening: ScreeningRecord
    index: int

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "phase": self.phase.value,
            "role": self.role.value,
            "index": self.index,
            "screening": self.screening.to_dict(),
        }


_SUFFICIENCY_CONTRACT = ChoiceContract(("SUFFICIENT", "INSUFFICIENT"))
_CONFIRMATION_CONTRACT = ChoiceContract(("CONFIRMED", "CORRECTION"))

EventCallback = Callable[[str, dict], None]


class IntakeSession:
    """One patient interview. Single-threaded: one in-flight turn at a time."""

    def __init__(
        self,
        case_id: str,
        backend: Backend,
        classifier: AdviceClassifier,
        reviser: Reviser,
        config: PhaseConfig | None = None,
        on_event: EventCallback | None = None,
    ):
        self.case_id = case_id
        self.backend = backend
        self.classifier = classifier
        self.reviser = reviser
        self.config = config or PhaseConfig()
        self.on_event = on_event
        self.transcript = Transcript()
        self.phase = Phase.INTAKE
        self.summary = PatientSummary()
        self.ddx: CandidateDdx | None = None
        self.concluded = False
        self.clinician_turns: list[ClinicianTurn] = []
        self.conclusion_turns: list[ClinicianTurn] = []
        self._phase_counts = {Phase.INTAKE: 0, Phase.DDX_VALIDATION: 0, Phase.CONCLUSION: 0}
        self._correction_used = False
        self._emit("intake_started", {"case_id": case_id})

    # -- internals -------------------------------------------------------

    def _emit(self, kind: str, payload: dict) -> None:
        if self.on_event is not None:
            self.on_event(kind, payload)

    @property
    def _seq(self) -> int:
        """Sequence number of the next clinician turn, used in request keys."""
        return len(self.clinician_turns)

    def _append_patient(self, text: str) -> None:
        self.transcript = self.transcript.append(Speaker.PATIENT, text)
        self._emit("turn_appended", {"case_id": self.case_id,
                                     "turn": self.transcript.turns[-1].to_dict()})

    def _complete(self, request: CompletionRequest):
        try:
            return self.backend.complete(request)
        except CaseflowError as exc:
            exc.turn_index = self._seq  # type: ignore[attr-defined]
            raise

    def _refresh_summary(self) -> None:
        result = self._complete(
            CompletionRequest(
                system_prompt=SUMMARY_UPDATE_PROMPT,
                messages=(("user", self.transcript.render_text() or "(no dialogue yet)"),),
                key=RequestKey("summary", self.phase.value, self._seq),
                output_contract=SUMMARY_CONTRACT,
            )
        )
        self.summary = PatientSummary.from_dict(result.value)

    def _refresh_ddx(self) -> None:
        result = self._complete(
            CompletionRequest(
                system_prompt=DDX_UPDATE_PROMPT,
                messages=(
                    ("user", self.transcript.render_text()),
                    ("user", "Current summary:\n" + (self.summary.serialize() or "(empty)")),
                ),
                key=RequestKey("ddx", self.phase.value, self._seq),
                output_contract=DDX_CONTRACT,
            )
        )
        self.ddx = CandidateDdx.from_dict(result.value)

    def _screened_turn(self, system_prompt: str, role: TurnRole) -> ClinicianTurn:
        seq = self._seq
        result = self._complete(
            CompletionRequest(
                system_prompt=system_prompt,
                messages=(("user", self.transcript.render_text() or "(consultation opening)"),),
                key=RequestKey("dialogue", self.phase.value, seq),
                output_contract=NonEmptyTextContract(),
            )
        )
        outcome = screen_and_revise(
            result.text,
            self.transcript,
            self.classifier,
            self.reviser,
            key_stage=f"turn{seq}",
        )
        self.transcript = self.transcript.append(
            Speaker.CLINICIAN, outcome.final_text, phase=self.phase, screening=outcome.record
        )
        turn = ClinicianTurn(
            text=outcome.final_text,
            phase=self.phase,
            summary=self.summary,
            ddx=self.ddx if self.phase is Phase.DDX_VALIDATION else None,
            role=role,
            screening=outcome.record,
            index=self.transcript.turns[-1].index,
        )
        self.clinician_turns.append(turn)
        self._phase_counts[self.phase] += 1
        if role is not TurnRole.QUESTION:
            self.conclusion_turns.append(turn)
        self._emit("turn_appended", {"case_id": self.case_id,
                                     "turn": self.transcript.turns[-1].to_dict()})
        return turn

    def _budget_exhausted(self) -> bool:
        if self.phase is Phase.INTAKE:
            return self._phase_counts[Phase.INTAKE] >= self.config.max_turns_intake
        if self.phase is Phase.DDX_VALIDATION:
            return self._phase_counts[Phase.DDX_VALIDATION] >= self.config.max_turns_ddx
        return False

    # -- public operations -------------------------------------------------

    def probe_transition(self) -> TransitionSignal:
        """Decide whether the current phase has gathered enough to move on."""
        if self.concluded:
            raise SessionConcluded("session already concluded")
        if self.phase is Phase.CONCLUSION:
            raise ValueError("no transition to probe in the conclusion phase")
        if self._budget_exhausted():
            return TransitionSignal.ADVANCE
        if self.config.sufficiency_mode is SufficiencyMode.TURN_BUDGET_ONLY:
            return TransitionSignal.STAY
        if self.phase is Phase.INTAKE:
            result = self._complete(
                CompletionRequest(
                    system_prompt=TRANSITION_PROBE_PROMPT,
                    messages=(("user", self.transcript.render_text() or "(no dialogue yet)"),),
                    key=RequestKey("probe", self.phase.value, self._seq),
                    output_contract=_SUFFICIENCY_CONTRACT,
                )
            )
            return TransitionSignal.ADVANCE if result.value == "SUFFICIENT" else TransitionSignal.STAY
        if self.ddx is None:
            self._refresh_ddx()
        assert self.ddx is not None
        return TransitionSignal.ADVANCE if self.ddx.refined() else TransitionSignal.STAY

    def next_turn(self, patient_utterance: str) -> ClinicianTurn:
        """Consume one patient utterance and produce the screened reply.

        The summary is refreshed before generation; in the refinement phase the
        candidate differential is refreshed too. When the current phase has
        enough information (or its budget is spent) the session advances first,
        so the reply is generated under the new phase's prompt."""
        if self.concluded:
            raise SessionConcluded("session already concluded")
        if self.phase is Phase.CONCLUSION:
            raise SessionConcluded("session is concluding; use conclude()")
        self._append_patient(patient_utterance)
        self._refresh_summary()

        if self.phase is Phase.INTAKE:
            if self._phase_counts[Phase.INTAKE] > 0 and self.probe_transition() is TransitionSignal.ADVANCE:
                self.phase = Phase.DDX_VALIDATION
        if self.phase is Phase.DDX_VALIDATION:
            self._refresh_ddx()
            if self._phase_counts[Phase.DDX_VALIDATION] > 0 and self.probe_transition() is TransitionSignal.ADVANCE:
                self.phase = Phase.CONCLUSION

        if self.phase is Phase.CONCLUSION:
            return self._screened_turn(
                conclusion_step_prompt("summary_confirm", self.summary),
                TurnRole.SUMMARY_CONFIRM,
            )
        ddx = self.ddx if self.phase is Phase.DDX_VALIDATION else None
        return self._screened_turn(build_prompt(self.phase, self.summary, ddx), TurnRole.QUESTION)

    def conclude(self, get_patient_reply: Callable[[str], str]) -> list[ClinicianTurn]:
        """Run the three-step wrap-up and mark the session concluded.

        Steps: (1) summarize and ask for confirmation (re-issued at most once
        if the patient corrects something), (2) invite remaining questions,
        (3) close, stating the transcript will be securely shared with an
        overseeing physician. Every turn is screened like any other."""
        if self.concluded:
            raise SessionConcluded("session already concluded")
        if self.phase is not Phase.CONCLUSION:
            raise ValueError("conclude() requires the session to be in the conclusion phase")

        if not self.conclusion_turns:
            self._screened_turn(
                conclusion_step_prompt("summary_confirm", self.summary),
                TurnRole.SUMMARY_CONFIRM,
            )
        reply = get_patient_reply(self.conclusion_turns[-1].text)
        self._append_patient(reply)
        confirmation = self._complete(
            CompletionRequest(
                system_prompt=CONFIRMATION_PROBE_PROMPT,
                messages=(("user", f"Patient reply:\n{reply}"),),
                key=RequestKey("confirm", Phase.CONCLUSION.value, self._seq),
                output_contract=_CONFIRMATION_CONTRACT,
            )
        )
        if confirmation.value == "CORRECTION" and not self._correction_used:
            self._correction_used = True
            self._screened_turn(
                conclusion_step_prompt("summary_confirm", self.summary, correction=reply),
                TurnRole.SUMMARY_CONFIRM,
            )
            reply = get_patient_reply(self.conclusion_turns[-1].text)
            self._append_patient(reply)

        invite = self._screened_turn(
            conclusion_step_prompt("invite_questions", self.summary),
            TurnRole.INVITE_QUESTIONS,
        )
        reply = get_patient_reply(invite.text)
        self._append_patient(reply)

        self._screened_turn(
            conclusion_step_prompt("closing", self.summary),
            TurnRole.CLOSING,
        )
        self.concluded = True
        self._emit("intake_completed", {"case_id": self.case_id})
        return list(self.conclusion_turns)
