"""HTTP surface of the oversight store, consumed by the review cockpit.

All response bodies are in the canonical key-ordered format. The reviewer
identifies via the X-Reviewer-Id header; there is no further authentication.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, Header, Request, Response
from fastapi.responses import JSONResponse

from caseflow.canonical import canonical_dumps
from caseflow.core.case import DecisionKind, OversightCase
from caseflow.core.types import SignificanceLikert
from caseflow.errors import (
    EditMismatch,
    ImmutableSection,
    InvalidState,
    NotLeaseHolder,
    StaleEdit,
    UnknownCase,
)
from caseflow.oversight.store import InvalidEdit, OversightStore

ERROR_STATUS = {
    UnknownCase: (404, "unknown_case"),
    NotLeaseHolder: (403, "not_lease_holder"),
    ImmutableSection: (422, "immutable_section"),
    InvalidEdit: (422, "invalid_edit"),
    StaleEdit: (409, "stale_edit"),
    EditMismatch: (409, "edit_mismatch"),
    InvalidState: (409, "invalid_state"),
}


def _canonical_response(payload: Any, status_code: int = 200) -> Response:
    return Response(
        content=canonical_dumps(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _queue_entry(position: int, case: OversightCase) -> dict[str, Any]:
    return {
        "position": position,
        "case_id": case.case_id,
        "state": case.state.to_dict(),
        "chief_complaint": case.working_note.chief_complaint,
    }


def create_app(store: OversightStore) -> FastAPI:
    app = FastAPI(title="caseflow oversight service", docs_url=None, redoc_url=None)

    @app.exception_handler(Exception)
    async def handle_domain_error(request: Request, exc: Exception):
        for error_type, (status, code) in ERROR_STATUS.items():
            if isinstance(exc, error_type):
                return JSONResponse(
                    status_code=status, content={"error": code, "detail": str(exc)}
                )
        if isinstance(exc, (ValueError, KeyError)):
            return JSONResponse(
                status_code=422, content={"error": "bad_request", "detail": str(exc)}
            )
        raise exc

    @app.post("/cases")
    async def ingest_case(body: dict) -> Response:
        case = OversightCase.from_dict(body)
        case_id = store.enqueue(case)
        return _canonical_response({"case_id": case_id}, status_code=201)

    @app.get("/queue")
    async def get_queue() -> Response:
        entries = [_queue_entry(i, case) for i, case in enumerate(store.queue())]
        return _canonical_response({"cases": entries})

    @app.post("/cases/{case_id}/claim")
    async def claim_case(case_id: str, x_reviewer_id: str = Header(...)) -> Response:
        case = store.claim_case(case_id, x_reviewer_id)
        return _canonical_response(case.to_dict())

    @app.post("/cases/{case_id}/edits")
    async def post_edit(case_id: str, body: dict, x_reviewer_id: str = Header(...)) -> Response:
        case = store.apply_edit(
            case_id,
            x_reviewer_id,
            section_name=body["section"],
            before=body["before"],
            after=body["after"],
        )
        return _canonical_response(case.to_dict())

    @app.post("/cases/{case_id}/significance")
    async def post_significance(case_id: str, body: dict,
                                x_reviewer_id: str = Header(...)) -> Response:
        case = store.rate_significance(
            case_id, x_reviewer_id, body["section"], SignificanceLikert(body["value"])
        )
        return _canonical_response(case.to_dict())

    @app.post("/cases/{case_id}/decision")
    async def post_decision(case_id: str, body: dict,
                            x_reviewer_id: str = Header(...)) -> Response:
        decision = store.decide(case_id, x_reviewer_id, DecisionKind(body["kind"]))
        case = store.get_case(case_id)
        return _canonical_response(
            {"decision": decision.to_dict(), "outbound_message": case.outbound_message}
        )

    @app.get("/cases/{case_id}")
    async def get_case(case_id: str) -> Response:
        return _canonical_response(store.get_case(case_id).to_dict())

    @app.get("/cases/{case_id}/audit")
    async def get_audit(case_id: str) -> Response:
        store.get_case(case_id)  # 404 for unknown ids
        events = [e.to_dict() for e in store.audit_for_case(case_id)]
        return _canonical_response({"events": events})

    return app
