"""Asynchronous oversight backend: queue, leases, edits, decisions, audit."""

from caseflow.oversight.audit import AuditEvent, AuditKind, AuditLog, read_log
from caseflow.oversight.config import ServiceConfig
from caseflow.oversight.store import (
    DEFAULT_LEASE_MINUTES,
    InvalidEdit,
    OversightStore,
    TickClock,
    replay,
    utc_now,
)

__all__ = [
    "AuditEvent",
    "AuditKind",
    "AuditLog",
    "DEFAULT_LEASE_MINUTES",
    "InvalidEdit",
    "OversightStore",
    "ServiceConfig",
    "TickClock",
    "read_log",
    "replay",
    "utc_now",
]
