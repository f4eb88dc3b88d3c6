"""Service configuration: one JSON file plus environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

from caseflow.core.case import DEFAULT_MESSAGE_B_TEXT
from caseflow.oversight.store import DEFAULT_LEASE_MINUTES

ENV_PREFIX = "CASEFLOW_"


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8321
    lease_minutes: float = DEFAULT_LEASE_MINUTES
    storage_dir: str | None = None
    message_b_text: str = DEFAULT_MESSAGE_B_TEXT

    @classmethod
    def load(cls, path: str | Path | None = None) -> "ServiceConfig":
        values: dict = {}
        if path is not None:
            values.update(json.loads(Path(path).read_text(encoding="utf-8")))
        if os.environ.get(ENV_PREFIX + "PORT"):
            values["port"] = int(os.environ[ENV_PREFIX + "PORT"])
        if os.environ.get(ENV_PREFIX + "LEASE_MINUTES"):
            values["lease_minutes"] = float(os.environ[ENV_PREFIX + "LEASE_MINUTES"])
        if os.environ.get(ENV_PREFIX + "STORAGE_DIR"):
            values["storage_dir"] = os.environ[ENV_PREFIX + "STORAGE_DIR"]
        if os.environ.get(ENV_PREFIX + "MESSAGE_B_TEXT"):
            values["message_b_text"] = os.environ[ENV_PREFIX + "MESSAGE_B_TEXT"]
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in values.items() if k in known})
