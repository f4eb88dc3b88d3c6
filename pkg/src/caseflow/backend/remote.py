"""Remote chat-completion backend over a minimal HTTP contract.

Request body: {"model": ..., "system": ..., "messages": [{"role": ..., "text": ...}]}
Response body: {"text": ...}. Credentials come from a named environment
variable and are sent as a bearer token. No streaming, no logprobs.
"""

from __future__ import annotations

import os

import requests

from caseflow.backend.base import Backend, CompletionRequest
from caseflow.errors import TransportError

DEFAULT_TIMEOUT_SECONDS = 60.0


class RemoteHttpBackend(Backend):
    def __init__(
        self,
        endpoint: str,
        model_name: str,
        auth_env_var: str = "",
        timeout_seconds: float = DEFAULT_TIMEOUT_SECONDS,
    ):
        super().__init__()
        self.endpoint = endpoint
        self.model_name = model_name
        self.auth_env_var = auth_env_var
        self.timeout_seconds = timeout_seconds

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.auth_env_var:
            token = os.environ.get(self.auth_env_var, "")
            if not token:
                raise TransportError(f"credential env var {self.auth_env_var} is not set")
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def raw_complete(self, request: CompletionRequest, attempt: int) -> str:
        body = {
            "model": self.model_name,
            "system": request.system_prompt,
            "messages": [{"role": role, "text": text} for role, text in request.messages],
        }
        if request.seed is not None:
            body["seed"] = request.seed
        try:
            response = requests.post(
                self.endpoint, json=body, headers=self._headers(), timeout=self.timeout_seconds
            )
        except requests.RequestException as exc:
            raise TransportError(f"completion endpoint unreachable: {exc}") from exc
        if response.status_code != 200:
            raise TransportError(
                f"completion endpoint returned {response.status_code}: {response.text[:200]}"
            )
        try:
            payload = response.json()
            return payload["text"]
        except (ValueError, KeyError) as exc:
            raise TransportError(f"malformed completion response: {exc}") from exc
