"""Chat-completion HTTP client plus the oracles backed by it.

The wire format is the common one: POST {base_url}/chat/completions with
bearer auth, fields `model`, `messages`, `temperature`, `n`; proposals are
read from `choices[*].message.content`. Any compatible provider or local
stub works via AXIOMFORGE_BASE_URL.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

import requests

from ..distance import Choice, DistanceOracle, OracleUnavailable
from ..pddl import print_canonical
from .context import ProposalContext
from .extract import extract_candidates, filter_linkable
from .oracles import ProposalOracle
from .prompts import (
    SYSTEM_PROMPT,
    build_prompt,
    comparison_prompt,
    crossover_prompt,
    mutation_prompt,
)

DEFAULT_BASE_URL = "https://api.openai.com/v1"
DEFAULT_MODEL = "gpt-4o-mini-2024-07-18"
API_KEY_ENV_VAR = "AXIOMFORGE_API_KEY"

_BACKOFF_BASE_S = 0.5


class AuthError(Exception):
    """Missing or rejected API credentials."""


@dataclass(frozen=True)
class OracleClientConfig:
    base_url: str = DEFAULT_BASE_URL
    model: str = DEFAULT_MODEL
    api_key_env_var: str = API_KEY_ENV_VAR
    temperature: float = 1.0
    samples: int = 16
    timeout_ms: int = 30_000
    max_retries: int = 3

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "OracleClientConfig":
        env = {
            "base_url": os.environ.get("AXIOMFORGE_BASE_URL", DEFAULT_BASE_URL),
            "model": os.environ.get("AXIOMFORGE_MODEL", DEFAULT_MODEL),
        }
        env.update(overrides)
        return cls(**env)


def _default_transport(url: str, headers: dict, payload: dict, timeout_s: float):
    resp = requests.post(url, headers=headers, json=payload, timeout=timeout_s)
    try:
        body = resp.json()
    except ValueError:
        body = {}
    return resp.status_code, body


class HttpChatClient:
    """Minimal chat-completion client with retry and exponential backoff.

    `transport` is injectable for tests: a callable of (url, headers,
    payload, timeout_s) returning (status_code, body_dict). Transport
    errors and 5xx responses are retried up to cfg.max_retries; 401/403
    raise AuthError immediately.
    """

    def __init__(self, cfg: OracleClientConfig, transport=None):
        self.cfg = cfg
        self.transport = transport or _default_transport
        self.transport_calls = 0

    def complete(self, system: str, user: str, n: int = 1) -> list:
        api_key = os.environ.get(self.cfg.api_key_env_var)
        if not api_key:
            raise AuthError(
                f"set {self.cfg.api_key_env_var} before using the HTTP oracle"
            )
        url = self.cfg.base_url.rstrip("/") + "/chat/completions"
        headers = {"Authorization": f"Bearer {api_key}"}
        payload = {
            "model": self.cfg.model,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
            "temperature": self.cfg.temperature,
            "n": n,
        }
        last_error = "no attempt made"
        for attempt in range(self.cfg.max_retries + 1):
            if attempt:
                time.sleep(_BACKOFF_BASE_S * 2 ** (attempt - 1))
            self.transport_calls += 1
            try:
                status, body = self.transport(url, headers, payload, self.cfg.timeout_ms / 1000.0)
            except requests.RequestException as exc:
                last_error = f"transport error: {exc}"
                continue
            if status in (401, 403):
                raise AuthError(f"oracle endpoint rejected credentials ({status})")
            if status >= 500:
                last_error = f"server error {status}"
                continue
            if status != 200:
                raise OracleUnavailable(f"unexpected status {status}")
            choices = body.get("choices", [])
            return [c.get("message", {}).get("content", "") for c in choices]
        raise OracleUnavailable(last_error)


def http_propose(
    cfg: OracleClientConfig, ctx: ProposalContext, k: int, transport=None
) -> list:
    """One proposal round over HTTP: prompt, sample, extract, validate.

    The cfg.samples decodes are pooled in choice order and deduplicated by
    canonical text before the first k linkable candidates are returned.
    """
    client = HttpChatClient(cfg, transport)
    contents = client.complete(SYSTEM_PROMPT, build_prompt(ctx), n=cfg.samples)
    domains = []
    for content in contents:
        domains.extend(extract_candidates(content, k).domains)
    return filter_linkable(domains, ctx.problem, k)


class HttpProposalOracle(ProposalOracle):
    """ProposalOracle over the chat client; one request per invocation."""

    def __init__(self, cfg: OracleClientConfig, transport=None):
        super().__init__()
        self.client = HttpChatClient(cfg, transport)

    @property
    def transport_calls(self) -> int:
        return self.client.transport_calls

    def propose(self, ctx: ProposalContext, k: int) -> list:
        self.calls += 1
        contents = self.client.complete(SYSTEM_PROMPT, build_prompt(ctx), n=self.client.cfg.samples)
        texts = []
        for content in contents:
            texts.extend(print_canonical(d) for d in extract_candidates(content, k).domains)
        return texts[:k]

    def _one_block(self, prompt: str, fallback: str) -> str:
        contents = self.client.complete(SYSTEM_PROMPT, prompt, n=1)
        for content in contents:
            result = extract_candidates(content, 1)
            if result.domains:
                return print_canonical(result.domains[0])
        return fallback

    def crossover(self, ctx: ProposalContext, parent_a: str, parent_b: str) -> str:
        self.calls += 1
        return self._one_block(crossover_prompt(ctx, parent_a, parent_b), parent_a)

    def mutate(self, ctx: ProposalContext, candidate: str) -> str:
        self.calls += 1
        return self._one_block(mutation_prompt(ctx, candidate), candidate)


class HttpDistanceOracle(DistanceOracle):
    """Semantic closeness judged by the chat model, majority-voted upstream."""

    def __init__(self, cfg: OracleClientConfig, transport=None):
        super().__init__(samples_per_query=cfg.samples)
        self.client = HttpChatClient(cfg, transport)

    @property
    def transport_calls(self) -> int:
        return self.client.transport_calls

    def _sample(self, reference: str, a: str, b: str) -> Choice:
        contents = self.client.complete(
            "You judge how close modified game rules stay to a reference."
            " Answer with the single letter A or B.",
            comparison_prompt(reference, a, b),
            n=1,
        )
        text = contents[0].strip().upper() if contents else ""
        for ch in text:
            if ch == "A":
                return Choice.A
            if ch == "B":
                return Choice.B
        return Choice.A  # unparseable reply counts as "A"; voting smooths it
