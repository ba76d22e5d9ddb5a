import time

import pytest
import requests

from axiomforge.distance import Choice, OracleUnavailable
from axiomforge.proposer import (
    AuthError,
    HttpChatClient,
    HttpDistanceOracle,
    HttpProposalOracle,
    OracleClientConfig,
    ProposalContext,
    http_propose,
)
from conftest import StubChatServer

GOOD_A = """\
(define (domain blocksworld)
  (:requirements :strips)
  (:predicates (clear ?x) (on-table ?x) (arm-empty) (holding ?x) (on ?x ?y))
  (:action hover
    :parameters (?x)
    :precondition (holding ?x)
    :effect (and (clear ?x) (arm-empty) (not (holding ?x)))))
"""
GOOD_B = GOOD_A.replace("hover", "drift")
BROKEN = "(define (domain blocksworld) (:action"

_chat_body = StubChatServer.chat_body


@pytest.fixture()
def api_key(monkeypatch):
    monkeypatch.setenv("AXIOMFORGE_API_KEY", "test-key")


@pytest.fixture()
def no_sleep(monkeypatch):
    sleeps = []
    monkeypatch.setattr(time, "sleep", sleeps.append)
    return sleeps


def _cfg(state, **kw):
    defaults = dict(base_url=state.base_url, samples=1, max_retries=2, timeout_ms=5000)
    defaults.update(kw)
    return OracleClientConfig(**defaults)


def test_propose_extracts_stub_domains(stub_server, api_key, blocksworld, flagship):
    stub_server.push(200, _chat_body(f"one:\n```pddl\n{GOOD_A}```", f"two:\n```pddl\n{GOOD_B}```"))
    ctx = ProposalContext(blocksworld, flagship, 6, 4)
    candidates = http_propose(_cfg(stub_server), ctx, 4)
    assert [a.name for d in candidates for a in d.actions if a.name in ("hover", "drift")] == [
        "hover",
        "drift",
    ]
    sent = stub_server.requests[0]
    assert sent["model"] == "gpt-4o-mini-2024-07-18"
    assert sent["n"] == 1
    assert sent["messages"][0]["role"] == "system"


def test_malformed_blocks_dropped(stub_server, api_key, blocksworld, flagship):
    stub_server.push(200, _chat_body(f"```pddl\n{BROKEN}\n```\n```pddl\n{GOOD_A}```"))
    ctx = ProposalContext(blocksworld, flagship, 6, 4)
    candidates = http_propose(_cfg(stub_server), ctx, 4)
    assert len(candidates) == 1


def test_stub_run_is_reproducible(stub_server, api_key, blocksworld, flagship):
    from axiomforge.pddl import print_canonical

    ctx = ProposalContext(blocksworld, flagship, 6, 4)
    results = []
    for _ in range(2):
        stub_server.push(200, _chat_body(f"```pddl\n{GOOD_A}```", f"```pddl\n{GOOD_B}```"))
        results.append([print_canonical(d) for d in http_propose(_cfg(stub_server), ctx, 4)])
    assert results[0] == results[1]


def test_server_errors_exhaust_retries(stub_server, api_key, no_sleep, blocksworld, flagship):
    for _ in range(3):
        stub_server.push(500, {"error": "boom"})
    ctx = ProposalContext(blocksworld, flagship, 6, 4)
    with pytest.raises(OracleUnavailable):
        http_propose(_cfg(stub_server, max_retries=2), ctx, 2)
    assert len(stub_server.requests) == 3  # initial try + 2 retries
    assert no_sleep == [0.5, 1.0]  # exponential backoff


def test_recovery_after_one_500(stub_server, api_key, no_sleep, blocksworld, flagship):
    stub_server.push(500, {})
    stub_server.push(200, _chat_body(f"```pddl\n{GOOD_A}```"))
    ctx = ProposalContext(blocksworld, flagship, 6, 4)
    assert len(http_propose(_cfg(stub_server), ctx, 2)) == 1
    assert no_sleep == [0.5]


def test_auth_error_on_401(stub_server, api_key, blocksworld, flagship):
    stub_server.push(401, {})
    ctx = ProposalContext(blocksworld, flagship, 6, 4)
    with pytest.raises(AuthError):
        http_propose(_cfg(stub_server), ctx, 2)
    assert len(stub_server.requests) == 1  # no retry on auth failures


def test_missing_api_key_fails_before_any_request(monkeypatch, stub_server, blocksworld, flagship):
    monkeypatch.delenv("AXIOMFORGE_API_KEY", raising=False)
    ctx = ProposalContext(blocksworld, flagship, 6, 4)
    with pytest.raises(AuthError):
        http_propose(_cfg(stub_server), ctx, 2)
    assert stub_server.requests == []


def test_transport_exception_retries(monkeypatch, api_key, no_sleep):
    calls = {"n": 0}

    def failing_transport(url, headers, payload, timeout):
        calls["n"] += 1
        raise requests.ConnectionError("refused")

    client = HttpChatClient(OracleClientConfig(max_retries=1), transport=failing_transport)
    with pytest.raises(OracleUnavailable):
        client.complete("sys", "user")
    assert calls["n"] == 2
    assert client.transport_calls == 2


def test_distance_oracle_parses_choice(stub_server, api_key):
    stub_server.push(200, _chat_body("B"))
    oracle = HttpDistanceOracle(_cfg(stub_server, samples=1))
    assert oracle._sample("ref", "x", "y") is Choice.B
    stub_server.push(200, _chat_body("  answer: A"))
    assert oracle._sample("ref", "x", "y") is Choice.A
    assert oracle.transport_calls == 2


def test_proposal_oracle_crossover_falls_back(stub_server, api_key, blocksworld, flagship):
    stub_server.push(200, _chat_body("no code block at all"))
    oracle = HttpProposalOracle(_cfg(stub_server))
    ctx = ProposalContext(blocksworld, flagship, 6, 4)
    assert oracle.crossover(ctx, "parent-a-text", "parent-b-text") == "parent-a-text"
    assert oracle.calls == 1
