"""Proposal oracle interface and the deterministic scripted implementation."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable

from ..pddl import DomainAst, PddlError, parse_domain
from ..corpus import variants
from .context import ProposalContext
from .extract import filter_linkable


class NoScriptMatch(Exception):
    """No script entry matched the proposal context."""


class ProposalOracle(ABC):
    """Source of candidate rule edits; also crossover/mutation for the GA.

    `calls` counts oracle invocations so search results can account for
    oracle usage regardless of the backing transport.
    """

    def __init__(self) -> None:
        self.calls = 0

    @abstractmethod
    def propose(self, ctx: ProposalContext, k: int) -> list:
        """Up to k candidate domain texts, best guesses first."""

    @abstractmethod
    def crossover(self, ctx: ProposalContext, parent_a: str, parent_b: str) -> str:
        ...

    @abstractmethod
    def mutate(self, ctx: ProposalContext, candidate: str) -> str:
        ...


@dataclass(frozen=True)
class ScriptEntry:
    trigger: Callable
    responses: tuple


class ScriptedOracle(ProposalOracle):
    """Replays canned domain texts; fully deterministic, no network.

    The first entry whose trigger accepts the context supplies the
    responses. Crossover defaults to returning parent A and mutation to the
    identity, keeping genetic runs reproducible.
    """

    def __init__(self, entries, crossover_fn=None, mutate_fn=None):
        super().__init__()
        self.entries = tuple(entries)
        self._crossover_fn = crossover_fn
        self._mutate_fn = mutate_fn

    def propose(self, ctx: ProposalContext, k: int) -> list:
        self.calls += 1
        for entry in self.entries:
            if entry.trigger(ctx):
                return list(entry.responses[:k])
        raise NoScriptMatch(ctx.domain.name)

    def crossover(self, ctx: ProposalContext, parent_a: str, parent_b: str) -> str:
        self.calls += 1
        if self._crossover_fn is not None:
            return self._crossover_fn(ctx, parent_a, parent_b)
        return parent_a

    def mutate(self, ctx: ProposalContext, candidate: str) -> str:
        self.calls += 1
        if self._mutate_fn is not None:
            return self._mutate_fn(ctx, candidate)
        return candidate


def builtin_script() -> ScriptedOracle:
    """Ships the blocksworld entry: a multi-block lift variant and a
    mid-stack extraction variant, in that order."""
    return ScriptedOracle(
        [
            ScriptEntry(
                trigger=lambda ctx: ctx.domain.name == "blocksworld",
                responses=(variants.MULTI_LIFT, variants.MID_EXTRACT),
            )
        ]
    )


def parse_texts(texts) -> list:
    """Parse candidate texts, silently dropping the ones that do not parse."""
    domains: list[DomainAst] = []
    for text in texts:
        try:
            domains.append(parse_domain(text))
        except PddlError:
            continue
    return domains


def scripted_propose(oracle: ScriptedOracle, ctx: ProposalContext, k: int) -> list:
    """Scripted texts -> parsed, validated, linkable DomainAst candidates."""
    return filter_linkable(parse_texts(oracle.propose(ctx, k)), ctx.problem, k)
