"""What a proposal oracle gets to see when asked for rule edits."""

from __future__ import annotations

from dataclasses import dataclass

from ..pddl import DomainAst, ProblemAst


@dataclass(frozen=True)
class ProposalContext:
    domain: DomainAst
    problem: ProblemAst
    baseline_length: int | None  # None when the goal is unreachable
    target_length: int
    failure_summary: str = ""
    history: tuple = ()  # summaries of earlier candidates, oldest first

    def __post_init__(self) -> None:
        if self.target_length < 0:
            raise ValueError("target_length must be >= 0")
