"""Shared plumbing for the search algorithms: recording, contexts, proposals."""

from __future__ import annotations

from dataclasses import replace

from ..proposer import NoScriptMatch, ProposalContext, ProposalOracle, filter_linkable, parse_texts
from ..trajectory import TrajectoryStep, TrajectoryWriter, content_hash
from .candidate import EditCandidate

HISTORY_WINDOW = 8


class StepRecorder:
    """Assigns step ids in evaluation order and mirrors them to a writer."""

    def __init__(self, writer: TrajectoryWriter | None = None):
        self.writer = writer
        self._next_id = 0

    def record(self, cand: EditCandidate, phase: str) -> int:
        step_id = self._next_id
        self._next_id += 1
        cand.step_id = step_id
        if self.writer is not None:
            self.writer.record(
                TrajectoryStep(
                    step_id=step_id,
                    parent_id=cand.provenance.parent_id,
                    algorithm_phase=phase,
                    domain_text_hash=content_hash(cand.canonical_text),
                    domain_text=cand.canonical_text,
                    edit_description=cand.provenance.description,
                    plan_length=cand.plan_length,
                    regression_ok=cand.regression_ok,
                    score=cand.score,
                    lev_distance=cand.lev_distance,
                    oracle_round=cand.provenance.oracle_round,
                )
            )
        return step_id


def summarize(cand: EditCandidate) -> str:
    length = cand.plan_length
    outcome = f"plan length {length}" if length is not None else "goal unreachable"
    if not cand.regression_ok:
        outcome += ", breaks a previously solvable scenario"
    return f"{cand.provenance.description}: {outcome}, score {cand.score:g}"


def node_context(
    base_ctx: ProposalContext, node: EditCandidate, history: list
) -> ProposalContext:
    length = node.plan_length
    if length is None:
        failure = "the goal is unreachable under the current rules"
    elif length > base_ctx.target_length:
        failure = (
            f"best plan is {length} steps, which misses the {base_ctx.target_length}-step target"
        )
    else:
        failure = "regression scenarios fail under the current rules"
    return replace(
        base_ctx,
        domain=node.domain,
        baseline_length=length,
        failure_summary=failure,
        history=tuple(history[-HISTORY_WINDOW:]),
    )


def propose_domains(oracle: ProposalOracle, ctx: ProposalContext, k: int) -> list:
    """Ask the oracle for k edits; anything unlinkable is dropped here."""
    try:
        texts = oracle.propose(ctx, k)
    except NoScriptMatch:
        return []
    return filter_linkable(parse_texts(texts), ctx.problem, k)


def track_best(best: EditCandidate, cand: EditCandidate) -> EditCandidate:
    return cand if cand.score < best.score else best
