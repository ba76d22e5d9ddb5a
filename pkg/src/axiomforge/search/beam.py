"""Beam search over rule edits, ranked by score then semantic closeness."""

from __future__ import annotations

from ..distance import DistanceOracle, hybrid_rank
from ..proposer import ProposalContext, ProposalOracle
from .candidate import CandidateEvaluator, Provenance
from .common import StepRecorder, node_context, propose_domains, summarize, track_best
from .config import SearchConfig, SearchResult


def beam_search(
    cfg: SearchConfig,
    ctx: ProposalContext,
    oracle: ProposalOracle,
    distance_oracle: DistanceOracle,
    *,
    evaluator: CandidateEvaluator,
    recorder: StepRecorder | None = None,
    observer=None,
) -> SearchResult:
    """Each iteration expands every beam member, ranks the pool by
    (score, hybrid rank position vs. the original, canonical text), and keeps
    the best beam_width candidates. The hybrid pre-filter keeps 2*beam_width
    survivors, so oracle cost stays linear in the beam.

    `observer(iteration, beam)` fires after each truncation."""
    recorder = recorder or StepRecorder()
    calls0, evals0 = oracle.calls, evaluator.evaluations
    history: list = []

    def done(best, success):
        return SearchResult(
            best=best,
            success=success,
            explored=evaluator.evaluations - evals0,
            oracle_calls=oracle.calls - calls0,
        )

    root = evaluator.evaluate_root()
    recorder.record(root, "root")
    history.append(summarize(root))
    best = root
    if root.meets_target(cfg.target_length):
        return done(root, True)

    beam = [root]
    for iteration in range(1, cfg.max_depth + 1):
        pool = list(beam)
        seen = {c.canonical_text for c in beam}
        for node in beam:
            node_ctx = node_context(ctx, node, history)
            proposals = propose_domains(oracle, node_ctx, cfg.proposals_per_expansion)
            batch = [
                (domain, Provenance(node.step_id, iteration, f"proposal {i} from step {node.step_id}"))
                for i, domain in enumerate(proposals)
            ]
            for cand in evaluator.evaluate_many(batch):
                if cand.step_id is None:
                    recorder.record(cand, f"beam-iter-{iteration}")
                    history.append(summarize(cand))
                best = track_best(best, cand)
                if cand.canonical_text not in seen:
                    seen.add(cand.canonical_text)
                    pool.append(cand)

        keep = min(2 * cfg.beam_width, len(pool))
        ranking = hybrid_rank(
            evaluator.original_text,
            [c.canonical_text for c in pool],
            keep,
            distance_oracle,
        )
        position = {text: i for i, text in enumerate(ranking.items)}
        for cand in pool:
            cand.semantic_rank_position = position[cand.canonical_text]
        pool.sort(key=lambda c: (c.score, c.semantic_rank_position, c.canonical_text))

        for cand in pool:
            if cand.meets_target(cfg.target_length):
                return done(cand, True)
        beam = pool[: cfg.beam_width]
        if observer is not None:
            observer(iteration, tuple(beam))

    return done(best, False)
