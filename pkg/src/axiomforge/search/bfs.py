"""Level-by-level edit search: all depth-d candidates before any at d+1."""

from __future__ import annotations

from ..proposer import ProposalContext, ProposalOracle
from .candidate import CandidateEvaluator, Provenance
from .common import StepRecorder, node_context, propose_domains, summarize, track_best
from .config import SearchConfig, SearchResult


def bfs_search(
    cfg: SearchConfig,
    ctx: ProposalContext,
    oracle: ProposalOracle,
    *,
    evaluator: CandidateEvaluator,
    recorder: StepRecorder | None = None,
) -> SearchResult:
    """Explore one proposal round at a time; the first success is returned,
    which makes it the minimal-edit-depth success among generated candidates."""
    if cfg.max_depth < 1:
        raise ValueError("max_depth must be >= 1")
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

    level = [root]
    for depth in range(1, cfg.max_depth + 1):
        next_level = []
        for node in level:
            node_ctx = node_context(ctx, node, history)
            proposals = propose_domains(oracle, node_ctx, cfg.proposals_per_expansion)
            batch = [
                (domain, Provenance(node.step_id, depth, f"proposal {i} from step {node.step_id}"))
                for i, domain in enumerate(proposals)
            ]
            for cand in evaluator.evaluate_many(batch):
                fresh = cand.step_id is None
                if fresh:
                    recorder.record(cand, f"bfs-depth-{depth}")
                    history.append(summarize(cand))
                    next_level.append(cand)
                best = track_best(best, cand)
                if cand.meets_target(cfg.target_length):
                    return done(cand, True)
        level = next_level
        if not level:
            break
    return done(best, False)
