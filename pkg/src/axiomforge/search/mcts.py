"""Monte Carlo tree search over rule edits: UCB1 selection, random rollouts."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from ..proposer import ProposalContext, ProposalOracle
from .candidate import CandidateEvaluator, EditCandidate, Provenance
from .common import StepRecorder, node_context, propose_domains, summarize, track_best
from .config import SearchConfig, SearchResult

ROLLOUT_CHAIN_LENGTH = 1


def ucb1(mean_reward: float, node_visits: int, parent_visits: int, c: float) -> float:
    """Unvisited nodes sort first; otherwise mean + c*sqrt(ln(parent)/visits)."""
    if node_visits == 0:
        return math.inf
    return mean_reward + c * math.sqrt(math.log(parent_visits) / node_visits)


@dataclass
class _Node:
    cand: EditCandidate
    children: list = field(default_factory=list)
    visits: int = 0
    total_reward: float = 0.0
    expanded: bool = False

    @property
    def mean_reward(self) -> float:
        return self.total_reward / self.visits if self.visits else 0.0


def _select_child(node: _Node, c: float) -> _Node:
    """UCB1 argmax over children; ties resolve to the lowest child index."""
    best_child = node.children[0]
    best_value = ucb1(best_child.mean_reward, best_child.visits, node.visits, c)
    for child in node.children[1:]:
        value = ucb1(child.mean_reward, child.visits, node.visits, c)
        if value > best_value:
            best_child, best_value = child, value
    return best_child


def mcts_search(
    cfg: SearchConfig,
    ctx: ProposalContext,
    oracle: ProposalOracle,
    *,
    evaluator: CandidateEvaluator,
    recorder: StepRecorder | None = None,
    observer=None,
) -> SearchResult:
    """Reward is the normalized plan-length improvement over the original,
    clamped to [0, 1]; unsolvable or regression-breaking candidates earn 0.

    `observer(iteration, root)` fires after each backpropagation, mainly so
    tests can check visit-count bookkeeping on the tree."""
    if cfg.mcts_iterations < 1:
        raise ValueError("mcts_iterations must be >= 1")
    recorder = recorder or StepRecorder()
    rng = random.Random(cfg.seed)
    calls0, evals0 = oracle.calls, evaluator.evaluations
    history: list = []

    def done(best, success):
        return SearchResult(
            best=best,
            success=success,
            explored=evaluator.evaluations - evals0,
            oracle_calls=oracle.calls - calls0,
        )

    root_cand = evaluator.evaluate_root()
    recorder.record(root_cand, "root")
    history.append(summarize(root_cand))
    best = root_cand
    if root_cand.meets_target(cfg.target_length):
        return done(root_cand, True)
    baseline = root_cand.plan_length

    def reward(cand: EditCandidate) -> float:
        length = cand.plan_length
        if length is None or not cand.regression_ok:
            return 0.0
        if baseline is None:
            return 1.0
        if baseline == 0:
            return 0.0
        return min(1.0, max(0.0, (baseline - length) / baseline))

    root = _Node(root_cand)
    found: EditCandidate | None = None

    for iteration in range(1, cfg.mcts_iterations + 1):
        node = root
        path = [root]
        while node.expanded and node.children:
            node = _select_child(node, cfg.mcts_exploration_c)
            path.append(node)

        if not node.expanded:
            node.expanded = True
            parent_ctx = node_context(ctx, node.cand, history)
            proposals = propose_domains(oracle, parent_ctx, cfg.proposals_per_expansion)
            batch = [
                (domain, Provenance(node.cand.step_id, iteration, f"expansion {i} of step {node.cand.step_id}"))
                for i, domain in enumerate(proposals)
            ]
            for cand in evaluator.evaluate_many(batch):
                if cand.step_id is None:
                    recorder.record(cand, "mcts-expand")
                    history.append(summarize(cand))
                best = track_best(best, cand)
                if found is None and cand.meets_target(cfg.target_length):
                    found = cand
                node.children.append(_Node(cand))
            if node.children:
                node = _select_child(node, cfg.mcts_exploration_c)
                path.append(node)

        value = reward(node.cand)
        rollout_cand = node.cand
        for _ in range(ROLLOUT_CHAIN_LENGTH):
            roll_ctx = node_context(ctx, rollout_cand, history)
            proposals = propose_domains(oracle, roll_ctx, cfg.proposals_per_expansion)
            if not proposals:
                break
            domain = proposals[rng.randrange(len(proposals))]
            rollout_cand = evaluator.evaluate(
                domain,
                Provenance(rollout_cand.step_id, iteration, f"rollout from step {rollout_cand.step_id}"),
            )
            if rollout_cand.step_id is None:
                recorder.record(rollout_cand, "mcts-rollout")
                history.append(summarize(rollout_cand))
            best = track_best(best, rollout_cand)
            if found is None and rollout_cand.meets_target(cfg.target_length):
                found = rollout_cand
            value = max(value, reward(rollout_cand))

        for n in path:
            n.visits += 1
            n.total_reward += value

        if observer is not None:
            observer(iteration, root)
        if found is not None:
            return done(found, True)

    return done(best, False)
