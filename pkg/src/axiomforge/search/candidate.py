"""Candidate scoring: plan length plus compactness and locality penalties."""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ..distance import levenshtein
from ..pddl import (
    And,
    Atom,
    DomainAst,
    Eq,
    Forall,
    Formula,
    Not,
    Or,
    PddlError,
    ProblemAst,
    When,
    link,
    print_canonical,
)
from ..planner import (
    GroundingExplosion,
    Plan,
    ResourceExceeded,
    SearchLimits,
    SolveResult,
    ground,
    solve,
)


@dataclass(frozen=True)
class ObjectiveWeights:
    """alpha weighs distance to the original rules, lam weighs rule size."""

    alpha: float = 0.01
    lam: float = 0.01
    unsolvable_penalty: float = 1e6

    def __post_init__(self) -> None:
        if self.alpha < 0 or self.lam < 0 or self.unsolvable_penalty <= 0:
            raise ValueError("weights must be non-negative, penalty positive")


def _count_literals(f: Formula) -> int:
    if isinstance(f, (Atom, Eq)):
        return 1
    if isinstance(f, Not):
        return _count_literals(f.body)
    if isinstance(f, (And, Or)):
        return sum(_count_literals(p) for p in f.parts)
    if isinstance(f, Forall):
        return _count_literals(f.body)
    if isinstance(f, When):
        return _count_literals(f.condition) + _count_literals(f.effect)
    raise TypeError(f"not a formula: {f!r}")


def compactness(domain: DomainAst) -> int:
    """Rule-set size: total literal count over all preconditions and effects."""
    return sum(
        _count_literals(a.precondition) + _count_literals(a.effect)
        for a in domain.actions
    )


@dataclass(frozen=True)
class Provenance:
    parent_id: int | None
    oracle_round: int
    description: str


@dataclass
class EditCandidate:
    domain: DomainAst
    canonical_text: str
    provenance: Provenance
    plan_result: SolveResult | None = None
    regression_ok: bool = False
    compactness: int = 0
    lev_distance: int = 0
    semantic_rank_position: int | None = None
    score: float = math.inf
    step_id: int | None = None

    @property
    def plan_length(self) -> int | None:
        if isinstance(self.plan_result, Plan):
            return self.plan_result.length
        return None

    def meets_target(self, target_length: int) -> bool:
        length = self.plan_length
        return length is not None and length <= target_length and self.regression_ok


def score(candidate: EditCandidate, weights: ObjectiveWeights) -> float:
    """Lower is better; infeasible candidates cost the unsolvable penalty."""
    if isinstance(candidate.plan_result, Plan) and candidate.regression_ok:
        return (
            candidate.plan_result.length
            + weights.lam * candidate.compactness
            + weights.alpha * candidate.lev_distance
        )
    return weights.unsolvable_penalty


class CandidateEvaluator:
    """Grounds, solves, and scores candidate domains against one task.

    Evaluations are memoized by canonical text: proposing the same edit
    twice returns the first EditCandidate untouched, so step records stay
    unique per distinct rule set. `evaluations` counts cache misses.
    """

    def __init__(
        self,
        original: DomainAst,
        problem: ProblemAst,
        regression: list,
        limits: SearchLimits | None = None,
        weights: ObjectiveWeights | None = None,
        *,
        jobs: int = 1,
        max_atoms: int = 100_000,
        max_actions: int = 200_000,
    ):
        self.original = original
        self.original_text = print_canonical(original)
        self.problem = problem
        self.regression = list(regression)
        self.limits = limits or SearchLimits()
        self.weights = weights or ObjectiveWeights()
        self.jobs = max(1, jobs)
        self.max_atoms = max_atoms
        self.max_actions = max_actions
        self.evaluations = 0
        self._memo: dict = {}
        self._lock = threading.Lock()

    def _solve(self, domain: DomainAst, problem: ProblemAst) -> SolveResult:
        task = ground(
            link(domain, problem),
            max_atoms=self.max_atoms,
            max_actions=self.max_actions,
        )
        return solve(task, self.limits)

    def evaluate(self, domain: DomainAst, provenance: Provenance) -> EditCandidate:
        text = print_canonical(domain)
        with self._lock:
            hit = self._memo.get(text)
        if hit is not None:
            return hit
        cand = EditCandidate(
            domain=domain,
            canonical_text=text,
            provenance=provenance,
            compactness=compactness(domain),
            lev_distance=levenshtein(self.original_text, text),
        )
        try:
            cand.plan_result = self._solve(domain, self.problem)
            cand.regression_ok = all(
                isinstance(self._solve(domain, prob), Plan) for prob in self.regression
            )
            cand.score = score(cand, self.weights)
        except (GroundingExplosion, PddlError) as exc:
            cand.plan_result = ResourceExceeded(f"grounding failed: {exc.__class__.__name__}")
            cand.regression_ok = False
            cand.score = math.inf
        with self._lock:
            self.evaluations += 1
            self._memo[text] = cand
        return cand

    def evaluate_many(self, items: list) -> list:
        """Evaluate (domain, provenance) pairs, results in input order.

        Batch entries with the same canonical text collapse to one
        evaluation, and up to `jobs` evaluations run on worker threads; the
        returned order never depends on completion order.
        """
        results: list[EditCandidate | None] = [None] * len(items)
        slots: dict[str, list] = {}
        fresh: list = []
        for idx, (domain, provenance) in enumerate(items):
            text = print_canonical(domain)
            with self._lock:
                hit = self._memo.get(text)
            if hit is not None:
                results[idx] = hit
            elif text in slots:
                slots[text].append(idx)
            else:
                slots[text] = [idx]
                fresh.append((text, domain, provenance))
        if self.jobs > 1 and len(fresh) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                evaluated = list(
                    pool.map(lambda item: self.evaluate(item[1], item[2]), fresh)
                )
        else:
            evaluated = [self.evaluate(domain, prov) for _, domain, prov in fresh]
        for (text, _, _), cand in zip(fresh, evaluated):
            for idx in slots[text]:
                results[idx] = cand
        return results

    def evaluate_root(self) -> EditCandidate:
        return self.evaluate(self.original, Provenance(None, 0, "original"))
