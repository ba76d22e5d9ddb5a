"""Genetic search where the oracle supplies crossover and mutation."""

from __future__ import annotations

import random

from ..pddl import DomainAst, PddlError, link, parse_domain
from ..proposer import ProposalContext, ProposalOracle
from .candidate import CandidateEvaluator, EditCandidate, Provenance
from .common import StepRecorder, node_context, propose_domains, summarize, track_best
from .config import SearchConfig, SearchResult


def _tournament(rng: random.Random, population: list) -> EditCandidate:
    """Size-2 tournament; lower score wins, ties go to the earlier member."""
    i = rng.randrange(len(population))
    j = rng.randrange(len(population))
    a, b = population[min(i, j)], population[max(i, j)]
    return b if b.score < a.score else a


def genetic_search(
    cfg: SearchConfig,
    ctx: ProposalContext,
    oracle: ProposalOracle,
    *,
    evaluator: CandidateEvaluator,
    recorder: StepRecorder | None = None,
    observer=None,
) -> SearchResult:
    """Tournament selection, oracle crossover, probabilistic oracle mutation,
    elitism of one. Children that fail to parse or link fall back to parent A,
    so the population size never drifts.

    `observer(generation, population)` fires after each survivor selection."""
    if cfg.ga_population < 2:
        raise ValueError("ga_population must be >= 2")
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

    root = evaluator.evaluate_root()
    recorder.record(root, "root")
    history.append(summarize(root))
    best = root
    if root.meets_target(cfg.target_length):
        return done(root, True)

    root_ctx = node_context(ctx, root, history)
    population: list = []
    for i, domain in enumerate(propose_domains(oracle, root_ctx, cfg.ga_population)):
        cand = evaluator.evaluate(domain, Provenance(root.step_id, 0, f"seed proposal {i}"))
        if cand.step_id is None:
            recorder.record(cand, "ga-gen-0")
            history.append(summarize(cand))
        best = track_best(best, cand)
        if cand.meets_target(cfg.target_length):
            return done(cand, True)
        population.append(cand)
    while len(population) < cfg.ga_population:
        population.append(root)

    for generation in range(1, cfg.ga_generations + 1):
        elite = min(population, key=lambda c: c.score)
        # Breeding stays sequential (the RNG and oracle calls interleave);
        # only the evaluations fan out.
        batch = []
        for i in range(cfg.ga_population):
            parent_a = _tournament(rng, population)
            parent_b = _tournament(rng, population)
            parent_ctx = node_context(ctx, parent_a, history)
            child_text = oracle.crossover(
                parent_ctx, parent_a.canonical_text, parent_b.canonical_text
            )
            if rng.random() < cfg.ga_mutation_rate:
                child_text = oracle.mutate(parent_ctx, child_text)
            child_domain = _parse_child(child_text, parent_a.domain, ctx)
            batch.append(
                (
                    child_domain,
                    Provenance(parent_a.step_id, generation, f"offspring {i} of generation {generation}"),
                )
            )
        offspring: list = []
        for cand in evaluator.evaluate_many(batch):
            if cand.step_id is None:
                recorder.record(cand, f"ga-gen-{generation}")
                history.append(summarize(cand))
            best = track_best(best, cand)
            if cand.meets_target(cfg.target_length):
                return done(cand, True)
            offspring.append(cand)
        pool = offspring + [elite]
        pool.sort(key=lambda c: c.score)  # stable: insertion order breaks ties
        population = pool[: cfg.ga_population]
        if observer is not None:
            observer(generation, tuple(population))

    return done(best, False)


def _parse_child(text: str, fallback: DomainAst, ctx: ProposalContext) -> DomainAst:
    try:
        domain = parse_domain(text)
        link(domain, ctx.problem)
        return domain
    except PddlError:
        return fallback
