"""Operator surface: parse, plan, validate, evolve, rank, corpus, export.

Exit codes: 0 success, 1 domain or logic failure (diagnostics, unsolvable,
no search success, invalid plan), 2 usage error, 3 external failure (oracle
transport, credentials, unreadable files). With --json the final stdout
line is a single JSON object describing the outcome.

Inputs named `corpus:NAME` load the embedded domain NAME;
`corpus:NAME:PROBLEM` loads one of its problem instances.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, corpus
from .distance import (
    LevenshteinMockOracle,
    OracleUnavailable,
    hybrid_rank,
    levenshtein,
    semantic_rank,
)
from .pddl import (
    PddlError,
    link,
    parse_domain,
    parse_problem,
    print_canonical,
)
from .planner import (
    GroundingExplosion,
    Plan,
    SearchLimits,
    Unsolvable,
    ground,
    solve,
    validate_plan,
)
from .proposer import (
    AuthError,
    HttpDistanceOracle,
    HttpProposalOracle,
    OracleClientConfig,
    builtin_script,
)
from .search import ObjectiveWeights, SearchConfig, run_search
from .trajectory import MalformedTrajectory, export as export_runs

EXIT_OK = 0
EXIT_LOGIC = 1
EXIT_USAGE = 2
EXIT_EXTERNAL = 3


def _read_text(spec: str, kind: str) -> str:
    if spec.startswith("corpus:"):
        parts = spec.split(":")
        entry = corpus.load(parts[1])
        if kind == "domain":
            return entry.domain_text
        name = parts[2] if len(parts) > 2 else entry.flagship.name
        return entry.problem(name).text
    return Path(spec).read_text(encoding="utf-8")


def _limits(args) -> SearchLimits:
    return SearchLimits(
        max_expanded_states=args.max_states,
        max_plan_length=args.max_len,
        wall_budget_ms=args.budget_ms,
    )


def _print_json(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))


def _diagnostics_payload(err: PddlError) -> list:
    return [
        {"code": d.code, "message": d.message, "line": d.line, "col": d.col}
        for d in err.diagnostics
    ]


def _report_diagnostics(args, err: PddlError) -> int:
    for d in err.diagnostics:
        print(str(d), file=sys.stderr)
    _print_json(args, {"status": "error", "diagnostics": _diagnostics_payload(err)})
    return EXIT_LOGIC


# -- commands -----------------------------------------------------------------


def _cmd_parse(args) -> int:
    try:
        domain = parse_domain(_read_text(args.domain, "domain"))
    except PddlError as err:
        return _report_diagnostics(args, err)
    text = print_canonical(domain)
    sys.stdout.write(text)
    _print_json(args, {"status": "ok", "name": domain.name,
                       "actions": len(domain.actions), "predicates": len(domain.predicates)})
    return EXIT_OK


def _load_task(args):
    domain = parse_domain(_read_text(args.domain, "domain"))
    problem = parse_problem(_read_text(args.problem, "problem"))
    return ground(link(domain, problem))


def _cmd_plan(args) -> int:
    try:
        task = _load_task(args)
    except PddlError as err:
        return _report_diagnostics(args, err)
    except GroundingExplosion as err:
        print(f"grounding-explosion: {err}", file=sys.stderr)
        _print_json(args, {"status": "grounding-explosion"})
        return EXIT_LOGIC
    result = solve(task, _limits(args))
    if isinstance(result, Plan):
        for step in result.steps:
            print(str(step))
        print(f"length: {result.length}")
        _print_json(args, {"status": "plan", "length": result.length,
                           "steps": [str(s) for s in result.steps]})
        return EXIT_OK
    if isinstance(result, Unsolvable):
        print("unsolvable")
        _print_json(args, {"status": "unsolvable"})
        return EXIT_LOGIC
    print(f"resource-exceeded: {result.reason}")
    _print_json(args, {"status": "resource-exceeded", "reason": result.reason})
    return EXIT_LOGIC


def _cmd_validate(args) -> int:
    try:
        task = _load_task(args)
    except PddlError as err:
        return _report_diagnostics(args, err)
    by_text = {str(a): a for a in task.actions}
    steps = []
    for lineno, raw in enumerate(Path(args.plan).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(";") or line.startswith("length:"):
            continue
        action = by_text.get(line)
        if action is None:
            print(f"invalid at step {len(steps)}: unknown action {line}")
            _print_json(args, {"status": "invalid", "failed_at": len(steps)})
            return EXIT_LOGIC
        steps.append(action)
    ok, failed_at = validate_plan(task, Plan(tuple(steps)))
    if ok:
        print("valid")
        _print_json(args, {"status": "valid", "length": len(steps)})
        return EXIT_OK
    print(f"invalid at step {failed_at}")
    _print_json(args, {"status": "invalid", "failed_at": failed_at})
    return EXIT_LOGIC


def _cmd_evolve(args) -> int:
    try:
        domain = parse_domain(_read_text(args.domain, "domain"))
        problem = parse_problem(_read_text(args.problem, "problem"))
        link(domain, problem)
    except PddlError as err:
        return _report_diagnostics(args, err)

    weights = ObjectiveWeights(alpha=args.alpha, lam=args.lam)
    cfg = SearchConfig(
        algorithm=args.algo,
        target_length=args.target_len,
        beam_width=args.beam_width,
        mcts_iterations=args.mcts_iterations,
        mcts_exploration_c=args.mcts_c,
        ga_population=args.ga_population,
        ga_generations=args.ga_generations,
        ga_mutation_rate=args.ga_mutation_rate,
        max_depth=args.max_depth,
        proposals_per_expansion=args.proposals,
        seed=args.seed,
        weights=weights,
    )
    if args.oracle == "scripted":
        oracle = builtin_script()
        distance_oracle = LevenshteinMockOracle()
    else:
        cfg_http = OracleClientConfig.from_env(samples=args.samples)
        oracle = HttpProposalOracle(cfg_http)
        distance_oracle = HttpDistanceOracle(cfg_http)

    try:
        regression = (
            corpus.regression_suite(domain.name)
            if domain.name in corpus.CORPUS_NAMES
            else []
        )
        result = run_search(
            cfg,
            domain,
            problem,
            regression,
            oracle,
            distance_oracle=distance_oracle,
            limits=_limits(args),
            trajectory_path=args.trajectory,
            jobs=args.jobs,
        )
    except (OracleUnavailable, AuthError) as err:
        print(f"oracle failure: {err}", file=sys.stderr)
        _print_json(args, {"status": "oracle-failure", "error": str(err)})
        return EXIT_EXTERNAL

    best = result.best
    print(f"algorithm: {cfg.algorithm}")
    print(f"success: {'true' if result.success else 'false'}")
    print(f"best-length: {best.plan_length if best is not None else 'none'}")
    print(f"best-score: {best.score:g}" if best is not None else "best-score: none")
    print(f"explored: {result.explored}")
    print(f"oracle-calls: {result.oracle_calls}")
    if args.trajectory:
        print(f"trajectory: {args.trajectory}")
    _print_json(
        args,
        {
            "status": "success" if result.success else "no-success",
            "algorithm": cfg.algorithm,
            "best_length": best.plan_length if best is not None else None,
            "best_score": best.score if best is not None else None,
            "explored": result.explored,
            "oracle_calls": result.oracle_calls,
            "trajectory": args.trajectory,
        },
    )
    return EXIT_OK if result.success else EXIT_LOGIC


def _canonical_of(path: str) -> str:
    return print_canonical(parse_domain(Path(path).read_text(encoding="utf-8")))


def _cmd_rank(args) -> int:
    try:
        reference = _canonical_of(args.reference)
        texts = {path: _canonical_of(path) for path in args.candidates}
    except PddlError as err:
        return _report_diagnostics(args, err)

    queries = 0
    if args.metric == "lev":
        ordered = sorted(args.candidates, key=lambda p: (levenshtein(reference, texts[p]), texts[p]))
    else:
        if args.oracle == "mock":
            oracle = LevenshteinMockOracle()
        else:
            oracle = HttpDistanceOracle(OracleClientConfig.from_env(samples=args.samples))
        by_text: dict = {}
        for path in args.candidates:  # first path wins for duplicate texts
            by_text.setdefault(texts[path], []).append(path)
        unique_texts = list(by_text)
        try:
            if args.metric == "semantic":
                ranked = semantic_rank(reference, unique_texts, oracle)
            else:
                keep = min(args.keep, len(unique_texts))
                ranked = hybrid_rank(reference, unique_texts, keep, oracle)
        except (OracleUnavailable, AuthError) as err:
            print(f"oracle failure: {err}", file=sys.stderr)
            _print_json(args, {"status": "oracle-failure", "error": str(err)})
            return EXIT_EXTERNAL
        queries = ranked.oracle_queries_used
        ordered = [path for text in ranked.items for path in by_text[text]]

    for i, path in enumerate(ordered, start=1):
        print(f"{i}\t{path}")
    _print_json(args, {"status": "ok", "ranking": ordered, "oracle_queries": queries})
    return EXIT_OK


def _cmd_corpus(args) -> int:
    if args.corpus_cmd == "list":
        for name in corpus.CORPUS_NAMES:
            print(name)
        _print_json(args, {"status": "ok", "names": list(corpus.CORPUS_NAMES)})
        return EXIT_OK
    entry = corpus.load(args.name)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    domain_path = out / f"{entry.name}.domain.pddl"
    domain_path.write_text(entry.domain_text, encoding="utf-8")
    written.append(str(domain_path))
    for prob in entry.problems:
        path = out / f"{entry.name}.{prob.name}.problem.pddl"
        path.write_text(prob.text, encoding="utf-8")
        written.append(str(path))
    for path in written:
        print(path)
    _print_json(args, {"status": "ok", "files": written})
    return EXIT_OK


def _cmd_export(args) -> int:
    try:
        count = export_runs(args.runs, args.out, args.format)
    except MalformedTrajectory as err:
        print(str(err), file=sys.stderr)
        _print_json(args, {"status": "malformed", "error": str(err)})
        return EXIT_LOGIC
    print(f"exported: {count}")
    _print_json(args, {"status": "ok", "runs": count, "out": args.out})
    return EXIT_OK


# -- argument wiring ----------------------------------------------------------


def _add_limit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-states", type=int, default=1_000_000,
                   help="cap on expanded states per solve")
    p.add_argument("--max-len", type=int, default=100, help="cap on plan length")
    p.add_argument("--budget-ms", type=int, default=10_000, help="wall budget per solve")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="axiomforge",
        description="Evolve PDDL game rules with planner-verified search.",
    )
    parser.add_argument("--version", action="version", version=f"axiomforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a domain and print its canonical text")
    p.add_argument("domain")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("plan", help="solve a task and print the optimal plan")
    p.add_argument("domain")
    p.add_argument("problem")
    _add_limit_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_plan)

    p = sub.add_parser("validate", help="check a plan file against a task")
    p.add_argument("domain")
    p.add_argument("problem")
    p.add_argument("plan", help="file with one ground action per line")
    _add_limit_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("evolve", help="search for rule edits reaching a target length")
    p.add_argument("domain")
    p.add_argument("problem")
    p.add_argument("--algo", choices=("bfs", "mcts", "genetic", "beam"), default="beam")
    p.add_argument("--target-len", type=int, required=True)
    p.add_argument("--beam-width", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", choices=("http", "scripted"), default="http")
    p.add_argument("--trajectory", help="write the run record to this jsonl file")
    p.add_argument("--alpha", type=float, default=0.01, help="distance weight")
    p.add_argument("--lambda", dest="lam", type=float, default=0.01, help="compactness weight")
    p.add_argument("--samples", type=int, default=16, help="oracle decodes per request")
    p.add_argument("--max-depth", type=int, default=3)
    p.add_argument("--proposals", type=int, default=4, help="proposals per expansion")
    p.add_argument("--mcts-iterations", type=int, default=32)
    p.add_argument("--mcts-c", type=float, default=1.4142135623730951)
    p.add_argument("--ga-population", type=int, default=8)
    p.add_argument("--ga-generations", type=int, default=10)
    p.add_argument("--ga-mutation-rate", type=float, default=0.25)
    p.add_argument("--jobs", type=int, default=1, help="evaluation workers")
    _add_limit_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_evolve)

    p = sub.add_parser("rank", help="order candidate domains by closeness to a reference")
    p.add_argument("reference")
    p.add_argument("candidates", nargs="+")
    p.add_argument("--metric", choices=("lev", "semantic", "hybrid"), default="lev")
    p.add_argument("--keep", type=int, default=16, help="hybrid pre-filter survivors")
    p.add_argument("--oracle", choices=("http", "mock"), default="http")
    p.add_argument("--samples", type=int, default=16)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_rank)

    p = sub.add_parser("corpus", help="inspect or dump the embedded game corpus")
    corpus_sub = p.add_subparsers(dest="corpus_cmd", required=True)
    pl = corpus_sub.add_parser("list", help="list embedded domain names")
    pl.add_argument("--json", action="store_true")
    pl.set_defaults(fn=_cmd_corpus)
    pd = corpus_sub.add_parser("dump", help="write a corpus entry to files")
    pd.add_argument("name")
    pd.add_argument("--out", required=True)
    pd.add_argument("--json", action="store_true")
    pd.set_defaults(fn=_cmd_corpus)

    p = sub.add_parser("export", help="repackage trajectory files")
    p.add_argument("runs", nargs="+")
    p.add_argument("--format", choices=("jsonl", "csv-summary"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except corpus.UnknownDomain as err:
        print(f"unknown corpus entry: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"io failure: {err}", file=sys.stderr)
        return EXIT_EXTERNAL


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
