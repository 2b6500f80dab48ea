#!/usr/bin/env python3
"""
Lattice Parser - Main CLI entry point.

Parses recognizer word graphs with a unification grammar, scoring every
chart edge by acoustic shortfall and dialogue-context predictions, and
evaluates the output with the Information Content metric.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 runtime failure.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from .chart import ChartParser, results
from .config import AppConfig, load_config
from .corpus import GenParams, ScoreModel, generate_corpus
from .errors import InputValidationError, LatticeParserError
from .evaluation import corpus_word_accuracy, format_report, run_corpus
from .models import ChartEdge, ParseStatus, ScMode
from .predictions import empty_predictions
from .scoring import display_score
from .sil import build_sil, sil_to_json
from .storage import (
    DEFAULT_CONTEXTS,
    DEFAULT_LEXICON,
    DEFAULT_TRC_RULES,
    CorpusStorage,
    dump_json,
    load_annotations,
    load_contexts,
    load_graph,
    load_lexicon,
    load_predictions,
    load_trc_rules,
    write_text,
)
from .wordgraph import best_path_cost

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_RUNTIME = 3

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class UsageError(Exception):
    """Bad command-line usage."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="lattice-parser",
        description="Lattice Parser - robust word graph parsing with dialogue predictions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Check a word graph and print its best path cost
  lattice-parser validate --graph time_answer.graph

  # Parse with yes/no predictions and write SIL results
  lattice-parser parse --graph time_answer.graph --predictions yes_no.json --out results.json

  # Show the score breakdown of every chart edge
  lattice-parser score --graph time_answer.graph --predictions yes_no.json

  # Generate a corpus and evaluate it with and without predictions
  lattice-parser gen --transcripts transcripts.json --seed 7 --out corpus/
  lattice-parser eval --corpus corpus/ --jobs 4 --out report.json
        """,
    )
    parser.add_argument("--config", help="YAML or JSON config file (scoring/parsing blocks)")
    parser.add_argument(
        "--verbose", "-v", action="count", default=0, help="More logging (-v INFO, -vv DEBUG)"
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    validate_parser = subparsers.add_parser("validate", help="Validate a word graph")
    validate_parser.add_argument("--graph", required=True, help="Word graph file")

    def add_parsing_flags(sub: argparse.ArgumentParser, predictions: bool = True) -> None:
        sub.add_argument("--lexicon", help="Lexicon JSON (default: bundled demo lexicon)")
        if predictions:
            sub.add_argument("--predictions", help="Prediction list JSON (default: none)")
        sub.add_argument("--pr-match", type=float, help="pr weight of predicted edges")
        sub.add_argument("--pr-nomatch", type=float, help="pr weight of other edges")
        sub.add_argument(
            "--sc-mode", choices=[m.value for m in ScMode], help="Syntactic completeness mode"
        )
        sub.add_argument("--max-steps", type=int, help="Agenda step limit (default: unlimited)")
        sub.add_argument(
            "--result-categories",
            help="Comma-separated categories accepted as complete results (default: any)",
        )

    parse_parser = subparsers.add_parser("parse", help="Parse a word graph")
    parse_parser.add_argument("--graph", required=True, help="Word graph file")
    add_parsing_flags(parse_parser)
    parse_parser.add_argument("--out", help="Write SIL JSON here instead of stdout")

    score_parser = subparsers.add_parser("score", help="Show the scores of all chart edges")
    score_parser.add_argument("--graph", required=True, help="Word graph file")
    add_parsing_flags(score_parser)
    score_parser.add_argument("--json", action="store_true", help="Output as JSON")

    eval_parser = subparsers.add_parser("eval", help="Evaluate a corpus with and without predictions")
    eval_parser.add_argument("--corpus", required=True, help="Corpus directory")
    add_parsing_flags(eval_parser, predictions=False)
    eval_parser.add_argument("--trc-rules", help="TRC mapping rules (default: bundled rules)")
    eval_parser.add_argument("--contexts", help="Dialogue contexts (default: bundled contexts)")
    eval_parser.add_argument("--jobs", type=int, default=1, help="Parallel workers (default: 1)")
    eval_parser.add_argument("--out", help="Write the JSON report here")
    eval_parser.add_argument(
        "--no-timing", action="store_true", help="Leave parse times out of all output"
    )

    gen_parser = subparsers.add_parser("gen", help="Generate a synthetic word graph corpus")
    gen_parser.add_argument("--transcripts", required=True, help="Annotated transcripts JSON")
    gen_parser.add_argument("--lexicon", help="Lexicon JSON (default: bundled demo lexicon)")
    gen_parser.add_argument("--density", type=int, default=4, help="Edges per spoken word")
    gen_parser.add_argument("--target-wa", type=float, default=73.3, help="Target word accuracy %%")
    gen_parser.add_argument("--seed", type=int, default=0, help="Random seed")
    gen_parser.add_argument(
        "--score-model",
        choices=[m.value for m in ScoreModel],
        default=ScoreModel.STRATIFIED.value,
        help="How winning distractors are placed",
    )
    gen_parser.add_argument("--out", required=True, help="Output corpus directory")

    return parser


def setup_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def resolve_config(args) -> AppConfig:
    return load_config(
        getattr(args, "config", None),
        overrides={
            "pr_match": getattr(args, "pr_match", None),
            "pr_nomatch": getattr(args, "pr_nomatch", None),
            "sc_mode": getattr(args, "sc_mode", None),
            "max_steps": getattr(args, "max_steps", None),
            "result_categories": getattr(args, "result_categories", None),
        },
    )


def check_usage(args) -> None:
    """Flag checks argparse cannot express; run before any file is touched."""
    if getattr(args, "max_steps", None) is not None and args.max_steps < 1:
        raise UsageError("--max-steps must be >= 1")
    if args.command == "eval" and args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if args.command == "gen":
        if args.density < 1:
            raise UsageError("--density must be >= 1")
        if not 0.0 <= args.target_wa <= 100.0:
            raise UsageError("--target-wa must be within [0, 100]")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_help()
            return EXIT_USAGE
        check_usage(args)
    except UsageError as e:
        print(f"Usage error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(args.verbose)

    try:
        if args.command == "validate":
            return cmd_validate(args)
        elif args.command == "parse":
            return cmd_parse(args)
        elif args.command == "score":
            return cmd_score(args)
        elif args.command == "eval":
            return cmd_eval(args)
        elif args.command == "gen":
            return cmd_gen(args)
        else:
            print(f"Unknown command: {args.command}", file=sys.stderr)
            return EXIT_USAGE

    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return 130
    except (InputValidationError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except LatticeParserError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


def cmd_validate(args) -> int:
    """Validate a word graph and print its size and Maxseg."""
    graph = load_graph(args.graph)
    print(f"✓ {args.graph} is a valid word graph")
    print(
        f"nodes={len(graph.nodes)} edges={len(graph.edges)} "
        f"maxseg={display_score(best_path_cost(graph))}"
    )
    return EXIT_OK


def _run_parser(args, config: AppConfig) -> ChartParser:
    graph = load_graph(args.graph)
    lexicon = load_lexicon(args.lexicon or DEFAULT_LEXICON)
    predictions = (
        load_predictions(args.predictions) if args.predictions else empty_predictions()
    )
    return ChartParser(graph, lexicon, predictions, config.score, config.result_categories)


def cmd_parse(args) -> int:
    """Parse a graph and emit the selected results as SIL JSON."""
    config = resolve_config(args)
    parser = _run_parser(args, config)
    outcome = parser.run(config.max_steps)
    selected = results(outcome, parser.graph)

    if outcome.status == ParseStatus.COMPLETE:
        print("complete")
    else:
        print(f"partial({len(selected)} parts)")

    sil = dump_json(sil_to_json([build_sil(edge) for edge in selected]))
    if args.out:
        write_text(args.out, sil)
        print(f"✓ SIL results written to {args.out}")
    else:
        print(sil, end="")
    return EXIT_OK


def _score_row(edge: ChartEdge) -> Dict[str, Any]:
    s = edge.scores
    return {
        "span": f"{edge.start}-{edge.end}",
        "string": edge.string,
        "category": edge.constituent.signature(),
        "rs": float(display_score(s.rs)),
        "sf": float(display_score(s.sf)),
        "q_a": float(display_score(s.q_a)),
        "sc": float(display_score(s.sc)),
        "pr": float(display_score(s.pr)),
        "qs": float(display_score(s.qs)),
    }


def cmd_score(args) -> int:
    """Print RS, sf, Q_a, sc, pr and QS for every chart edge."""
    config = resolve_config(args)
    parser = _run_parser(args, config)
    outcome = parser.run(config.max_steps)
    rows = [_score_row(edge) for edge in sorted(outcome.chart, key=ChartEdge.sort_key)]

    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK

    width = max([len("string")] + [len(r["string"]) for r in rows])
    cat_width = max([len("category")] + [len(r["category"]) for r in rows])
    header = (
        f"{'span':<6} {'string':<{width}} {'category':<{cat_width}} "
        f"{'rs':>8} {'sf':>8} {'q_a':>8} {'sc':>5} {'pr':>5} {'qs':>8}"
    )
    print(header)
    print("-" * len(header))
    for r in rows:
        print(
            f"{r['span']:<6} {r['string']:<{width}} {r['category']:<{cat_width}} "
            f"{r['rs']:>8.2f} {r['sf']:>8.2f} {r['q_a']:>8.2f} "
            f"{r['sc']:>5.2f} {r['pr']:>5.2f} {r['qs']:>8.2f}"
        )
    print(f"\n{outcome.status.value}: {len(rows)} chart edges, {outcome.steps_used} steps")
    return EXIT_OK


def cmd_eval(args) -> int:
    """Evaluate a corpus with and without context predictions."""
    config = resolve_config(args)
    corpus = CorpusStorage(args.corpus).load()
    lexicon = load_lexicon(args.lexicon or DEFAULT_LEXICON)
    rules = load_trc_rules(args.trc_rules or DEFAULT_TRC_RULES)
    contexts = load_contexts(args.contexts or DEFAULT_CONTEXTS)

    report = run_corpus(corpus, lexicon, rules, contexts, config, jobs=args.jobs)
    print(format_report(report, show_timing=not args.no_timing))

    if args.out:
        write_text(args.out, dump_json(report.to_dict(include_timing=not args.no_timing)))
        print(f"\n✓ Report written to {args.out}")
    return EXIT_OK


def cmd_gen(args) -> int:
    """Generate word graphs for annotated transcripts."""
    lexicon = load_lexicon(args.lexicon or DEFAULT_LEXICON)
    utterances = load_annotations(args.transcripts)
    params = GenParams(
        density=args.density,
        target_wa=args.target_wa,
        seed=args.seed,
        score_model=args.score_model,
    )
    graphs = generate_corpus(utterances, lexicon, params)
    CorpusStorage(args.out).save(utterances, graphs)

    measured = corpus_word_accuracy([(u, graphs[u.id]) for u in utterances])
    print(f"✓ Generated {len(graphs)} word graphs in {args.out}")
    print(f"  density={params.density} target_wa={params.target_wa:.1f} measured_wa={measured:.1f}")
    if abs(measured - params.target_wa) > 5.0:
        print("⚠ Measured word accuracy is more than 5 points off target")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
