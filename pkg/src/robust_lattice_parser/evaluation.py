"""
Information Content metric and the with/without-predictions corpus run.

IC = 100 * (1 - (i + s + d) / items), where items counts the reference
TRI pairs and i, s, d are insertions, substitutions and deletions of the
parser output aligned against the reference.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import editdistance

from .chart import parse, results
from .config import AppConfig
from .errors import EmptyCorpus, EmptyReference, LatticeParserError, UnknownContext
from .grammar import Lexicon
from .models import (
    CorpusReport,
    IcCounts,
    ParseStatus,
    PredictionList,
    TriPair,
    TriSet,
    TrcMappingRule,
    Utterance,
    UtteranceResult,
)
from .predictions import NO_CONTEXT, empty_predictions
from .sil import build_sil, sil_to_tri
from .wordgraph import WordGraph, best_path

logger = logging.getLogger(__name__)


def align_tri(rtri: TriSet, ptri: TriSet) -> IcCounts:
    """Attribute-keyed bag alignment.

    Exact attr+value matches are consumed first, then output pairs sharing
    only the attribute count as substitutions; leftover reference pairs
    are deletions, leftover output pairs insertions.
    """
    reference: List[Optional[TriPair]] = list(rtri)
    leftover: List[TriPair] = []
    for pair in ptri:
        if pair in reference:
            reference[reference.index(pair)] = None
        else:
            leftover.append(pair)

    insertions = 0
    substitutions = 0
    for pair in leftover:
        slot = next(
            (k for k, ref in enumerate(reference) if ref is not None and ref.attr == pair.attr),
            None,
        )
        if slot is None:
            insertions += 1
        else:
            reference[slot] = None
            substitutions += 1

    deletions = sum(1 for ref in reference if ref is not None)
    return IcCounts(
        items=len(rtri),
        insertions=insertions,
        substitutions=substitutions,
        deletions=deletions,
    )


def ic_score(rtri: TriSet, ptri: TriSet) -> IcCounts:
    if not len(rtri):
        raise EmptyReference()
    return align_tri(rtri, ptri)


def word_accuracy(reference: Sequence[str], hypothesis: Sequence[str]) -> float:
    """Word accuracy in percent from the token edit distance."""
    if not reference:
        raise ValueError("reference word sequence is empty")
    errors = editdistance.eval(list(reference), list(hypothesis))
    return 100.0 * (1.0 - errors / len(reference))


def corpus_word_accuracy(pairs: Sequence[Tuple[Utterance, WordGraph]]) -> float:
    """1-best word accuracy over a corpus, pooled over all reference words."""
    errors = 0
    words = 0
    for utterance, graph in pairs:
        hypothesis = [e.word for e in best_path(graph)]
        errors += editdistance.eval(utterance.words, hypothesis)
        words += len(utterance.words)
    if not words:
        raise EmptyCorpus("no reference words")
    return 100.0 * (1.0 - errors / words)


def extract_tri(
    graph: WordGraph,
    lexicon: Lexicon,
    rules: Sequence[TrcMappingRule],
    predictions: PredictionList,
    config: AppConfig,
) -> Tuple[TriSet, str]:
    """Parse one graph and translate the selected results into PTRI."""
    outcome = parse(
        graph,
        lexicon,
        predictions,
        config.score,
        config.result_categories,
        config.max_steps,
    )
    selected = results(outcome, graph)
    ptri = sil_to_tri([build_sil(e) for e in selected], rules)
    status = outcome.status.value
    if outcome.status == ParseStatus.PARTIAL:
        status = f"{status}({len(selected)} parts)"
    return ptri, status


def _timed_run(
    utterance: Utterance,
    graph: WordGraph,
    lexicon: Lexicon,
    rules: Sequence[TrcMappingRule],
    predictions: PredictionList,
    config: AppConfig,
) -> Tuple[IcCounts, TriSet, str, float]:
    began = time.perf_counter()
    try:
        ptri, status = extract_tri(graph, lexicon, rules, predictions, config)
    except LatticeParserError as e:
        logger.warning("utterance %s (%s): %s", utterance.id, predictions.label, e)
        elapsed = (time.perf_counter() - began) * 1000.0
        counts = IcCounts(items=len(utterance.rtri), deletions=len(utterance.rtri))
        return counts, TriSet(), "error", elapsed
    elapsed = (time.perf_counter() - began) * 1000.0
    return align_tri(utterance.rtri, ptri), ptri, status, elapsed


def evaluate_utterance(
    utterance: Utterance,
    graph: WordGraph,
    lexicon: Lexicon,
    rules: Sequence[TrcMappingRule],
    predictions: PredictionList,
    config: Optional[AppConfig] = None,
) -> UtteranceResult:
    """Parse once without and once with the utterance's predictions."""
    config = config or AppConfig()
    without, ptri_without, status_without, t_without = _timed_run(
        utterance, graph, lexicon, rules, empty_predictions(), config
    )
    with_preds, ptri_with, status_with, t_with = _timed_run(
        utterance, graph, lexicon, rules, predictions, config
    )
    return UtteranceResult(
        utterance_id=utterance.id,
        words=len(utterance.words),
        context=utterance.context,
        without=without,
        with_predictions=with_preds,
        ptri_without=ptri_without,
        ptri_with=ptri_with,
        status_without=status_without,
        status_with=status_with,
        time_without_ms=t_without,
        time_with_ms=t_with,
    )


def run_corpus(
    corpus: Sequence[Tuple[Utterance, WordGraph]],
    lexicon: Lexicon,
    rules: Sequence[TrcMappingRule],
    contexts: Mapping[str, PredictionList],
    config: Optional[AppConfig] = None,
    jobs: int = 1,
) -> CorpusReport:
    """Evaluate every utterance both ways; rows keep corpus order."""
    if not corpus:
        raise EmptyCorpus()
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    for utterance, _ in corpus:
        if utterance.context != NO_CONTEXT and utterance.context not in contexts:
            raise UnknownContext(utterance.context, utterance.id)

    def _evaluate(index: int) -> UtteranceResult:
        utterance, graph = corpus[index]
        preds = contexts.get(utterance.context, empty_predictions())
        return evaluate_utterance(utterance, graph, lexicon, rules, preds, config)

    logger.info("evaluating %d utterances with %d job(s)", len(corpus), jobs)
    rows: Dict[int, UtteranceResult] = {}
    if jobs == 1:
        for index in range(len(corpus)):
            rows[index] = _evaluate(index)
    else:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            fut_to_idx = {executor.submit(_evaluate, idx): idx for idx in range(len(corpus))}
            for fut in as_completed(fut_to_idx):
                rows[fut_to_idx[fut]] = fut.result()

    report = CorpusReport(rows=[rows[idx] for idx in range(len(corpus))])
    logger.info(
        "corpus IC without predictions %s, with predictions %s",
        _format_ic(report.micro_ic_without),
        _format_ic(report.micro_ic_with),
    )
    return report


def _format_ic(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.2f}"


def format_report(report: CorpusReport, show_timing: bool = True) -> str:
    """Aligned text table with ic-pr, t-pr, ic+pr, t+pr columns."""
    id_width = max([len("id")] + [len(r.utterance_id) for r in report.rows])
    header = f"{'id':<{id_width}}  {'words':>5}  {'ic-pr':>7}  {'ic+pr':>7}"
    if show_timing:
        header += f"  {'t-pr':>8}  {'t+pr':>8}"
    header += "  context"
    lines = [header, "-" * len(header)]

    def row(name: str, words: str, ic_without, ic_with, t_without, t_with, context):
        line = f"{name:<{id_width}}  {words:>5}  {_format_ic(ic_without):>7}  {_format_ic(ic_with):>7}"
        if show_timing:
            line += f"  {t_without:>8.1f}  {t_with:>8.1f}"
        return line + f"  {context}"

    for r in report.rows:
        lines.append(
            row(
                r.utterance_id,
                str(r.words),
                r.without.ic,
                r.with_predictions.ic,
                r.time_without_ms,
                r.time_with_ms,
                r.context,
            )
        )
    lines.append("-" * len(header))
    lines.append(
        row(
            "micro",
            "",
            report.micro_ic_without,
            report.micro_ic_with,
            report.mean_time_without_ms,
            report.mean_time_with_ms,
            f"{len(report.rows)} utterances",
        )
    )
    lines.append(
        row(
            "macro",
            "",
            report.macro_ic_without,
            report.macro_ic_with,
            report.mean_time_without_ms,
            report.mean_time_with_ms,
            "",
        ).rstrip()
    )
    for name, stats in report.by_length_class().items():
        lines.append(
            f"{name}: {stats['utterances']} utterances, "
            f"ic-pr {_format_ic(stats['ic_without'])}, ic+pr {_format_ic(stats['ic_with'])}"
        )
    return "\n".join(lines)
