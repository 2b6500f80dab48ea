"""
Score arithmetic for chart edges.

Recognition scores are costs, so every quantity here is "smaller is
better". The integrated quality score of an edge E is

    QS(E) = Q_a(E) / (sc(E) * pr(E)),   Q_a(E) = sf(E) / length(E)
    sf(E) = Maxseg - maxseg(from, to) + RS(E)
"""

from decimal import ROUND_HALF_EVEN, Decimal

from .errors import NonPositiveDivisor, ZeroLength
from .featstruct import Value
from .grammar import Constituent
from .models import LengthMode, PredictionList, ScMode, ScoreBreakdown, ScoreConfig
from .predictions import matches
from .wordgraph import WordGraph, best_path_cost, best_segment_cost

TWO_PLACES = Decimal("0.01")
# float noise below this many decimals is discarded before display rounding
NOISE_DIGITS = 9


def shortfall(maxseg_total: float, maxseg_segment: float, rs: float) -> float:
    return maxseg_total - maxseg_segment + rs


def acoustic_quality(sf: float, length: int) -> float:
    if length < 1:
        raise ZeroLength(f"edge length must be >= 1, got {length}")
    return sf / length


def pragmatic_relevance(sem: Value, preds: PredictionList, cfg: ScoreConfig) -> float:
    return cfg.pr_match if matches(sem, preds) else cfg.pr_nomatch


def syntactic_completeness(c: Constituent, cfg: ScoreConfig) -> float:
    if cfg.sc_mode == ScMode.VALENCE_RATIO:
        return (c.consumed + 1) / (c.total_valence + 1)
    return 1.0


def combine_rs(rs1: float, rs2: float) -> float:
    return rs1 + rs2


def quality_score(q_a: float, sc: float, pr: float) -> float:
    if not (sc > 0 and pr > 0):
        raise NonPositiveDivisor(f"sc ({sc}) and pr ({pr}) must both be positive")
    return q_a / (sc * pr)


def display_score(x: float) -> Decimal:
    """Two decimals, round-half-to-even, as reported to users."""
    return Decimal(repr(round(x, NOISE_DIGITS))).quantize(TWO_PLACES, rounding=ROUND_HALF_EVEN)


def edge_length(words_count: int, cfg: ScoreConfig) -> int:
    if cfg.length_mode == LengthMode.WORD_COUNT:
        return words_count
    raise NotImplementedError(cfg.length_mode)


def score_edge(
    graph: WordGraph,
    start: int,
    end: int,
    constituent: Constituent,
    words_count: int,
    rs: float,
    preds: PredictionList,
    cfg: ScoreConfig,
) -> ScoreBreakdown:
    """All score terms of an edge spanning ``start``→``end`` in ``graph``."""
    sf = shortfall(best_path_cost(graph), best_segment_cost(graph, start, end), rs)
    length = edge_length(words_count, cfg)
    q_a = acoustic_quality(sf, length)
    sc = syntactic_completeness(constituent, cfg)
    pr = pragmatic_relevance(constituent.sem, preds, cfg)
    return ScoreBreakdown(
        rs=rs, sf=sf, q_a=q_a, sc=sc, pr=pr, qs=quality_score(q_a, sc, pr), length=length
    )
