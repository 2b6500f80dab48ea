"""
Synthetic word-graph corpus generator.

Each transcript becomes a "sausage" graph with one slot per spoken word:
the correct word plus ``density - 1`` distractors sampled from the
lexicon. At a controlled fraction of slots one distractor is scored
better than the correct word, which sets the 1-best word accuracy.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import WordNotInLexicon
from .grammar import Lexicon
from .models import Utterance
from .wordgraph import WordGraph, WordHypothesis

logger = logging.getLogger(__name__)

CORRECT_SCORE_RANGE = (15.0, 35.0)
DISTRACTOR_MARGIN = (0.5, 12.0)
FLIPPED_MARGIN = (0.5, 8.0)


class ScoreModel(Enum):
    """How the slots where a distractor wins are chosen."""

    STRATIFIED = "stratified"  # error diffusion over the corpus
    BERNOULLI = "bernoulli"  # independent flip per slot


@dataclass(frozen=True)
class GenParams:
    density: int = 4
    target_wa: float = 73.3
    seed: int = 0
    score_model: ScoreModel = ScoreModel.STRATIFIED

    def __post_init__(self):
        object.__setattr__(self, "score_model", ScoreModel(self.score_model))
        if isinstance(self.density, bool) or int(self.density) != self.density or self.density < 1:
            raise ValueError(f"density must be an integer >= 1, got {self.density}")
        if not 0.0 <= self.target_wa <= 100.0:
            raise ValueError(f"target_wa must be within [0, 100], got {self.target_wa}")

    @property
    def error_rate(self) -> float:
        return (100.0 - self.target_wa) / 100.0


class _ErrorSchedule:
    """Decides, slot by slot, whether a distractor beats the correct word."""

    def __init__(self, params: GenParams, rng: np.random.Generator):
        self.params = params
        self.rng = rng
        self.accumulator = rng.random()

    def next_flip(self) -> bool:
        p = self.params.error_rate
        if self.params.score_model == ScoreModel.BERNOULLI:
            return bool(self.rng.random() < p)
        self.accumulator += p
        if self.accumulator >= 1.0:
            self.accumulator -= 1.0
            return True
        return False


def _score(rng: np.random.Generator, low: float, high: float) -> float:
    return float(rng.uniform(low, high))


def _slot_edges(
    position: int,
    word: str,
    forms: Sequence[str],
    params: GenParams,
    flip: bool,
    rng: np.random.Generator,
) -> List[WordHypothesis]:
    start, end = position, position + 1
    correct = round(_score(rng, *CORRECT_SCORE_RANGE), 2)
    edges = [WordHypothesis(start, word, correct, end)]
    if params.density == 1:
        return edges

    pool = [form for form in forms if form != word]
    count = params.density - 1
    if count > len(pool):
        raise ValueError(
            f"density {params.density} needs {count} distractors, lexicon offers {len(pool)}"
        )
    distractors = [str(w) for w in rng.choice(pool, size=count, replace=False)]
    for k, distractor in enumerate(distractors):
        if flip and k == 0:
            rs = correct - _score(rng, *FLIPPED_MARGIN)
        else:
            rs = correct + _score(rng, *DISTRACTOR_MARGIN)
        edges.append(WordHypothesis(start, distractor, round(rs, 2), end))
    return edges


def check_transcripts(utterances: Sequence[Utterance], lexicon: Lexicon) -> None:
    for utterance in utterances:
        for word in utterance.words:
            if word not in lexicon:
                raise WordNotInLexicon(word, utterance.id)


def generate_graph(
    words: Sequence[str],
    lexicon: Lexicon,
    params: GenParams,
    schedule: _ErrorSchedule,
    rng: np.random.Generator,
) -> Tuple[WordGraph, int]:
    """One sausage graph and the number of slots where a distractor wins."""
    forms = lexicon.forms
    edges: List[WordHypothesis] = []
    flips = 0
    for position, word in enumerate(words, start=1):
        flip = schedule.next_flip() if params.density > 1 else False
        flips += flip
        edges.extend(_slot_edges(position, word, forms, params, flip, rng))
    edges.sort(key=lambda e: (e.start, e.word, e.rs))
    return WordGraph(edges), flips


def generate_corpus(
    utterances: Sequence[Utterance], lexicon: Lexicon, params: GenParams
) -> Dict[str, WordGraph]:
    """Graphs keyed by utterance id; deterministic for a fixed seed."""
    check_transcripts(utterances, lexicon)
    rng = np.random.default_rng(params.seed)
    schedule = _ErrorSchedule(params, rng)

    graphs: Dict[str, WordGraph] = {}
    slots = 0
    flips = 0
    for utterance in utterances:
        graph, flipped = generate_graph(utterance.words, lexicon, params, schedule, rng)
        graphs[utterance.id] = graph
        slots += len(utterance.words)
        flips += flipped

    logger.info(
        "generated %d graphs (density %d, %d of %d slots with a better distractor)",
        len(graphs),
        params.density,
        flips,
        slots,
    )
    return graphs
