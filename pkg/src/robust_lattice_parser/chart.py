"""
Agenda-driven best-first island chart parser over a word graph.

The chart starts out with one edge per (word hypothesis, lexical entry).
Each step pops the best agenda edge, adds it to the chart and tries
function application in both directions against every adjacent chart
edge, so constituents grow outward from the best-scored islands.
"""

import heapq
import itertools
import logging
from collections import defaultdict
from typing import (
    AbstractSet,
    Dict,
    Hashable,
    Iterable,
    List,
    Optional,
    Tuple,
    Union,
)

from . import featstruct
from .errors import UnknownWord
from .grammar import Direction, LexicalEntry, Lexicon, apply, lexical_constituent
from .models import (
    ChartEdge,
    Derivation,
    ParseOutcome,
    ParseStatus,
    PredictionList,
    ScoreConfig,
)
from .predictions import empty_predictions, matches, seed_rank
from .robust import select_partials
from .scoring import combine_rs, score_edge
from .wordgraph import WordGraph

logger = logging.getLogger(__name__)

PackingKey = Tuple[Hashable, ...]


def packing_key(edge: ChartEdge) -> PackingKey:
    """Edges with equal keys are interchangeable except for their rs."""
    c = edge.constituent
    return (
        edge.start,
        edge.end,
        c.cat.major,
        c.remaining_valence,
        c.consumed,
        len(edge.words),
        featstruct.canonical_key(c.sem),
    )


class ChartParser:
    """Parser state for one word graph."""

    def __init__(
        self,
        graph: WordGraph,
        lexicon: Union[Lexicon, Iterable[LexicalEntry]],
        predictions: Optional[PredictionList] = None,
        config: Optional[ScoreConfig] = None,
        result_categories: Optional[AbstractSet[str]] = None,
    ):
        self.graph = graph
        self.lexicon = lexicon if isinstance(lexicon, Lexicon) else Lexicon(lexicon)
        self.predictions = predictions if predictions is not None else empty_predictions()
        self.config = config or ScoreConfig()
        self.result_categories = (
            frozenset(result_categories) if result_categories is not None else None
        )

        self.chart: List[ChartEdge] = []
        self.steps_used = 0
        self._agenda: List[Tuple] = []
        self._counter = itertools.count()
        self._best: Dict[PackingKey, ChartEdge] = {}
        self._by_start: Dict[int, List[ChartEdge]] = defaultdict(list)
        self._by_end: Dict[int, List[ChartEdge]] = defaultdict(list)
        self._lexical: List[ChartEdge] = []
        self._in_chart: Dict[PackingKey, ChartEdge] = {}
        self._initialized = False

    def _make_edge(
        self,
        start: int,
        end: int,
        constituent,
        words: Tuple[str, ...],
        rs: float,
        derivation: Derivation,
    ) -> ChartEdge:
        scores = score_edge(
            self.graph,
            start,
            end,
            constituent,
            len(words),
            rs,
            self.predictions,
            self.config,
        )
        return ChartEdge(
            start=start,
            end=end,
            constituent=constituent,
            words=words,
            scores=scores,
            derivation=derivation,
            predicted=matches(constituent.sem, self.predictions),
        )

    def _enqueue(self, edge: ChartEdge) -> bool:
        key = packing_key(edge)
        known = self._best.get(key)
        if known is not None and not edge.scores.rs < known.scores.rs:
            return False
        self._best[key] = edge
        priority = (
            0 if edge.predicted else 1,
            edge.scores.qs,
            -(edge.end - edge.start),
            edge.words,
            next(self._counter),
        )
        heapq.heappush(self._agenda, (priority, edge))
        return True

    def initialize(self) -> "ChartParser":
        """Score every lexical edge and seed the agenda."""
        lexical: List[ChartEdge] = []
        for hypothesis in self.graph.edges:
            entries = self.lexicon.lookup(hypothesis.word)
            if not entries:
                raise UnknownWord(hypothesis.word, hypothesis)
            for entry in entries:
                lexical.append(
                    self._make_edge(
                        hypothesis.start,
                        hypothesis.end,
                        lexical_constituent(entry),
                        (hypothesis.word,),
                        hypothesis.rs,
                        Derivation(hypothesis=hypothesis),
                    )
                )

        for edge in seed_rank(lexical, self.predictions):
            if self._enqueue(edge):
                self._lexical.append(edge)
        self._initialized = True
        logger.info(
            "initialized chart: %d lexical edges, %d predictions (%s)",
            len(self._lexical),
            len(self.predictions),
            self.predictions.label,
        )
        return self

    @property
    def agenda_size(self) -> int:
        return len(self._agenda)

    def _pop(self) -> Optional[ChartEdge]:
        while self._agenda:
            _, edge = heapq.heappop(self._agenda)
            if self._best.get(packing_key(edge)) is edge:
                return edge
        return None

    def _combine(self, functor: ChartEdge, argument: ChartEdge, side: Direction) -> None:
        constituent = apply(functor.constituent, argument.constituent, side)
        if constituent is None:
            return
        left, right = (argument, functor) if side == Direction.LEFT else (functor, argument)
        edge = self._make_edge(
            left.start,
            right.end,
            constituent,
            left.words + right.words,
            combine_rs(functor.scores.rs, argument.scores.rs),
            Derivation(functor=functor, argument=argument, side=side),
        )
        if self._enqueue(edge):
            logger.debug("  + %r", edge)

    def _supersede(self, edge: ChartEdge) -> None:
        """Drop the chart edge that ``edge`` packs with, if any.

        Edges derived from the dropped one are replaced in turn once the
        cheaper edge has recombined with the same neighbours.
        """
        key = packing_key(edge)
        old = self._in_chart.get(key)
        self._in_chart[key] = edge
        if old is None:
            return
        logger.debug("  superseded %r", old)
        self.chart = [e for e in self.chart if e is not old]
        self._by_start[old.start] = [e for e in self._by_start[old.start] if e is not old]
        self._by_end[old.end] = [e for e in self._by_end[old.end] if e is not old]

    def step(self) -> Optional[ChartEdge]:
        """Move the best agenda edge into the chart and combine it.

        Returns the popped edge, or None when the agenda is exhausted.
        """
        if not self._initialized:
            self.initialize()
        edge = self._pop()
        if edge is None:
            return None
        self.steps_used += 1
        logger.debug("step %d: %r", self.steps_used, edge)

        self._supersede(edge)
        self.chart.append(edge)
        left_neighbours = list(self._by_end[edge.start])
        right_neighbours = list(self._by_start[edge.end])
        self._by_start[edge.start].append(edge)
        self._by_end[edge.end].append(edge)

        for other in left_neighbours:
            self._combine(edge, other, Direction.LEFT)
            self._combine(other, edge, Direction.RIGHT)
        for other in right_neighbours:
            self._combine(edge, other, Direction.RIGHT)
            self._combine(other, edge, Direction.LEFT)
        return edge

    def is_solution(self, edge: ChartEdge) -> bool:
        if edge.start != self.graph.start or edge.end != self.graph.final:
            return False
        if not edge.saturated:
            return False
        return self.result_categories is None or edge.category in self.result_categories

    def run(self, max_steps: Optional[int] = None) -> ParseOutcome:
        """Step until the agenda is empty or ``max_steps`` steps were taken."""
        if max_steps is not None and max_steps < 1:
            raise ValueError(f"max_steps must be positive, got {max_steps}")
        if not self._initialized:
            self.initialize()

        while max_steps is None or self.steps_used < max_steps:
            if self.step() is None:
                break

        chart = list(self.chart)
        in_chart = {id(e) for e in chart}
        chart.extend(
            e
            for e in self._lexical
            if id(e) not in in_chart and self._best.get(packing_key(e)) is e
        )

        solutions = sorted((e for e in chart if self.is_solution(e)), key=ChartEdge.sort_key)
        status = ParseStatus.COMPLETE if solutions else ParseStatus.PARTIAL
        logger.info(
            "parse %s after %d steps: %d chart edges, %d complete solutions",
            status.value,
            self.steps_used,
            len(chart),
            len(solutions),
        )
        return ParseOutcome(
            status=status,
            complete_solutions=solutions,
            chart=chart,
            steps_used=self.steps_used,
        )


def initialize(
    graph: WordGraph,
    lexicon: Union[Lexicon, Iterable[LexicalEntry]],
    predictions: Optional[PredictionList] = None,
    config: Optional[ScoreConfig] = None,
    result_categories: Optional[AbstractSet[str]] = None,
) -> ChartParser:
    return ChartParser(graph, lexicon, predictions, config, result_categories).initialize()


def step(state: ChartParser) -> ChartParser:
    state.step()
    return state


def run(state: ChartParser, max_steps: Optional[int] = None) -> ParseOutcome:
    return state.run(max_steps)


def parse(
    graph: WordGraph,
    lexicon: Union[Lexicon, Iterable[LexicalEntry]],
    predictions: Optional[PredictionList] = None,
    config: Optional[ScoreConfig] = None,
    result_categories: Optional[AbstractSet[str]] = None,
    max_steps: Optional[int] = None,
) -> ParseOutcome:
    return initialize(graph, lexicon, predictions, config, result_categories).run(max_steps)


def best_solution(outcome: ParseOutcome) -> Optional[ChartEdge]:
    return outcome.best


def results(outcome: ParseOutcome, graph: WordGraph) -> List[ChartEdge]:
    """The selected results: the best complete solution or a partial sequence."""
    if outcome.status == ParseStatus.COMPLETE:
        return [outcome.best]
    return list(select_partials(outcome.chart, graph).parts)
