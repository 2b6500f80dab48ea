"""
Partial-result selection for graphs without a complete parse.

Starting from the globally best chart edge, the best adjacent edges are
collected greedily to the left and then to the right until the sequence
spans the whole graph.
"""

import logging
from typing import Dict, List, Sequence

from .errors import CoverageGap
from .models import ChartEdge, PartialSequence
from .wordgraph import WordGraph

logger = logging.getLogger(__name__)


def _best(edges: Sequence[ChartEdge]) -> ChartEdge:
    return min(edges, key=ChartEdge.sort_key)


def select_partials(chart: Sequence[ChartEdge], graph: WordGraph) -> PartialSequence:
    """Greedy spanning sequence of partial results around the best edge.

    Raises CoverageGap when no chart edge touches the current boundary.
    """
    if not chart:
        raise CoverageGap(graph.start)

    ending_at: Dict[int, List[ChartEdge]] = {}
    starting_at: Dict[int, List[ChartEdge]] = {}
    for edge in chart:
        ending_at.setdefault(edge.end, []).append(edge)
        starting_at.setdefault(edge.start, []).append(edge)

    anchor = _best(chart)
    parts = [anchor]
    logger.debug("anchor %r", anchor)

    while parts[0].start != graph.start:
        candidates = ending_at.get(parts[0].start)
        if not candidates:
            raise CoverageGap(parts[0].start)
        parts.insert(0, _best(candidates))
        logger.debug("  <- %r", parts[0])

    while parts[-1].end != graph.final:
        candidates = starting_at.get(parts[-1].end)
        if not candidates:
            raise CoverageGap(parts[-1].end)
        parts.append(_best(candidates))
        logger.debug("  -> %r", parts[-1])

    logger.info("selected %d partial results", len(parts))
    return PartialSequence(parts=tuple(parts))
