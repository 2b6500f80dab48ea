"""
Word graph data model, file format and cost computations.

A word graph is a DAG of scored word hypotheses between integer time
nodes. Scores are costs: the smaller the score, the more probable the
hypothesis. Woods's "maximum score" vocabulary therefore maps onto
minimum cost here:

    Maxseg        == best_path_cost(g)          (cheapest start→final path)
    maxseg(i, j)  == best_segment_cost(g, i, j) (cheapest i→j path)
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import EmptyGraph, GraphValidationFailure, MalformedLine, NoPath

logger = logging.getLogger(__name__)

EDGE_PATTERN = re.compile(
    r"^\[(?P<start>-?\d+) (?P<word>\S+) (?P<score>-?(?:\d+(?:\.\d*)?|\.\d+)) (?P<end>-?\d+)\]$"
)


@dataclass(frozen=True)
class WordHypothesis:
    """One scored word hypothesis between two time nodes."""

    start: int
    word: str
    rs: float
    end: int

    def __str__(self) -> str:
        return f"[{self.start} {self.word} {self.rs:.2f} {self.end}]"


class WordGraph:
    """Immutable, validated word graph.

    Start and final nodes are inferred as the minimum and maximum node id.
    Segment costs for every reachable node pair are computed once at
    construction by dynamic programming over ascending node ids.
    """

    def __init__(
        self,
        edges: Iterable[WordHypothesis],
        line_numbers: Optional[Sequence[int]] = None,
    ):
        self._edges: Tuple[WordHypothesis, ...] = tuple(edges)
        if not self._edges:
            raise EmptyGraph()
        self._validate_edges(line_numbers)

        self._nodes: Tuple[int, ...] = tuple(
            sorted({e.start for e in self._edges} | {e.end for e in self._edges})
        )
        self._outgoing: Dict[int, Tuple[WordHypothesis, ...]] = {
            node: tuple(e for e in self._edges if e.start == node) for node in self._nodes
        }
        self._incoming: Dict[int, Tuple[WordHypothesis, ...]] = {
            node: tuple(e for e in self._edges if e.end == node) for node in self._nodes
        }
        self._graph = nx.MultiDiGraph()
        self._graph.add_nodes_from(self._nodes)
        for e in self._edges:
            self._graph.add_edge(e.start, e.end, word=e.word, rs=e.rs)
        self._validate_connectivity()

        self._costs: Dict[int, Dict[int, float]] = {}
        self._back: Dict[int, Dict[int, WordHypothesis]] = {}
        for source in self._nodes:
            self._costs[source], self._back[source] = self._single_source(source)

    def _validate_edges(self, line_numbers: Optional[Sequence[int]]) -> None:
        for index, e in enumerate(self._edges):
            line = line_numbers[index] if line_numbers else None
            if e.start < 1 or e.end < 1:
                raise GraphValidationFailure(f"node ids must be >= 1 in {e}", line)
            if e.start >= e.end:
                raise GraphValidationFailure(f"from >= to in {e}", line)
            if not e.rs > 0:
                raise GraphValidationFailure(f"non-positive score in {e}", line)
            if not e.word or any(ch.isspace() for ch in e.word):
                raise GraphValidationFailure(f"invalid word in {e}", line)
            if e.word != e.word.lower():
                raise GraphValidationFailure(f"word must be lowercase in {e}", line)

    def _validate_connectivity(self) -> None:
        for node in self._nodes:
            if node != self.final and not self._outgoing[node]:
                raise GraphValidationFailure(f"node {node} has no outgoing edge")
            if node != self.start and not self._incoming[node]:
                raise GraphValidationFailure(f"node {node} has no incoming edge")
        if not nx.has_path(self._graph, self.start, self.final):
            raise GraphValidationFailure(
                f"no path from start {self.start} to final {self.final}"
            )

    def _single_source(
        self, source: int
    ) -> Tuple[Dict[int, float], Dict[int, WordHypothesis]]:
        cost: Dict[int, float] = {source: 0.0}
        back: Dict[int, WordHypothesis] = {}
        for node in self._nodes:
            if node < source or node not in cost:
                continue
            for e in self._outgoing[node]:
                candidate = cost[node] + e.rs
                if e.end not in cost or candidate < cost[e.end]:
                    cost[e.end] = candidate
                    back[e.end] = e
        return cost, back

    @property
    def edges(self) -> Tuple[WordHypothesis, ...]:
        return self._edges

    @property
    def nodes(self) -> Tuple[int, ...]:
        return self._nodes

    @property
    def start(self) -> int:
        return self._nodes[0]

    @property
    def final(self) -> int:
        return self._nodes[-1]

    def edges_from(self, node: int) -> Tuple[WordHypothesis, ...]:
        return self._outgoing.get(node, ())

    def edges_to(self, node: int) -> Tuple[WordHypothesis, ...]:
        return self._incoming.get(node, ())

    def segment_cost(self, i: int, j: int) -> float:
        if i >= j or i not in self._costs or j not in self._costs[i]:
            raise NoPath(i, j)
        return self._costs[i][j]

    def segment_path(self, i: int, j: int) -> List[WordHypothesis]:
        self.segment_cost(i, j)
        path: List[WordHypothesis] = []
        node = j
        back = self._back[i]
        while node != i:
            e = back[node]
            path.append(e)
            node = e.start
        path.reverse()
        return path

    def to_networkx(self) -> nx.MultiDiGraph:
        """A copy of the graph as a networkx multigraph (edge data: word, rs)."""
        return self._graph.copy()

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WordGraph):
            return NotImplemented
        return self._edges == other._edges

    def __hash__(self) -> int:
        return hash(self._edges)

    def __repr__(self) -> str:
        return (
            f"WordGraph(nodes={len(self._nodes)}, edges={len(self._edges)}, "
            f"start={self.start}, final={self.final})"
        )


def parse_graph_file(text: str) -> WordGraph:
    """Parse the line-based graph format (``[1 er 22.08 2]`` per line)."""
    edges: List[WordHypothesis] = []
    line_numbers: List[int] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        match = EDGE_PATTERN.match(line)
        if not match:
            raise MalformedLine(line_number, line)
        edges.append(
            WordHypothesis(
                start=int(match.group("start")),
                word=match.group("word"),
                rs=float(match.group("score")),
                end=int(match.group("end")),
            )
        )
        line_numbers.append(line_number)

    graph = WordGraph(edges, line_numbers=line_numbers)
    logger.debug("parsed %r", graph)
    return graph


def serialize_graph(g: WordGraph) -> str:
    """Inverse of parse_graph_file; scores are written with 2 decimals."""
    return "".join(f"{e}\n" for e in g.edges)


def best_path_cost(g: WordGraph) -> float:
    """Maxseg: cost of the cheapest start→final path."""
    return g.segment_cost(g.start, g.final)


def best_segment_cost(g: WordGraph, i: int, j: int) -> float:
    """maxseg(i, j): cost of the cheapest i→j path. Raises NoPath."""
    return g.segment_cost(i, j)


def best_path(g: WordGraph) -> List[WordHypothesis]:
    """The cheapest start→final path itself (the 1-best hypothesis)."""
    return g.segment_path(g.start, g.final)


def topological_nodes(g: WordGraph) -> List[int]:
    """Ascending node ids; a valid topological order since from < to."""
    return list(g.nodes)
