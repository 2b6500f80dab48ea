"""
Data structures shared across the lattice parser.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

from nltk.featstruct import FeatStruct

from . import featstruct
from .errors import ConfigError
from .featstruct import Atom
from .grammar import Constituent, Direction
from .wordgraph import WordHypothesis


class ScMode(Enum):
    """How syntactic completeness is computed."""

    CONSTANT_ONE = "constant-one"
    VALENCE_RATIO = "valence-ratio"


class LengthMode(Enum):
    WORD_COUNT = "word-count"


class ParseStatus(Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"


@dataclass(frozen=True)
class ScoreConfig:
    """Weights of the integrated quality score."""

    pr_match: float = 4.0
    pr_nomatch: float = 1.0
    sc_mode: ScMode = ScMode.CONSTANT_ONE
    length_mode: LengthMode = LengthMode.WORD_COUNT

    def __post_init__(self):
        """Coerce string modes and check pr_match >= pr_nomatch > 0, both finite."""
        try:
            object.__setattr__(self, "sc_mode", ScMode(self.sc_mode))
        except ValueError:
            raise ConfigError(
                f"Invalid sc_mode: {self.sc_mode}. "
                f"Must be one of: {', '.join(m.value for m in ScMode)}"
            )
        try:
            object.__setattr__(self, "length_mode", LengthMode(self.length_mode))
        except ValueError:
            raise ConfigError(
                f"Invalid length_mode: {self.length_mode}. Only 'word-count' is supported"
            )
        for name in ("pr_match", "pr_nomatch"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite, got {getattr(self, name)}")
        if not self.pr_nomatch > 0:
            raise ConfigError(f"pr_nomatch must be positive, got {self.pr_nomatch}")
        if self.pr_match < self.pr_nomatch:
            raise ConfigError(
                f"pr_match ({self.pr_match}) must be >= pr_nomatch ({self.pr_nomatch})"
            )


@dataclass(frozen=True)
class ScoreBreakdown:
    """Every term of the quality score of one chart edge."""

    rs: float
    sf: float
    q_a: float
    sc: float
    pr: float
    qs: float
    length: int


@dataclass(frozen=True, eq=False)
class Derivation:
    """Either a leaf hypothesis or a functor/argument pair of child edges."""

    hypothesis: Optional[WordHypothesis] = None
    functor: Optional["ChartEdge"] = None
    argument: Optional["ChartEdge"] = None
    side: Optional[Direction] = None  # where the argument stood

    @property
    def is_leaf(self) -> bool:
        return self.hypothesis is not None

    @property
    def children(self) -> Tuple["ChartEdge", ...]:
        """Child edges in surface order."""
        if self.is_leaf:
            return ()
        if self.side == Direction.LEFT:
            return (self.argument, self.functor)
        return (self.functor, self.argument)


@dataclass(frozen=True, eq=False)
class ChartEdge:
    """An inactive chart edge: a scored constituent over a node span."""

    start: int
    end: int
    constituent: Constituent
    words: Tuple[str, ...]
    scores: ScoreBreakdown
    derivation: Derivation
    predicted: bool = False  # semantics unify with a prediction

    @property
    def category(self) -> str:
        return self.constituent.cat.major

    @property
    def saturated(self) -> bool:
        return self.constituent.saturated

    @property
    def string(self) -> str:
        return "_".join(self.words)

    @property
    def qs(self) -> float:
        return self.scores.qs

    def sort_key(self) -> Tuple[float, int, Tuple[str, ...]]:
        """Lower QS first, then longer span, then smaller word sequence."""
        return (self.scores.qs, -(self.end - self.start), self.words)

    def leaves(self) -> List[WordHypothesis]:
        if self.derivation.is_leaf:
            return [self.derivation.hypothesis]
        return [leaf for child in self.derivation.children for leaf in child.leaves()]

    def __repr__(self) -> str:
        return (
            f"ChartEdge({self.start}->{self.end} {self.constituent.signature()} "
            f"{self.string!r} qs={self.scores.qs:.4f})"
        )


@dataclass
class ParseOutcome:
    """Result of running the chart parser on one graph."""

    status: ParseStatus
    complete_solutions: List[ChartEdge] = field(default_factory=list)
    chart: List[ChartEdge] = field(default_factory=list)
    steps_used: int = 0

    @property
    def best(self) -> Optional[ChartEdge]:
        return self.complete_solutions[0] if self.complete_solutions else None


@dataclass(frozen=True)
class PartialSequence:
    """Contiguous run of partial results spanning a whole graph."""

    parts: Tuple[ChartEdge, ...]

    @property
    def covers(self) -> Tuple[int, int]:
        return (self.parts[0].start, self.parts[-1].end)

    def is_contiguous(self) -> bool:
        return all(a.end == b.start for a, b in zip(self.parts, self.parts[1:]))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[ChartEdge]:
        return iter(self.parts)


@dataclass(frozen=True, eq=False)
class PredictionList:
    """Semantic structures expected in the next user turn."""

    items: Tuple[FeatStruct, ...] = ()
    label: str = "none"

    def __len__(self) -> int:
        return len(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)


@dataclass(frozen=True)
class SilSyntax:
    id: str
    category: str
    string: str
    score: float


@dataclass(frozen=True, eq=False)
class SilStructure:
    """One result in Semantic Interface Language form."""

    id: str
    syn: SilSyntax
    sem: FeatStruct  # carries the co-indexed id attribute

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "syn": {
                "id": self.syn.id,
                "category": self.syn.category,
                "string": self.syn.string,
                "score": self.syn.score,
            },
            "sem": featstruct.to_json(self.sem),
        }


@dataclass(frozen=True)
class TriPair:
    """Task-relevant information: one attribute-value pair."""

    attr: str
    value: Atom

    def __post_init__(self):
        if not isinstance(self.attr, str) or not self.attr:
            raise ValueError(f"TRI attribute must be a non-empty string, got {self.attr!r}")
        if not featstruct.is_atom(self.value):
            raise ValueError(f"TRI value must be an atom, got {self.value!r}")

    def __str__(self) -> str:
        return f"{self.attr}:{self.value}"


@dataclass(frozen=True)
class TriSet:
    """A bag of TRI pairs (duplicates allowed)."""

    pairs: Tuple[TriPair, ...] = ()

    @classmethod
    def of(cls, *pairs: Tuple[str, Atom]) -> "TriSet":
        return cls(tuple(TriPair(attr, value) for attr, value in pairs))

    @classmethod
    def from_json(cls, data: Any) -> "TriSet":
        if not isinstance(data, list):
            raise ValueError(f"TRI set must be a list, got {data!r}")
        pairs = []
        for item in data:
            if not isinstance(item, dict) or set(item) != {"attr", "value"}:
                raise ValueError(f"TRI pair must be {{attr, value}}, got {item!r}")
            pairs.append(TriPair(item["attr"], item["value"]))
        return cls(tuple(pairs))

    def to_json(self) -> List[Dict[str, Atom]]:
        return [{"attr": p.attr, "value": p.value} for p in self.pairs]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[TriPair]:
        return iter(self.pairs)

    def __str__(self) -> str:
        return "[" + ", ".join(str(p) for p in self.pairs) + "]"


@dataclass(frozen=True, eq=False)
class TrcMappingRule:
    """Maps a matching semantic structure to one TRI pair."""

    pattern: FeatStruct
    attr: str
    value_path: str


@dataclass(frozen=True)
class IcCounts:
    """Error counts of one reference/output alignment."""

    items: int = 0
    insertions: int = 0
    substitutions: int = 0
    deletions: int = 0

    @property
    def errors(self) -> int:
        return self.insertions + self.substitutions + self.deletions

    @property
    def ic(self) -> Optional[float]:
        """Information content in percent; None for an empty reference."""
        if self.items == 0:
            return None
        return 100.0 * (1.0 - self.errors / self.items)

    def __add__(self, other: "IcCounts") -> "IcCounts":
        return IcCounts(
            items=self.items + other.items,
            insertions=self.insertions + other.insertions,
            substitutions=self.substitutions + other.substitutions,
            deletions=self.deletions + other.deletions,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "items": self.items,
            "i": self.insertions,
            "s": self.substitutions,
            "d": self.deletions,
            "ic": self.ic,
        }


@dataclass(frozen=True)
class Utterance:
    """An annotated corpus utterance."""

    id: str
    transcript: str
    context: str
    rtri: TriSet

    @property
    def words(self) -> List[str]:
        return self.transcript.split()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "transcript": self.transcript,
            "context": self.context,
            "rtri": self.rtri.to_json(),
        }


SHORT_UTTERANCE_MAX_WORDS = 2


@dataclass
class UtteranceResult:
    """Both evaluation runs of one utterance."""

    utterance_id: str
    words: int
    context: str
    without: IcCounts
    with_predictions: IcCounts
    ptri_without: TriSet = field(default_factory=TriSet)
    ptri_with: TriSet = field(default_factory=TriSet)
    status_without: str = ""
    status_with: str = ""
    time_without_ms: float = 0.0
    time_with_ms: float = 0.0

    @property
    def length_class(self) -> str:
        return "short" if self.words <= SHORT_UTTERANCE_MAX_WORDS else "long"

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        row = {
            "id": self.utterance_id,
            "words": self.words,
            "context": self.context,
            "without": self.without.to_dict(),
            "with": self.with_predictions.to_dict(),
            "ptri_without": [str(p) for p in self.ptri_without],
            "ptri_with": [str(p) for p in self.ptri_with],
            "status_without": self.status_without,
            "status_with": self.status_with,
        }
        if include_timing:
            row["t_without_ms"] = self.time_without_ms
            row["t_with_ms"] = self.time_with_ms
        return row


def _sum_counts(counts: List[IcCounts]) -> IcCounts:
    total = IcCounts()
    for c in counts:
        total = total + c
    return total


def _macro(counts: List[IcCounts]) -> Optional[float]:
    values = [c.ic for c in counts if c.ic is not None]
    return sum(values) / len(values) if values else None


@dataclass
class CorpusReport:
    """Per-utterance rows and aggregates of a with/without-predictions run."""

    rows: List[UtteranceResult] = field(default_factory=list)

    @property
    def total_without(self) -> IcCounts:
        return _sum_counts([r.without for r in self.rows])

    @property
    def total_with(self) -> IcCounts:
        return _sum_counts([r.with_predictions for r in self.rows])

    @property
    def micro_ic_without(self) -> Optional[float]:
        return self.total_without.ic

    @property
    def micro_ic_with(self) -> Optional[float]:
        return self.total_with.ic

    @property
    def macro_ic_without(self) -> Optional[float]:
        return _macro([r.without for r in self.rows])

    @property
    def macro_ic_with(self) -> Optional[float]:
        return _macro([r.with_predictions for r in self.rows])

    @property
    def mean_time_without_ms(self) -> float:
        return sum(r.time_without_ms for r in self.rows) / len(self.rows) if self.rows else 0.0

    @property
    def mean_time_with_ms(self) -> float:
        return sum(r.time_with_ms for r in self.rows) / len(self.rows) if self.rows else 0.0

    def by_length_class(self) -> Dict[str, Dict[str, Any]]:
        """Micro IC both ways for short (1-2 word) and long utterances."""
        classes: Dict[str, Dict[str, Any]] = {}
        for name in ("short", "long"):
            rows = [r for r in self.rows if r.length_class == name]
            classes[name] = {
                "utterances": len(rows),
                "ic_without": _sum_counts([r.without for r in rows]).ic,
                "ic_with": _sum_counts([r.with_predictions for r in rows]).ic,
            }
        return classes

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        summary: Dict[str, Any] = {
            "utterances": len(self.rows),
            "micro_ic_without": self.micro_ic_without,
            "micro_ic_with": self.micro_ic_with,
            "macro_ic_without": self.macro_ic_without,
            "macro_ic_with": self.macro_ic_with,
            "by_length": self.by_length_class(),
        }
        result: Dict[str, Any] = {
            "summary": summary,
            "utterances": [r.to_dict(include_timing) for r in self.rows],
        }
        if include_timing:
            result["timing"] = {
                "mean_t_without_ms": self.mean_time_without_ms,
                "mean_t_with_ms": self.mean_time_with_ms,
            }
        return result
