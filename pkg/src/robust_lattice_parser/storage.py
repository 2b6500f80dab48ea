"""
File storage for graphs, grammars, predictions, rules and corpora.
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import yaml  # type: ignore

from .errors import CorpusMismatch, EmptyCorpus, MalformedAnnotation, MalformedPrediction
from .grammar import Lexicon, load_lexicon as parse_lexicon
from .models import PredictionList, TriSet, TrcMappingRule, Utterance
from .predictions import contexts_from_mapping, load_predictions as parse_predictions
from .sil import load_trc_rules as parse_trc_rules
from .wordgraph import WordGraph, parse_graph_file, serialize_graph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_LEXICON = DATA_DIR / "lexicon.json"
DEFAULT_CONTEXTS = DATA_DIR / "contexts.json"
DEFAULT_TRC_RULES = DATA_DIR / "trc_rules.json"

GRAPH_SUFFIX = ".graph"


def read_text(path: PathLike) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def write_text(path: PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def dump_json(data) -> str:
    """Stable JSON text: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_graph(path: PathLike) -> WordGraph:
    return parse_graph_file(read_text(path))


def save_graph(graph: WordGraph, path: PathLike) -> None:
    write_text(path, serialize_graph(graph))


def load_lexicon(path: PathLike = DEFAULT_LEXICON) -> Lexicon:
    return Lexicon(parse_lexicon(read_text(path)))


def load_predictions(path: PathLike) -> PredictionList:
    return parse_predictions(read_text(path))


def load_contexts(path: PathLike = DEFAULT_CONTEXTS) -> Dict[str, PredictionList]:
    """Read a JSON or YAML mapping of context label → prediction list."""
    try:
        data = yaml.safe_load(read_text(path))
    except yaml.YAMLError as e:
        raise MalformedPrediction(f"invalid contexts file {path}: {e}")
    return contexts_from_mapping(data)


def load_trc_rules(path: PathLike = DEFAULT_TRC_RULES) -> List[TrcMappingRule]:
    return parse_trc_rules(read_text(path))


class AnnotationParser:
    """Parser for utterance annotation files."""

    @staticmethod
    def parse_utterance(index: int, raw) -> Utterance:
        if not isinstance(raw, dict):
            raise MalformedAnnotation(index, "annotation must be an object")
        missing = {"id", "transcript", "rtri"} - set(raw)
        if missing:
            raise MalformedAnnotation(index, f"missing keys {sorted(missing)}")
        unknown = set(raw) - {"id", "transcript", "context", "rtri"}
        if unknown:
            raise MalformedAnnotation(index, f"unknown keys {sorted(unknown)}")

        utterance_id = raw["id"]
        if not isinstance(utterance_id, str) or not utterance_id or "/" in utterance_id:
            raise MalformedAnnotation(index, f"invalid id {utterance_id!r}")
        if any(ch.isspace() for ch in utterance_id):
            raise MalformedAnnotation(index, f"id contains whitespace: {utterance_id!r}")

        transcript = raw["transcript"]
        if not isinstance(transcript, str) or not transcript.split():
            raise MalformedAnnotation(index, "transcript must be a non-empty string")

        context = raw.get("context", "none")
        if not isinstance(context, str) or not context:
            raise MalformedAnnotation(index, "context must be a non-empty string")

        try:
            rtri = TriSet.from_json(raw["rtri"])
        except ValueError as e:
            raise MalformedAnnotation(index, f"bad rtri: {e}")

        return Utterance(
            id=utterance_id,
            transcript=" ".join(transcript.lower().split()),
            context=context,
            rtri=rtri,
        )

    @staticmethod
    def parse_annotations(text: str) -> List[Utterance]:
        """Read a JSON array of ``{id, transcript, context, rtri}`` objects."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise MalformedAnnotation(0, f"invalid JSON: {e}")
        if not isinstance(data, list):
            raise MalformedAnnotation(0, "expected a JSON array of annotations")

        utterances = []
        seen = set()
        for index, raw in enumerate(data):
            utterance = AnnotationParser.parse_utterance(index, raw)
            if utterance.id in seen:
                raise MalformedAnnotation(index, f"duplicate id {utterance.id!r}")
            seen.add(utterance.id)
            utterances.append(utterance)
        return utterances

    @staticmethod
    def format_annotations(utterances: Sequence[Utterance]) -> str:
        return dump_json([u.to_dict() for u in utterances])


def load_annotations(path: PathLike) -> List[Utterance]:
    return AnnotationParser.parse_annotations(read_text(path))


class CorpusStorage:
    """A corpus directory: ``annotations.json`` plus ``graphs/<id>.graph``."""

    def __init__(self, base_dir: PathLike):
        self.base_dir = Path(base_dir).expanduser()
        self.annotations_file = self.base_dir / "annotations.json"
        self.graphs_dir = self.base_dir / "graphs"

    def graph_path(self, utterance_id: str) -> Path:
        return self.graphs_dir / f"{utterance_id}{GRAPH_SUFFIX}"

    def load(self) -> List[Tuple[Utterance, WordGraph]]:
        """Pair every annotation with its graph."""
        graph_ids = (
            sorted(p.stem for p in self.graphs_dir.glob(f"*{GRAPH_SUFFIX}"))
            if self.graphs_dir.is_dir()
            else []
        )
        if not self.annotations_file.exists():
            if graph_ids:
                raise CorpusMismatch(graph_ids[0], "graph has no annotation")
            raise EmptyCorpus(str(self.base_dir))

        utterances = load_annotations(self.annotations_file)
        annotated = {u.id for u in utterances}
        for graph_id in graph_ids:
            if graph_id not in annotated:
                raise CorpusMismatch(graph_id, "graph has no annotation")
        if not utterances:
            raise EmptyCorpus(str(self.base_dir))

        corpus = []
        for utterance in utterances:
            path = self.graph_path(utterance.id)
            if not path.exists():
                raise CorpusMismatch(utterance.id, f"missing graph file {path.name}")
            corpus.append((utterance, load_graph(path)))
        logger.info("loaded corpus of %d utterances from %s", len(corpus), self.base_dir)
        return corpus

    def save(self, utterances: Sequence[Utterance], graphs: Mapping[str, WordGraph]) -> None:
        """Write annotations and one graph file per utterance."""
        self.graphs_dir.mkdir(parents=True, exist_ok=True)
        write_text(self.annotations_file, AnnotationParser.format_annotations(utterances))
        for utterance in utterances:
            save_graph(graphs[utterance.id], self.graph_path(utterance.id))
        logger.info("saved corpus of %d utterances to %s", len(utterances), self.base_dir)
