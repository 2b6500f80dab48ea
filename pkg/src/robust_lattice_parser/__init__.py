"""
Robust Lattice Parser - best-first island parsing of recognizer word graphs
with acoustic, syntactic and dialogue-context scoring.
"""

from .chart import ChartParser, parse, results
from .config import AppConfig, load_config
from .evaluation import ic_score, run_corpus
from .grammar import Lexicon, apply, lexical_constituent, load_lexicon
from .models import (
    ChartEdge,
    CorpusReport,
    IcCounts,
    ParseOutcome,
    ParseStatus,
    PartialSequence,
    PredictionList,
    ScoreBreakdown,
    ScoreConfig,
    SilStructure,
    TriPair,
    TriSet,
    Utterance,
)
from .robust import select_partials
from .sil import build_sil, sil_to_tri
from .wordgraph import WordGraph, WordHypothesis, parse_graph_file

__version__ = "0.1.0"
__all__ = [
    "AppConfig",
    "ChartEdge",
    "ChartParser",
    "CorpusReport",
    "IcCounts",
    "Lexicon",
    "ParseOutcome",
    "ParseStatus",
    "PartialSequence",
    "PredictionList",
    "ScoreBreakdown",
    "ScoreConfig",
    "SilStructure",
    "TriPair",
    "TriSet",
    "Utterance",
    "WordGraph",
    "WordHypothesis",
    "apply",
    "build_sil",
    "ic_score",
    "lexical_constituent",
    "load_config",
    "load_lexicon",
    "parse",
    "parse_graph_file",
    "results",
    "run_corpus",
    "select_partials",
    "sil_to_tri",
]
