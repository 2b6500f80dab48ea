"""Pytest configuration and shared fixtures."""

from pathlib import Path

import pytest

from robust_lattice_parser import featstruct
from robust_lattice_parser.models import PredictionList, TriSet, Utterance
from robust_lattice_parser.predictions import empty_predictions
from robust_lattice_parser.storage import (
    CorpusStorage,
    load_contexts,
    load_graph,
    load_lexicon,
    load_trc_rules,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def demo_lexicon():
    """The bundled demo lexicon."""
    return load_lexicon()


@pytest.fixture
def contexts():
    return load_contexts()


@pytest.fixture
def trc_rules():
    return load_trc_rules()


@pytest.fixture
def yes_no(contexts):
    """Prediction list after a yes/no question."""
    return contexts["yes_no_question"]


@pytest.fixture
def no_predictions():
    return empty_predictions()


@pytest.fixture
def time_predictions():
    return PredictionList(
        items=(featstruct.structure_from_json({"type": "time"}),), label="time_question"
    )


@pytest.fixture
def one_word_graph():
    """er / ja / nein competing for one spoken word."""
    return load_graph(FIXTURES / "one_word.graph")


@pytest.fixture
def time_answer_graph():
    """'ja um zehn uhr' with the competing 'er' and a 'nach' distractor."""
    return load_graph(FIXTURES / "time_answer.graph")


@pytest.fixture
def time_answer_utterance():
    return Utterance(
        id="time_answer",
        transcript="ja um zehn uhr",
        context="yes_no_question",
        rtri=TriSet.of(("dm_marker", "yes"), ("time", 10)),
    )


@pytest.fixture
def time_answer_corpus(tmp_path, time_answer_graph, time_answer_utterance):
    """A one-utterance corpus directory built from the time_answer graph."""
    storage = CorpusStorage(tmp_path / "corpus")
    storage.save([time_answer_utterance], {"time_answer": time_answer_graph})
    return storage.base_dir
