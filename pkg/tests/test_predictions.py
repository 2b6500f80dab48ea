"""Unit tests for predictions module."""

import json

import pytest

from robust_lattice_parser import featstruct as fs
from robust_lattice_parser.chart import ChartParser
from robust_lattice_parser.errors import MalformedPrediction
from robust_lattice_parser.predictions import (
    contexts_from_mapping,
    empty_predictions,
    load_predictions,
    matches,
    prediction_to_json,
    seed_rank,
)


def lexical_edges(graph, lexicon, preds):
    parser = ChartParser(graph, lexicon, preds)
    return parser.run(max_steps=1).chart


class TestLoadPredictions:
    """Test prediction file loading."""

    def test_yes_no_file(self, fixtures_dir):
        preds = load_predictions((fixtures_dir / "yes_no.json").read_text())
        assert preds.label == "yes_no_question"
        assert [fs.to_json(p) for p in preds.items] == [
            {"type": "dm_marker", "value": "yes"},
            {"type": "dm_marker", "value": "no"},
        ]

    def test_empty_items(self):
        preds = load_predictions(json.dumps({"label": "open", "items": []}))
        assert len(preds) == 0
        assert not preds

    def test_variables_allowed(self):
        preds = load_predictions(
            json.dumps({"label": "x", "items": [{"type": "dm_marker", "value": "?v"}]})
        )
        assert fs.variables(preds.items[0])

    def test_item_must_be_object(self):
        with pytest.raises(MalformedPrediction):
            load_predictions(json.dumps({"label": "x", "items": ["yes"]}))

    def test_not_an_object(self):
        with pytest.raises(MalformedPrediction):
            load_predictions("[]")

    def test_invalid_json(self):
        with pytest.raises(MalformedPrediction):
            load_predictions("{")

    def test_to_json(self, yes_no):
        data = prediction_to_json(yes_no)
        assert data == {
            "label": "yes_no_question",
            "items": [
                {"type": "dm_marker", "value": "yes"},
                {"type": "dm_marker", "value": "no"},
            ],
        }
        assert load_predictions(json.dumps(data)) == yes_no


class TestContexts:
    """Test the dialogue context table."""

    def test_bundled_contexts(self, contexts):
        assert set(contexts) >= {"none", "yes_no_question", "time_question"}
        assert len(contexts["none"]) == 0
        assert len(contexts["yes_no_question"]) == 2

    def test_none_reserved(self):
        with pytest.raises(MalformedPrediction):
            contexts_from_mapping({"none": [{"type": "time"}]})

    def test_none_always_present(self):
        assert "none" in contexts_from_mapping({})


class TestMatches:
    """Test prediction matching by unification."""

    def test_ja_matches(self, demo_lexicon, yes_no):
        assert matches(demo_lexicon.lookup("ja")[0].sem, yes_no)

    def test_er_does_not_match(self, demo_lexicon, yes_no):
        assert not matches(demo_lexicon.lookup("er")[0].sem, yes_no)

    def test_bare_variable_never_matches(self, demo_lexicon, yes_no):
        assert not matches(demo_lexicon.lookup("uhr")[0].sem, yes_no)

    def test_partial_prediction(self, demo_lexicon, time_predictions):
        sem = fs.from_json({"type": "time", "thehour": {"type": "hour", "value": 10}})
        assert matches(sem, time_predictions)

    def test_empty_list(self, demo_lexicon):
        assert not matches(demo_lexicon.lookup("ja")[0].sem, empty_predictions())


class TestSeedRank:
    """Test seed ordering."""

    def test_matching_first(self, one_word_graph, demo_lexicon, yes_no):
        """Test that predicted edges precede all others, each by QS."""
        edges = lexical_edges(one_word_graph, demo_lexicon, yes_no)
        ranked = seed_rank(edges, yes_no)
        assert [e.string for e in ranked] == ["ja", "nein", "er"]

    def test_empty_predictions_sort_by_qs(self, one_word_graph, demo_lexicon, no_predictions):
        edges = lexical_edges(one_word_graph, demo_lexicon, no_predictions)
        ranked = seed_rank(edges, no_predictions)
        assert [e.string for e in ranked] == ["er", "ja", "nein"]
        assert ranked == sorted(edges, key=lambda e: e.qs)

    def test_permutation(self, time_answer_graph, demo_lexicon, yes_no):
        edges = lexical_edges(time_answer_graph, demo_lexicon, yes_no)
        ranked = seed_rank(edges, yes_no)
        assert sorted(map(id, ranked)) == sorted(map(id, edges))

    def test_all_matching(self, one_word_graph, demo_lexicon, yes_no):
        edges = [e for e in lexical_edges(one_word_graph, demo_lexicon, yes_no) if e.string != "er"]
        ranked = seed_rank(edges, yes_no)
        assert ranked == sorted(edges, key=lambda e: e.qs)
