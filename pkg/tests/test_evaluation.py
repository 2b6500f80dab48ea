"""Tests for the IC metric and the corpus runner."""

import pytest

from robust_lattice_parser.config import AppConfig
from robust_lattice_parser.errors import EmptyCorpus, EmptyReference, UnknownContext
from robust_lattice_parser.evaluation import (
    align_tri,
    corpus_word_accuracy,
    format_report,
    ic_score,
    run_corpus,
    word_accuracy,
)
from robust_lattice_parser.grammar import Lexicon
from robust_lattice_parser.models import IcCounts, TriSet, Utterance
from robust_lattice_parser.storage import CorpusStorage, load_lexicon
from robust_lattice_parser.wordgraph import parse_graph_file


class TestIcScore:
    """Test the information content metric."""

    def test_one_deletion(self):
        counts = ic_score(TriSet.of(("dm_marker", "yes"), ("time", 10)), TriSet.of(("time", 10)))
        assert counts.deletions == 1
        assert counts.ic == 50.0

    def test_identity(self):
        rtri = TriSet.of(("dm_marker", "yes"), ("time", 10))
        counts = ic_score(rtri, rtri)
        assert (counts.insertions, counts.substitutions, counts.deletions) == (0, 0, 0)
        assert counts.ic == 100.0

    def test_one_insertion(self):
        counts = ic_score(TriSet.of(("time", 10)), TriSet.of(("time", 10), ("goalcity", "ulm")))
        assert counts.insertions == 1
        assert counts.ic == 0.0

    def test_substitution(self):
        counts = ic_score(TriSet.of(("dm_marker", "yes")), TriSet.of(("dm_marker", "no")))
        assert counts.substitutions == 1
        assert counts.insertions == counts.deletions == 0
        assert counts.ic == 0.0

    def test_negative_ic_not_clamped(self):
        counts = ic_score(
            TriSet.of(("dm_marker", "yes")),
            TriSet.of(("date", "today"), ("time", 2)),
        )
        assert counts.ic == -200.0

    def test_exact_matches_before_substitutions(self):
        """Test that a duplicate attribute is matched by value first."""
        counts = ic_score(
            TriSet.of(("time", 10), ("time", 2)),
            TriSet.of(("time", 2), ("time", 10)),
        )
        assert counts.errors == 0

    def test_empty_reference(self):
        with pytest.raises(EmptyReference):
            ic_score(TriSet(), TriSet.of(("time", 10)))

    def test_align_empty_reference(self):
        counts = align_tri(TriSet(), TriSet.of(("time", 10)))
        assert counts.ic is None
        assert counts.insertions == 1

    def test_substitutions_bounded(self):
        rtri = TriSet.of(("time", 1), ("time", 2), ("date", "today"))
        ptri = TriSet.of(("time", 3))
        counts = ic_score(rtri, ptri)
        assert counts.substitutions <= min(len(rtri), len(ptri))
        assert min(counts.insertions, counts.substitutions, counts.deletions) >= 0

    def test_counts_add(self):
        total = IcCounts(2, 0, 0, 1) + IcCounts(1, 1, 0, 0)
        assert total == IcCounts(3, 1, 0, 1)
        assert total.ic == pytest.approx(100 * (1 - 2 / 3))


class TestWordAccuracy:
    """Test word accuracy from token edit distance."""

    def test_perfect(self):
        assert word_accuracy(["ja", "um"], ["ja", "um"]) == 100.0

    def test_one_substitution(self):
        assert word_accuracy(["ja", "um", "zehn", "uhr"], ["er", "um", "zehn", "uhr"]) == 75.0

    def test_empty_reference(self):
        with pytest.raises(ValueError):
            word_accuracy([], ["ja"])

    def test_corpus_one_best(self, time_answer_graph, time_answer_utterance):
        # the cheapest path of time_answer is the single 'nach' edge
        assert corpus_word_accuracy([(time_answer_utterance, time_answer_graph)]) == 0.0


class TestRunCorpus:
    """Test the with/without-predictions corpus run."""

    def test_time_answer_corpus(self, time_answer_corpus, demo_lexicon, trc_rules, contexts):
        corpus = CorpusStorage(time_answer_corpus).load()
        report = run_corpus(corpus, demo_lexicon, trc_rules, contexts)
        (row,) = report.rows
        assert row.without.ic == 50.0
        assert row.with_predictions.ic == 100.0
        assert report.micro_ic_without == 50.0
        assert report.micro_ic_with == 100.0
        assert [str(p) for p in row.ptri_with] == ["dm_marker:yes", "time:10"]
        assert row.status_with == "partial(2 parts)"

    def test_empty_corpus(self, demo_lexicon, trc_rules, contexts):
        with pytest.raises(EmptyCorpus):
            run_corpus([], demo_lexicon, trc_rules, contexts)

    def test_unknown_context(self, time_answer_graph, demo_lexicon, trc_rules, contexts):
        utterance = Utterance("x", "ja", "smalltalk", TriSet.of(("dm_marker", "yes")))
        with pytest.raises(UnknownContext):
            run_corpus([(utterance, time_answer_graph)], demo_lexicon, trc_rules, contexts)

    def test_particle_only_lexicon(self, fixtures_dir, time_answer_corpus, trc_rules, contexts):
        """Test that IC stays defined when no grammar rule ever fires."""
        lexicon = load_lexicon(fixtures_dir / "particles_only.json")
        corpus = CorpusStorage(time_answer_corpus).load()
        report = run_corpus(corpus, lexicon, trc_rules, contexts)
        (row,) = report.rows
        assert row.without.ic is not None
        assert row.with_predictions.ic == 50.0

    def test_failure_counts_as_deletion(self, demo_lexicon, trc_rules, contexts):
        graph = parse_graph_file("[1 hallo 3.00 2]\n")
        utterance = Utterance("bad", "ja", "yes_no_question", TriSet.of(("dm_marker", "yes")))
        report = run_corpus([(utterance, graph)], demo_lexicon, trc_rules, contexts)
        (row,) = report.rows
        assert row.without.deletions == 1
        assert row.with_predictions.ic == 0.0
        assert row.status_with == "error"

    def test_deterministic_and_parallel(self, time_answer_corpus, one_word_graph, demo_lexicon, trc_rules, contexts):
        corpus = CorpusStorage(time_answer_corpus).load()
        corpus = corpus + [
            (Utterance(f"one_word-{k}", "ja", "yes_no_question", TriSet.of(("dm_marker", "yes"))), one_word_graph)
            for k in range(6)
        ]
        serial = run_corpus(corpus, demo_lexicon, trc_rules, contexts, jobs=1)
        again = run_corpus(corpus, demo_lexicon, trc_rules, contexts, jobs=1)
        parallel = run_corpus(corpus, demo_lexicon, trc_rules, contexts, jobs=4)
        assert serial.to_dict(include_timing=False) == again.to_dict(include_timing=False)
        assert serial.to_dict(include_timing=False) == parallel.to_dict(include_timing=False)

    def test_length_breakdown(self, time_answer_corpus, one_word_graph, demo_lexicon, trc_rules, contexts):
        corpus = CorpusStorage(time_answer_corpus).load() + [
            (Utterance("short", "ja", "yes_no_question", TriSet.of(("dm_marker", "yes"))), one_word_graph)
        ]
        report = run_corpus(corpus, demo_lexicon, trc_rules, contexts)
        breakdown = report.by_length_class()
        assert breakdown["short"]["utterances"] == 1
        assert breakdown["short"]["ic_without"] == 0.0
        assert breakdown["short"]["ic_with"] == 100.0
        assert breakdown["long"]["ic_with"] == 100.0

    def test_max_steps_passed_through(self, time_answer_corpus, demo_lexicon, trc_rules, contexts):
        corpus = CorpusStorage(time_answer_corpus).load()
        report = run_corpus(corpus, demo_lexicon, trc_rules, contexts, AppConfig(max_steps=1))
        (row,) = report.rows
        # no phrase is built in one step, so the time information is lost
        assert row.with_predictions.ic < 100.0

    def test_format_report(self, time_answer_corpus, demo_lexicon, trc_rules, contexts):
        report = run_corpus(CorpusStorage(time_answer_corpus).load(), demo_lexicon, trc_rules, contexts)
        text = format_report(report, show_timing=False)
        assert "ic-pr" in text and "ic+pr" in text
        assert "50.00" in text and "100.00" in text
        assert "t-pr" not in text
