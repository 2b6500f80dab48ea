"""Unit tests for scoring module."""

from decimal import Decimal

import pytest

from robust_lattice_parser import featstruct as fs
from robust_lattice_parser.errors import ConfigError, NonPositiveDivisor, ZeroLength
from robust_lattice_parser.grammar import lexical_constituent
from robust_lattice_parser.models import ScMode, ScoreConfig
from robust_lattice_parser.scoring import (
    acoustic_quality,
    combine_rs,
    display_score,
    pragmatic_relevance,
    quality_score,
    score_edge,
    shortfall,
    syntactic_completeness,
)


class TestShortfall:
    """Test the shortfall function."""

    def test_ja_in_time_answer(self):
        assert display_score(shortfall(110.21, 22.08, 31.25)) == Decimal("119.38")

    def test_segment_optimum_cancels(self):
        for total, rs in [(110.21, 22.08), (5.0, 1.5), (0.0, 3.0)]:
            assert shortfall(total, rs, rs) == pytest.approx(total)

    def test_time_phrase(self):
        assert shortfall(110.21, 88.76, 88.76) == pytest.approx(110.21)


class TestAcousticQuality:
    """Test length normalisation."""

    def test_three_words(self):
        assert display_score(acoustic_quality(110.21, 3)) == Decimal("36.74")

    def test_unit_length_identity(self):
        assert acoustic_quality(119.38, 1) == 119.38

    def test_zero_length(self):
        with pytest.raises(ZeroLength):
            acoustic_quality(1.0, 0)


class TestQualityScore:
    """Test the integrated quality score."""

    def test_predicted_ja(self):
        qs = quality_score(119.38, 1.0, 4.0)
        assert qs == pytest.approx(29.845)
        assert display_score(qs) == Decimal("29.84")

    def test_neutral_weights(self):
        assert quality_score(36.5, 1.0, 1.0) == 36.5

    def test_non_positive_divisor(self):
        with pytest.raises(NonPositiveDivisor):
            quality_score(10.0, 0.0, 1.0)
        with pytest.raises(NonPositiveDivisor):
            quality_score(10.0, 1.0, -1.0)

    def test_pr_monotonic(self):
        assert quality_score(50.0, 1.0, 4.0) < quality_score(50.0, 1.0, 1.0)


class TestDisplayScore:
    """Test display rounding."""

    def test_half_even(self):
        assert display_score(7.8125) == Decimal("7.81")
        assert display_score(29.845) == Decimal("29.84")
        assert display_score(0.125) == Decimal("0.12")

    def test_float_noise_removed(self):
        assert display_score(110.21 - 22.08 + 31.25) == Decimal("119.38")


class TestCombineRs:
    """Test combined recognition scores."""

    def test_sum(self):
        assert combine_rs(30.0, 58.76) == pytest.approx(88.76)
        assert combine_rs(22.08, 88.76) == pytest.approx(110.84)

    def test_associative(self):
        a, b, c = 1.25, 2.5, 3.75
        assert combine_rs(combine_rs(a, b), c) == pytest.approx(combine_rs(a, combine_rs(b, c)))


class TestPragmaticRelevance:
    """Test the prediction weight."""

    def test_ja_matches_yes_no(self, demo_lexicon, yes_no):
        ja = demo_lexicon.lookup("ja")[0]
        assert pragmatic_relevance(ja.sem, yes_no, ScoreConfig()) == 4.0

    def test_time_not_predicted(self, yes_no):
        sem = fs.from_json({"type": "time", "thehour": {"type": "hour", "value": 10}})
        assert pragmatic_relevance(sem, yes_no, ScoreConfig()) == 1.0

    def test_empty_predictions(self, demo_lexicon, no_predictions):
        ja = demo_lexicon.lookup("ja")[0]
        assert pragmatic_relevance(ja.sem, no_predictions, ScoreConfig()) == 1.0

    def test_custom_weights(self, demo_lexicon, yes_no):
        ja = demo_lexicon.lookup("ja")[0]
        cfg = ScoreConfig(pr_match=6.0, pr_nomatch=2.0)
        assert pragmatic_relevance(ja.sem, yes_no, cfg) == 6.0


class TestSyntacticCompleteness:
    """Test sc modes."""

    def test_constant_one(self, demo_lexicon):
        for e in demo_lexicon:
            assert syntactic_completeness(lexical_constituent(e), ScoreConfig()) == 1.0

    def test_valence_ratio(self, demo_lexicon):
        cfg = ScoreConfig(sc_mode=ScMode.VALENCE_RATIO)
        um = lexical_constituent(demo_lexicon.lookup("um")[0])
        ja = lexical_constituent(demo_lexicon.lookup("ja")[0])
        assert syntactic_completeness(um, cfg) == 0.5
        assert syntactic_completeness(ja, cfg) == 1.0


class TestScoreConfig:
    """Test ScoreConfig validation."""

    def test_defaults(self):
        cfg = ScoreConfig()
        assert cfg.pr_match == 4.0
        assert cfg.pr_nomatch == 1.0
        assert cfg.sc_mode == ScMode.CONSTANT_ONE

    def test_string_mode(self):
        assert ScoreConfig(sc_mode="valence-ratio").sc_mode == ScMode.VALENCE_RATIO

    def test_invalid_mode(self):
        with pytest.raises(ConfigError):
            ScoreConfig(sc_mode="sometimes")

    def test_match_below_nomatch(self):
        with pytest.raises(ConfigError):
            ScoreConfig(pr_match=0.5, pr_nomatch=1.0)

    def test_non_positive_nomatch(self):
        with pytest.raises(ConfigError):
            ScoreConfig(pr_match=1.0, pr_nomatch=0.0)


class TestScoreEdge:
    """Test the full breakdown on the time_answer graph."""

    def test_ja_with_predictions(self, time_answer_graph, demo_lexicon, yes_no):
        ja = lexical_constituent(demo_lexicon.lookup("ja")[0])
        b = score_edge(time_answer_graph, 1, 2, ja, 1, 31.25, yes_no, ScoreConfig())
        assert display_score(b.sf) == Decimal("119.38")
        assert b.pr == 4.0
        assert display_score(b.qs) == Decimal("29.84")
        assert b.qs == pytest.approx(b.q_a / (b.sc * b.pr), abs=1e-9)
        assert b.q_a == pytest.approx(b.sf / b.length, abs=1e-9)

    def test_er_without_predictions(self, time_answer_graph, demo_lexicon, no_predictions):
        er = lexical_constituent(demo_lexicon.lookup("er")[0])
        b = score_edge(time_answer_graph, 1, 2, er, 1, 22.08, no_predictions, ScoreConfig())
        assert b.qs == pytest.approx(110.21)

    def test_rs_monotonic(self, time_answer_graph, demo_lexicon, no_predictions):
        er = lexical_constituent(demo_lexicon.lookup("er")[0])
        low = score_edge(time_answer_graph, 1, 2, er, 1, 22.08, no_predictions, ScoreConfig())
        high = score_edge(time_answer_graph, 1, 2, er, 1, 25.0, no_predictions, ScoreConfig())
        assert low.qs < high.qs
