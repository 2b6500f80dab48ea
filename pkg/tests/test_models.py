"""Unit tests for models module."""

import pytest

from robust_lattice_parser.errors import ConfigError
from robust_lattice_parser.models import (
    CorpusReport,
    IcCounts,
    LengthMode,
    ScMode,
    ScoreConfig,
    TriPair,
    TriSet,
    Utterance,
    UtteranceResult,
)


def result(uid, words, without, with_predictions, t=(0.0, 0.0)):
    return UtteranceResult(
        utterance_id=uid,
        words=words,
        context="none",
        without=without,
        with_predictions=with_predictions,
        time_without_ms=t[0],
        time_with_ms=t[1],
    )


class TestEnums:
    """Test enum values."""

    def test_sc_mode_values(self):
        assert ScMode.CONSTANT_ONE.value == "constant-one"
        assert ScMode.VALENCE_RATIO.value == "valence-ratio"

    def test_length_mode_values(self):
        assert LengthMode.WORD_COUNT.value == "word-count"


class TestScoreConfig:
    """Test ScoreConfig validation."""

    def test_defaults(self):
        cfg = ScoreConfig()
        assert (cfg.pr_match, cfg.pr_nomatch) == (4.0, 1.0)
        assert cfg.sc_mode == ScMode.CONSTANT_ONE

    def test_string_modes_coerced(self):
        cfg = ScoreConfig(sc_mode="valence-ratio", length_mode="word-count")
        assert cfg.sc_mode == ScMode.VALENCE_RATIO
        assert cfg.length_mode == LengthMode.WORD_COUNT

    def test_invalid_sc_mode(self):
        with pytest.raises(ConfigError):
            ScoreConfig(sc_mode="sometimes")

    def test_invalid_length_mode(self):
        with pytest.raises(ConfigError):
            ScoreConfig(length_mode="frames")

    def test_equal_weights_allowed(self):
        assert ScoreConfig(pr_match=1.0, pr_nomatch=1.0).pr_match == 1.0

    def test_non_finite_weights(self):
        for bad in (float("nan"), float("inf")):
            with pytest.raises(ConfigError):
                ScoreConfig(pr_match=bad)
        with pytest.raises(ConfigError):
            ScoreConfig(pr_match=float("inf"), pr_nomatch=float("inf"))


class TestTri:
    """Test TRI pairs and sets."""

    def test_pair_str(self):
        assert str(TriPair("time", 10)) == "time:10"

    def test_pair_requires_atom(self):
        with pytest.raises(ValueError):
            TriPair("time", [10])
        with pytest.raises(ValueError):
            TriPair("", "x")

    def test_set_keeps_duplicates(self):
        tri = TriSet.of(("time", 10), ("time", 10))
        assert len(tri) == 2
        assert str(tri) == "[time:10, time:10]"

    def test_json(self):
        data = [{"attr": "goalcity", "value": "ulm"}, {"attr": "time", "value": 8}]
        assert TriSet.from_json(data).to_json() == data

    def test_from_json_rejects_extra_keys(self):
        with pytest.raises(ValueError):
            TriSet.from_json([{"attr": "time", "value": 8, "weight": 1}])


class TestIcCounts:
    """Test IcCounts arithmetic."""

    def test_ic(self):
        assert IcCounts(4, 1, 0, 1).ic == 50.0
        assert IcCounts(1, 2, 1, 0).ic == -200.0

    def test_undefined_for_no_items(self):
        assert IcCounts(0, 2, 0, 0).ic is None

    def test_to_dict(self):
        assert IcCounts(2, 0, 1, 0).to_dict() == {"items": 2, "i": 0, "s": 1, "d": 0, "ic": 50.0}


class TestUtterance:
    """Test Utterance and UtteranceResult."""

    def test_words(self):
        u = Utterance("u1", "nach ulm", "none", TriSet.of(("goalcity", "ulm")))
        assert u.words == ["nach", "ulm"]
        assert u.to_dict()["rtri"] == [{"attr": "goalcity", "value": "ulm"}]

    def test_length_class(self):
        assert result("a", 2, IcCounts(1), IcCounts(1)).length_class == "short"
        assert result("b", 3, IcCounts(1), IcCounts(1)).length_class == "long"

    def test_timing_optional(self):
        row = result("a", 1, IcCounts(1), IcCounts(1), t=(1.5, 2.5))
        assert row.to_dict()["t_with_ms"] == 2.5
        assert "t_with_ms" not in row.to_dict(include_timing=False)


class TestCorpusReport:
    """Test corpus aggregates."""

    @pytest.fixture
    def report(self):
        return CorpusReport(
            rows=[
                # one-word answer, fixed by predictions
                result("a", 1, IcCounts(1, 0, 1, 0), IcCounts(1, 0, 0, 0), t=(2.0, 4.0)),
                # three TRI pairs, one deletion both ways
                result("b", 4, IcCounts(3, 0, 0, 1), IcCounts(3, 0, 0, 1), t=(6.0, 8.0)),
            ]
        )

    def test_micro(self, report):
        assert report.total_without == IcCounts(4, 0, 1, 1)
        assert report.micro_ic_without == 50.0
        assert report.micro_ic_with == 75.0

    def test_macro(self, report):
        assert report.macro_ic_without == pytest.approx((0.0 + 100 * 2 / 3) / 2)
        assert report.macro_ic_with == pytest.approx((100.0 + 100 * 2 / 3) / 2)

    def test_macro_skips_empty_reference(self):
        report = CorpusReport(
            rows=[
                result("a", 1, IcCounts(1), IcCounts(1)),
                result("b", 1, IcCounts(0, 1, 0, 0), IcCounts(0)),
            ]
        )
        assert report.macro_ic_with == 100.0
        assert report.micro_ic_without == 0.0

    def test_mean_times(self, report):
        assert report.mean_time_without_ms == 4.0
        assert report.mean_time_with_ms == 6.0

    def test_by_length_class(self, report):
        classes = report.by_length_class()
        assert classes["short"] == {"utterances": 1, "ic_without": 0.0, "ic_with": 100.0}
        assert classes["long"]["ic_with"] == pytest.approx(100 * 2 / 3)

    def test_to_dict(self, report):
        data = report.to_dict()
        assert data["summary"]["utterances"] == 2
        assert data["timing"]["mean_t_with_ms"] == 6.0
        assert [row["id"] for row in data["utterances"]] == ["a", "b"]
        assert "timing" not in report.to_dict(include_timing=False)

    def test_empty_report(self):
        report = CorpusReport()
        assert report.micro_ic_with is None
        assert report.mean_time_with_ms == 0.0
