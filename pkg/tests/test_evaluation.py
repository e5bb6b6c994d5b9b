"""
Tests for accuracy@delta, Kendall's tau-b, ASD and the results report
"""
import itertools
import math

import numpy as np
import pytest
from scipy.stats import kendalltau

from evaluation.metrics import (
    GoldLabel,
    accuracy_at_delta,
    align,
    avg_score_diff,
    evaluate,
    kendall_tau,
    kendall_tau_b,
    kendall_tau_details,
    pair_counts,
)
from evaluation.report import format_report, metric_lines, results_table
from scoring.base_scorer import ScoreRecord
from utils.errors import EvaluationError, PairMismatchError


def _gold(subject, scores):
    return [GoldLabel(subject, f"V{i}", s) for i, s in enumerate(scores)]


def _preds(subject, scores):
    return [(subject, f"V{i}", s) for i, s in enumerate(scores)]


def _tau_oracle(x, y):
    """Tau-b by enumerating every pair"""
    c = d = px = py = 0
    for i, j in itertools.combinations(range(len(x)), 2):
        dx, dy = x[i] - x[j], y[i] - y[j]
        px += dx != 0
        py += dy != 0
        if dx * dy > 0:
            c += 1
        elif dx * dy < 0:
            d += 1
    if px == 0 or py == 0:
        return 0.0
    return (c - d) / math.sqrt(px * py)


class TestGoldLabel:
    @pytest.mark.parametrize("score", [-1, 8, 2.5, True, "3"])
    def test_invalid_scores(self, score):
        with pytest.raises(EvaluationError):
            GoldLabel("A", "Actor", score)

    def test_bounds(self):
        assert GoldLabel("A", "Actor", 0).score == 0
        assert GoldLabel("A", "Actor", 7).score == 7


class TestAlign:
    def test_gold_order(self):
        gold = _gold("s", [1, 2, 3])
        frame = align(list(reversed(_preds("s", [4, 5, 6]))), gold)
        assert list(frame['value']) == ["V0", "V1", "V2"]
        assert list(frame['pred']) == [4, 5, 6]
        assert list(frame.columns) == ['subject', 'value', 'pred', 'gold']

    def test_mismatch_lists_both_sides(self):
        gold = _gold("s", [1, 2]) + [GoldLabel("t", "Only", 3)]
        preds = _preds("s", [1, 2]) + [("u", "Extra", 4)]
        with pytest.raises(PairMismatchError) as exc:
            align(preds, gold)
        assert exc.value.missing_in_preds == [("t", "Only")]
        assert exc.value.missing_in_gold == [("u", "Extra")]
        assert "t\tOnly" in str(exc.value) and "u\tExtra" in str(exc.value)

    def test_duplicate_prediction(self):
        with pytest.raises(EvaluationError, match="duplicate"):
            align(_preds("s", [1]) * 2, _gold("s", [1]))

    def test_empty(self):
        with pytest.raises(EvaluationError):
            align([], [])

    def test_accepts_score_records(self):
        preds = [ScoreRecord("s", "V0", 0.9, mapped=6), ScoreRecord("s", "V1", 0.1, mapped=1)]
        frame = align(preds, _gold("s", [7, 0]))
        assert list(frame['pred']) == [6, 1]


class TestAccuracy:
    def test_identical(self):
        assert accuracy_at_delta(_preds("s", [0, 3, 7]), _gold("s", [0, 3, 7])) == 1.0

    def test_all_off_by_three(self):
        assert accuracy_at_delta(_preds("s", [3, 4, 7]), _gold("s", [0, 1, 4])) == 0.0

    def test_hand_count(self):
        assert accuracy_at_delta(_preds("s", [2, 4, 4]), _gold("s", [0, 7, 4]), delta=2) == 2 / 3

    def test_full_band(self):
        rng = np.random.default_rng(0)
        gold = _gold("s", rng.integers(0, 8, size=20).tolist())
        preds = _preds("s", rng.integers(0, 8, size=20).tolist())
        assert accuracy_at_delta(preds, gold, delta=7) == 1.0

    def test_exact_match_delta(self):
        assert accuracy_at_delta(_preds("s", [1, 2, 3, 5]), _gold("s", [1, 2, 4, 5]), delta=0) == 0.75

    def test_negative_delta(self):
        with pytest.raises(EvaluationError):
            accuracy_at_delta(_preds("s", [1]), _gold("s", [1]), delta=-1)


class TestAvgScoreDiff:
    def test_identity(self):
        assert avg_score_diff(_preds("s", [0, 5]), _gold("s", [0, 5])) == 0.0

    def test_maximal(self):
        assert avg_score_diff(_preds("s", [7, 0]), _gold("s", [0, 7])) == 7.0

    def test_hand_arithmetic(self):
        assert avg_score_diff(_preds("s", [2, 4, 4]), _gold("s", [0, 7, 4])) == pytest.approx(5 / 3)

    def test_symmetric_and_triangle(self):
        rng = np.random.default_rng(1)
        a, b, c = (rng.integers(0, 8, size=15).tolist() for _ in range(3))
        ab = avg_score_diff(_preds("s", a), _gold("s", b))
        ba = avg_score_diff(_preds("s", b), _gold("s", a))
        bc = avg_score_diff(_preds("s", b), _gold("s", c))
        ac = avg_score_diff(_preds("s", a), _gold("s", c))
        assert ab == ba
        assert ac <= ab + bc + 1e-12


class TestKendallTauB:
    def test_perfect(self):
        assert kendall_tau_b([1, 2, 3, 4], [2, 4, 5, 7]) == 1.0

    def test_reversed(self):
        assert kendall_tau_b([1, 2, 3, 4], [7, 5, 4, 2]) == -1.0

    def test_all_tied_is_zero(self):
        assert kendall_tau_b([3, 3, 3], [1, 2, 3]) == 0.0

    def test_pair_counts(self):
        assert pair_counts([1, 2, 2], [1, 3, 2]) == (2, 0, 2, 3)

    def test_too_short(self):
        with pytest.raises(EvaluationError):
            kendall_tau_b([1], [1])

    def test_matches_pair_enumeration_exactly(self):
        rng = np.random.default_rng(2)
        for _ in range(10_000):
            n = int(rng.integers(2, 9))
            x = rng.integers(0, 8, size=n).tolist()
            y = rng.integers(0, 8, size=n).tolist()
            assert kendall_tau_b(x, y) == _tau_oracle(x, y)

    def test_matches_scipy(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = int(rng.integers(3, 12))
            x = rng.integers(0, 8, size=n)
            y = rng.integers(0, 8, size=n)
            if len(set(x.tolist())) < 2 or len(set(y.tolist())) < 2:
                continue
            expected = kendalltau(x, y)[0]
            assert kendall_tau_b(x, y) == pytest.approx(expected, abs=1e-12)

    def test_antisymmetric(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            gold = rng.permutation(8)[:6].tolist()
            pred = rng.permutation(8)[:6].tolist()
            flipped = [7 - p for p in pred]
            assert kendall_tau_b(flipped, gold) == pytest.approx(-kendall_tau_b(pred, gold), abs=1e-15)


class TestKendallTau:
    def test_mean_over_subjects(self):
        gold = _gold("a", [0, 3, 7]) + _gold("b", [0, 3, 7])
        preds = _preds("a", [1, 2, 3]) + _preds("b", [3, 2, 1])
        assert kendall_tau(preds, gold) == 0.0

    def test_singletons_skipped(self):
        gold = _gold("a", [0, 7]) + _gold("solo", [4])
        preds = _preds("a", [0, 7]) + _preds("solo", [0])
        details = kendall_tau_details(preds, gold)
        assert details.mean == 1.0
        assert details.skipped == ["solo"]
        assert list(details.per_subject) == ["a"]

    def test_all_tied_counts_as_zero(self):
        gold = _gold("a", [0, 7]) + _gold("tied", [4, 4])
        preds = _preds("a", [0, 7]) + _preds("tied", [1, 6])
        details = kendall_tau_details(preds, gold)
        assert details.per_subject["tied"] == 0.0
        assert details.all_tied == ["tied"]
        assert details.mean == 0.5

    def test_no_evaluable_subject(self):
        with pytest.raises(EvaluationError):
            kendall_tau(_preds("a", [1]), _gold("a", [1]))


class TestEvaluate:
    def test_perfect(self):
        gold = _gold("a", [0, 3, 7]) + _gold("b", [2, 6])
        preds = [(g.subject, g.value, g.score) for g in gold]
        report = evaluate(preds, gold, method="CosSim")
        assert (report.accuracy, report.kendall_tau, report.asd) == (1.0, 1.0, 0.0)
        assert (report.n_subjects, report.n_pairs, report.tau_subjects) == (2, 5, 2)
        assert report.method == "CosSim"

    def test_counts_reported(self):
        gold = _gold("a", [0, 7]) + _gold("solo", [3]) + _gold("tied", [5, 5])
        preds = _preds("a", [0, 7]) + _preds("solo", [3]) + _preds("tied", [5, 5])
        report = evaluate(preds, gold, delta=1)
        assert report.skipped_subjects == ["solo"]
        assert report.all_tied_subjects == ["tied"]
        assert report.delta == 1
        assert report.tau_aggregation == "unweighted mean over subjects"

    def test_mismatch_propagates(self):
        with pytest.raises(PairMismatchError):
            evaluate(_preds("a", [1, 2]), _gold("a", [1, 2, 3]))


class TestReport:
    @pytest.fixture
    def reports(self):
        gold = _gold("a", [0, 4, 7])
        return [
            evaluate(_preds("a", [0, 4, 7]), gold, method="CosSim"),
            evaluate(_preds("a", [7, 4, 0]), gold, method="LogReg"),
        ]

    def test_table_columns(self, reports):
        table = results_table(reports)
        assert list(table.columns) == ["Method", "Accuracy", "Kendall's Tau", "ASD"]
        assert list(table["Method"]) == ["CosSim", "LogReg"]

    def test_format(self, reports):
        text = format_report(reports)
        header = text.splitlines()[0]
        assert "Method" in header and "Kendall's Tau" in header
        assert "1.00" in text and "-1.00" in text
        assert "accuracy=1.000000" in text
        assert "tau=-1.000000" in text
        assert text.endswith("\n")

    def test_metric_lines(self, reports):
        lines = dict(line.split("=", 1) for line in metric_lines(reports[1]))
        assert lines["method"] == "LogReg"
        assert float(lines["asd"]) == pytest.approx(14 / 3)
        assert lines["pair_aggregation"] == "pooled over pairs"
