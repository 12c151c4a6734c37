import numpy as np
import pytest

from ahiagree import (
    ADULT,
    PairedSample,
    classify_many,
    multiclass_auc,
    pairwise_roc,
)
from ahiagree.errors import ClassAbsent, SingleClass
from conftest import random_sample


def sample_for_classes(ref, res):
    return PairedSample(np.asarray(ref, float), np.asarray(res, float))


def mann_whitney_auc(neg, pos):
    """P(pos > neg) + 0.5 P(pos == neg) over all cross pairs."""
    wins = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                wins += 1.0
            elif p == n:
                wins += 0.5
    return wins / (len(pos) * len(neg))


class TestPairwise:
    def test_interleaved_hand_value(self):
        # negatives score [1, 3], positives [2, 4] -> 0.75
        s = sample_for_classes([2, 3, 7, 8], [1, 3, 2, 4])
        curve = pairwise_roc(s, ADULT, (0, 1))
        assert curve.auc == pytest.approx(0.75, abs=1e-12)
        assert curve.class_pair == (0, 1)

    def test_perfect_separation(self):
        s = sample_for_classes([2, 3, 7, 8], [1, 2, 10, 11])
        assert pairwise_roc(s, ADULT, (0, 1)).auc == pytest.approx(1.0, abs=1e-12)

    def test_all_tied_scores(self):
        s = sample_for_classes([2, 3, 7, 8], [6, 6, 6, 6])
        assert pairwise_roc(s, ADULT, (0, 1)).auc == pytest.approx(0.5, abs=1e-12)

    def test_reversed_scores_complement(self):
        s = sample_for_classes([2, 3, 4, 7, 8], [1, 5, 3, 4, 6])
        auc = pairwise_roc(s, ADULT, (0, 1)).auc
        flipped = PairedSample(s.reference.copy(), 100.0 - s.measured)
        assert pairwise_roc(flipped, ADULT, (0, 1)).auc == pytest.approx(
            1.0 - auc, abs=1e-12
        )

    def test_curve_endpoints_and_monotonicity(self):
        s = sample_for_classes([2, 3, 7, 8, 20], [1, 3, 2, 4, 9])
        curve = pairwise_roc(s, ADULT, (0, 1))
        np.testing.assert_array_equal(curve.points[0], [0.0, 0.0])
        np.testing.assert_array_equal(curve.points[-1], [1.0, 1.0])
        assert np.all(np.diff(curve.points[:, 0]) >= 0)
        assert np.all(np.diff(curve.points[:, 1]) >= 0)

    def test_pair_order_normalized(self):
        s = sample_for_classes([2, 3, 7, 8], [1, 3, 2, 4])
        assert pairwise_roc(s, ADULT, (1, 0)).class_pair == (0, 1)

    def test_absent_class_raises(self):
        s = sample_for_classes([2, 3, 7, 8], [1, 3, 2, 4])
        with pytest.raises(ClassAbsent):
            pairwise_roc(s, ADULT, (0, 3))

    def test_invalid_pair(self):
        s = sample_for_classes([2, 7], [1, 2])
        with pytest.raises(ValueError):
            pairwise_roc(s, ADULT, (1, 1))
        with pytest.raises(ValueError):
            pairwise_roc(s, ADULT, (0, 4))

    def test_trapezoid_equals_mann_whitney(self):
        rng = np.random.default_rng(83)
        checked = 0
        while checked < 200:
            s = random_sample(rng)
            ref_cls = classify_many(s.reference, ADULT)
            present = sorted(set(int(c) for c in ref_cls))
            if len(present) < 2:
                continue
            lo, hi = present[0], present[-1]
            curve = pairwise_roc(s, ADULT, (lo, hi))
            expected = mann_whitney_auc(
                s.measured[ref_cls == lo], s.measured[ref_cls == hi]
            )
            assert curve.auc == pytest.approx(expected, abs=1e-12)
            checked += 1

    def test_increasing_transform_invariance(self):
        # AUC depends only on score order, not scale
        s = sample_for_classes([2, 3, 4, 7, 8, 20], [1, 5, 3, 4, 6, 2])
        base = pairwise_roc(s, ADULT, (0, 1)).auc
        mapped = PairedSample(s.reference.copy(), np.exp(s.measured / 10.0))
        assert pairwise_roc(mapped, ADULT, (0, 1)).auc == pytest.approx(
            base, abs=1e-12
        )


class TestMulticlass:
    def test_overall_is_unweighted_mean(self):
        ref = [2, 3, 7, 8, 20, 25, 40, 50]  # all four classes
        res = [1, 3, 6, 9, 14, 22, 35, 45]
        s = sample_for_classes(ref, res)
        result = multiclass_auc(s, ADULT)
        assert result.n_pairs_evaluated == 6
        assert result.skipped_pairs == ()
        assert result.overall == pytest.approx(
            np.mean(list(result.pairwise.values())), abs=1e-15
        )
        for auc in result.pairwise.values():
            assert 0.0 <= auc <= 1.0

    def test_missing_class_skips_its_pairs(self):
        ref = [2, 3, 7, 8, 40, 50]  # class 2 absent
        res = [1, 3, 6, 9, 35, 45]
        result = multiclass_auc(sample_for_classes(ref, res), ADULT)
        assert result.n_pairs_evaluated == 3
        assert set(result.skipped_pairs) == {(0, 2), (1, 2), (2, 3)}
        assert set(result.pairwise) == {(0, 1), (0, 3), (1, 3)}

    def test_single_class_raises(self):
        s = sample_for_classes([6, 7, 8], [5, 9, 11])
        with pytest.raises(SingleClass):
            multiclass_auc(s, ADULT)

    def test_perfect_measurement_gives_unit_overall(self):
        ref = [2.0, 7.0, 20.0, 40.0, 3.0, 9.0, 25.0, 50.0]
        s = sample_for_classes(ref, ref)
        result = multiclass_auc(s, ADULT)
        assert result.overall == pytest.approx(1.0, abs=1e-12)
