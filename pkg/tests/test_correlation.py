import math

import numpy as np
import pytest

import goldens
from ahiagree import (
    Method,
    PairedSample,
    fit_line,
    lin_ccc,
    paired_t,
    pearson,
    spearman,
    wilcoxon_paired,
)
from ahiagree.correlation import student_t_cdf
from ahiagree.errors import AllZeroDifferences, Degenerate, ZeroVariance
from conftest import random_sample


def make(ref, res):
    return PairedSample(np.asarray(ref, float), np.asarray(res, float))


class TestPearson:
    def test_exact_linearity(self):
        assert pearson(make([1, 2, 3], [2, 4, 6])).coefficient == 1.0

    def test_exact_anti_linearity(self):
        assert pearson(make([1, 2, 3], [3, 2, 1])).coefficient == -1.0

    def test_golden(self, synthetic25):
        result = pearson(synthetic25)
        assert result.coefficient == pytest.approx(goldens.PEARSON_R, abs=1e-9)
        assert result.p_value == pytest.approx(goldens.PEARSON_P, abs=1e-6)
        assert result.method is Method.PEARSON_T
        assert result.n_effective == 25

    def test_zero_variance(self):
        with pytest.raises(ZeroVariance):
            pearson(make([5, 5, 5], [1, 2, 3]))
        with pytest.raises(ZeroVariance):
            pearson(make([1, 2, 3], [5, 5, 5]))

    def test_symmetry_and_affine_invariance(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            s = random_sample(rng)
            r = pearson(s).coefficient
            swapped = PairedSample(s.measured.copy(), s.reference.copy())
            assert pearson(swapped).coefficient == pytest.approx(r, abs=1e-12)
            mapped = PairedSample(s.reference.copy(), 2.5 * s.measured + 7.0)
            assert pearson(mapped).coefficient == pytest.approx(r, abs=1e-12)


class TestSpearman:
    def test_monotone_nonlinear(self):
        assert spearman(make([1, 2, 3], [1, 4, 9])).coefficient == 1.0

    def test_tied_input_midranks(self):
        # ranks x: [1.5,1.5,3,4]; ranks y: [2.5,2.5,1,4] -> rho = 1/3
        result = spearman(make([1, 1, 2, 3], [2, 2, 1, 4]))
        assert result.coefficient == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_golden(self, synthetic25):
        result = spearman(synthetic25)
        assert result.coefficient == pytest.approx(goldens.SPEARMAN_RHO, abs=1e-9)
        assert result.p_value == pytest.approx(goldens.SPEARMAN_P, abs=1e-6)
        assert result.method is Method.SPEARMAN_T

    def test_constant_vector(self):
        with pytest.raises(ZeroVariance):
            spearman(make([2, 2, 2], [1, 2, 3]))

    def test_increasing_map_invariance(self):
        rng = np.random.default_rng(29)
        for _ in range(50):
            s = random_sample(rng)
            rho = spearman(s).coefficient
            mapped = PairedSample(s.reference.copy(), s.measured**2 + s.measured)
            assert spearman(mapped).coefficient == pytest.approx(rho, abs=1e-12)


class TestLinCcc:
    def test_perfect_concordance_exact(self):
        v = np.array([3.0, 9.5, 21.0, 0.4, 55.0])
        result = lin_ccc(PairedSample(v, v.copy()))
        assert result.ccc == 1.0
        assert result.bias_correction == 1.0
        assert result.pearson_r == 1.0
        assert result.ci_low == result.ci_high == 1.0

    def test_offset_hand_value(self):
        result = lin_ccc(make([1, 2, 3], [2, 3, 4]))
        assert result.ccc == pytest.approx(4.0 / 7.0, abs=1e-12)
        assert result.bias_correction == pytest.approx(4.0 / 7.0, abs=1e-12)
        assert result.pearson_r == 1.0

    def test_ci_brackets_ccc(self, synthetic25):
        result = lin_ccc(synthetic25)
        assert result.ci_low <= result.ccc <= result.ci_high
        narrow = lin_ccc(synthetic25, confidence=0.5)
        assert narrow.ci_low >= result.ci_low
        assert narrow.ci_high <= result.ci_high

    def test_ccc_le_r_property(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            s = random_sample(rng)
            result = lin_ccc(s)
            assert abs(result.ccc) <= abs(result.pearson_r)
            if result.pearson_r > 0:
                assert 0.0 < result.bias_correction <= 1.0

    def test_zero_variance(self):
        with pytest.raises(ZeroVariance):
            lin_ccc(make([1, 1, 1], [1, 2, 3]))


class TestFitLine:
    def test_two_point_with_intercept(self):
        fit = fit_line(make([0, 1], [1, 3]))
        assert fit.slope == pytest.approx(2.0, abs=1e-12)
        assert fit.intercept == pytest.approx(1.0, abs=1e-12)
        assert fit.with_intercept

    def test_through_origin(self):
        fit = fit_line(make([1, 2], [2, 4]), with_intercept=False)
        assert fit.slope == pytest.approx(2.0, abs=1e-12)
        assert fit.intercept == 0.0
        assert not fit.with_intercept

    def test_degenerate(self):
        with pytest.raises(Degenerate):
            fit_line(make([4, 4, 4], [1, 2, 3]))

    def test_against_grid_refinement_oracle(self):
        def oracle(x, y):
            # shrink a 41x41 (slope, intercept) grid around the best SSE
            lo_s, hi_s, lo_b, hi_b = -10.0, 10.0, -50.0, 50.0
            for _ in range(60):
                slopes = np.linspace(lo_s, hi_s, 41)
                intercepts = np.linspace(lo_b, hi_b, 41)
                sse = (
                    (y[None, None, :] - slopes[:, None, None] * x[None, None, :]
                     - intercepts[None, :, None]) ** 2
                ).sum(axis=2)
                i, j = np.unravel_index(np.argmin(sse), sse.shape)
                ds, db = (hi_s - lo_s) / 8, (hi_b - lo_b) / 8
                lo_s, hi_s = slopes[i] - ds, slopes[i] + ds
                lo_b, hi_b = intercepts[j] - db, intercepts[j] + db
            return slopes[i], intercepts[j]

        rng = np.random.default_rng(37)
        for _ in range(5):
            s = random_sample(rng, n=6)
            fit = fit_line(s)
            slope, intercept = oracle(s.reference, s.measured)
            assert fit.slope == pytest.approx(slope, abs=1e-6)
            assert fit.intercept == pytest.approx(intercept, abs=1e-5)
            # and the normal equations are a strict local optimum
            def sse(a, b):
                return float(((s.measured - a * s.reference - b) ** 2).sum())

            best = sse(fit.slope, fit.intercept)
            for da in (-1e-4, 1e-4):
                for db in (-1e-4, 1e-4):
                    assert sse(fit.slope + da, fit.intercept + db) >= best


class TestWilcoxon:
    def test_all_positive_m5_exact(self):
        s = make([10, 10, 10, 10, 10], [11, 12, 13, 14, 15])
        result = wilcoxon_paired(s)
        assert result.statistic == 15.0
        assert result.p_value == 0.0625
        assert result.method is Method.WILCOXON_EXACT
        assert result.n_effective == 5

    def test_antisymmetric_null_center(self):
        # |d| ties force the approximate branch; W+ sits at the null mean
        s = make([10, 10, 10, 10], [7, 13, 9, 11])
        result = wilcoxon_paired(s)
        assert result.p_value == 1.0

    def test_zeros_dropped(self):
        s = make([5, 6, 7, 8], [5, 7, 9, 12])
        result = wilcoxon_paired(s)
        assert result.n_effective == 3

    def test_all_zero_differences(self):
        with pytest.raises(AllZeroDifferences):
            wilcoxon_paired(make([1, 2, 3], [1, 2, 3]))

    def test_exact_golden_15(self, synthetic25_head15):
        result = wilcoxon_paired(synthetic25_head15)
        assert result.method is Method.WILCOXON_EXACT
        assert result.statistic == goldens.WILCOXON_W_PLUS_15
        assert result.p_value == pytest.approx(goldens.WILCOXON_EXACT_P_15, abs=1e-12)

    def test_approx_golden_25(self, synthetic25):
        result = wilcoxon_paired(synthetic25)
        assert result.method is Method.WILCOXON_NORMAL_APPROX
        assert result.statistic == goldens.WILCOXON_W_PLUS
        assert result.p_value == pytest.approx(goldens.WILCOXON_APPROX_P, abs=1e-6)

    def test_exact_approx_coupling_m20(self):
        from ahiagree.correlation import _approx_signed_rank_p, _exact_signed_rank_p

        rng = np.random.default_rng(41)
        for _ in range(20):
            d = rng.normal(0.7, 1.0, 20)
            d = d[d != 0]
            abs_d = np.abs(d)
            while len(np.unique(abs_d)) != len(d):  # pragma: no cover
                d = rng.normal(0.7, 1.0, 20)
                abs_d = np.abs(d)
            ranks = np.argsort(np.argsort(abs_d)) + 1.0
            w_plus = float(ranks[d > 0].sum())
            exact = _exact_signed_rank_p(int(round(w_plus)), len(d))
            approx = _approx_signed_rank_p(w_plus, abs_d, len(d))
            assert abs(exact - approx) < 0.02

    def test_p_value_in_unit_interval(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            s = random_sample(rng)
            try:
                result = wilcoxon_paired(s)
            except AllZeroDifferences:
                continue
            assert 0.0 < result.p_value <= 1.0


class TestPairedT:
    def test_hand_example(self):
        s = make([0, 2, 0], [1, 1, 2])  # differences [1, -1, 2]
        result = paired_t(s)
        assert result.statistic == pytest.approx(0.7559289460184544, abs=1e-9)
        assert result.n_effective == 3

    def test_symmetric_null(self):
        result = paired_t(make([5, 5], [3, 7]))
        assert result.statistic == 0.0
        assert result.p_value == 1.0

    def test_golden(self, synthetic25):
        result = paired_t(synthetic25)
        assert result.statistic == pytest.approx(goldens.PAIRED_T, abs=1e-9)
        assert result.p_value == pytest.approx(goldens.PAIRED_T_P, abs=1e-6)

    def test_constant_differences(self):
        with pytest.raises(ZeroVariance):
            paired_t(make([1, 2, 3], [4, 5, 6]))


def test_student_t_cdf_against_high_precision_table():
    for df, t, expected in goldens.T_CDF_TABLE:
        assert student_t_cdf(t, df) == pytest.approx(expected, abs=1e-8)


def test_p_values_consistent_under_swap(synthetic25):
    swapped = PairedSample(
        synthetic25.measured.copy(), synthetic25.reference.copy()
    )
    assert pearson(swapped).p_value == pytest.approx(
        pearson(synthetic25).p_value, rel=1e-9
    )
    # swapping negates differences: W+ becomes W-, same two-sided p
    assert wilcoxon_paired(swapped).p_value == pytest.approx(
        wilcoxon_paired(synthetic25).p_value, rel=1e-9
    )
    assert paired_t(swapped).statistic == pytest.approx(
        -paired_t(synthetic25).statistic, rel=1e-12
    )
