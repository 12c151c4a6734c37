"""Quantitative raw-value comparisons.

Pearson and Spearman correlation, Lin's concordance correlation coefficient
with a Fisher-z confidence interval and bias correction factor, ordinary and
through-origin linear fits, the Wilcoxon signed-rank paired test (exact by
enumeration where feasible) and the paired t test.

Everything follows the measured - reference sign convention.  The statistics
are computed here from first principles; scipy is used only for distribution
CDFs and quantiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import stats as _dist

from .errors import AllZeroDifferences, Degenerate, ZeroVariance
from .ingest import PairedSample

#: Largest m for which the Wilcoxon null distribution is enumerated exactly.
#: 2^20 sign patterns is still instant; beyond that the normal approximation
#: is already accurate.
WILCOXON_EXACT_LIMIT = 20


class Method(str, Enum):
    PEARSON_T = "pearson_t"
    SPEARMAN_T = "spearman_t"
    WILCOXON_EXACT = "wilcoxon_exact"
    WILCOXON_NORMAL_APPROX = "wilcoxon_normal_approx"
    PAIRED_T = "paired_t"


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    method: Method
    n_effective: int
    coefficient: float | None = None


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    with_intercept: bool


@dataclass(frozen=True)
class ConcordanceResult:
    ccc: float
    ci_low: float
    ci_high: float
    bias_correction: float
    pearson_r: float


def student_t_cdf(t: float, df: float) -> float:
    """CDF of Student's t; the basis of every t-derived p-value here."""
    return float(_dist.t.cdf(t, df))


def _two_sided_t_p(t: float, df: float) -> float:
    return min(1.0, 2.0 * float(_dist.t.sf(abs(t), df)))


def _t_from_r(r: float, n: int) -> tuple[float, float]:
    """t statistic and two-sided p for a correlation coefficient."""
    denom = 1.0 - r * r
    if denom <= 0.0:
        return math.copysign(math.inf, r), 0.0
    t = r * math.sqrt((n - 2) / denom)
    return t, _two_sided_t_p(t, n - 2)


def _midranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with tied values receiving the average of their positions."""
    values = np.asarray(values)
    order = np.argsort(values, kind="stable")
    sorted_vals = values[order]
    # tied runs share the mean of the 1-based positions they occupy
    boundaries = np.flatnonzero(
        np.r_[True, sorted_vals[1:] != sorted_vals[:-1], True]
    )
    ranks_sorted = np.empty(len(values), dtype=np.float64)
    for start, stop in zip(boundaries[:-1], boundaries[1:]):
        ranks_sorted[start:stop] = 0.5 * (start + 1 + stop)
    ranks = np.empty(len(values), dtype=np.float64)
    ranks[order] = ranks_sorted
    return ranks


def _pearson_r(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0:
        raise ZeroVariance("reference values are constant")
    if syy == 0.0:
        raise ZeroVariance("measured values are constant")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def _require_n(sample: PairedSample, n: int, what: str) -> None:
    if sample.n < n:
        raise ValueError(f"{what} needs at least {n} pairs, got {sample.n}")


def pearson(sample: PairedSample) -> TestResult:
    """Pearson's r with a two-sided p-value from the t transformation."""
    _require_n(sample, 3, "pearson")
    r = _pearson_r(sample.reference, sample.measured)
    t, p = _t_from_r(r, sample.n)
    return TestResult(
        statistic=t,
        p_value=p,
        method=Method.PEARSON_T,
        n_effective=sample.n,
        coefficient=r,
    )


def spearman(sample: PairedSample) -> TestResult:
    """Spearman's rho over mid-ranks, p via the t approximation.

    The t approximation is used for every n; for n < 10 it is coarser than an
    exact permutation p-value would be.
    """
    _require_n(sample, 3, "spearman")
    if np.all(sample.reference == sample.reference[0]):
        raise ZeroVariance("reference values are constant; ranks all tie")
    if np.all(sample.measured == sample.measured[0]):
        raise ZeroVariance("measured values are constant; ranks all tie")
    rho = _pearson_r(_midranks(sample.reference), _midranks(sample.measured))
    t, p = _t_from_r(rho, sample.n)
    return TestResult(
        statistic=t,
        p_value=p,
        method=Method.SPEARMAN_T,
        n_effective=sample.n,
        coefficient=rho,
    )


def lin_ccc(sample: PairedSample, confidence: float = 0.95) -> ConcordanceResult:
    """Lin's concordance correlation coefficient.

    Population (1/n) moments, matching the original definition.  The
    confidence interval is the Fisher z-transform of the coefficient with
    Lin's asymptotic variance, back-transformed.  The bias correction factor
    (how far the best-fit line tilts off the 45-degree diagonal) is 1 exactly
    when the two vectors agree perfectly.
    """
    _require_n(sample, 3, "lin_ccc")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    x = sample.reference
    y = sample.measured
    n = sample.n
    dx = x - x.mean()
    dy = y - y.mean()
    sx2 = float(dx @ dx) / n
    sy2 = float(dy @ dy) / n
    sxy = float(dx @ dy) / n
    if sx2 == 0.0:
        raise ZeroVariance("reference values are constant")
    if sy2 == 0.0:
        raise ZeroVariance("measured values are constant")
    location_shift = float(x.mean() - y.mean())
    ccc = 2.0 * sxy / (sx2 + sy2 + location_shift**2)
    # collinear-to-rounding vectors must give exactly |r| = 1, so that
    # perfect agreement yields ccc = r = bias_correction = 1 identically
    if sxy * sxy >= sx2 * sy2:
        r = math.copysign(1.0, sxy)
    else:
        r = sxy / math.sqrt(sx2 * sy2)

    if r != 0.0:
        bias_correction = ccc / r
    else:
        scale_ratio = math.sqrt(sx2 / sy2)
        u = location_shift / (sx2 * sy2) ** 0.25
        bias_correction = 2.0 / (scale_ratio + 1.0 / scale_ratio + u * u)

    ci_low, ci_high = _lin_ci(ccc, r, location_shift, sx2, sy2, n, confidence)
    return ConcordanceResult(
        ccc=ccc,
        ci_low=ci_low,
        ci_high=ci_high,
        bias_correction=bias_correction,
        pearson_r=r,
    )


def _lin_ci(
    ccc: float,
    r: float,
    location_shift: float,
    sx2: float,
    sy2: float,
    n: int,
    confidence: float,
) -> tuple[float, float]:
    if abs(ccc) >= 1.0:
        # perfect concordance: the z-transform degenerates
        return ccc, ccc
    z = math.atanh(ccc)
    c2 = ccc * ccc
    u = location_shift / (sx2 * sy2) ** 0.25
    one_minus_c2 = 1.0 - c2
    if r == 0.0:
        var_z = math.inf
    else:
        r2 = r * r
        var_z = (
            (1.0 - r2) * c2 / (one_minus_c2 * r2)
            + 2.0 * ccc**3 * (1.0 - ccc) * u * u / (r * one_minus_c2**2)
            - ccc**4 * u**4 / (2.0 * r2 * one_minus_c2**2)
        ) / (n - 2)
    half = float(_dist.norm.ppf(0.5 + confidence / 2.0)) * math.sqrt(max(var_z, 0.0))
    return math.tanh(z - half), math.tanh(z + half)


def fit_line(sample: PairedSample, with_intercept: bool = True) -> RegressionFit:
    """Least-squares line of measured on reference.

    With the intercept excluded, the slope is the through-origin estimate
    sum(xy)/sum(x^2) and the intercept is exactly 0.
    """
    x = sample.reference
    y = sample.measured
    if np.all(x == x[0]):
        raise Degenerate("all reference values are equal; no line can be fit")
    if with_intercept:
        dx = x - x.mean()
        slope = float(dx @ (y - y.mean())) / float(dx @ dx)
        intercept = float(y.mean()) - slope * float(x.mean())
    else:
        slope = float(x @ y) / float(x @ x)
        intercept = 0.0
    return RegressionFit(slope=slope, intercept=intercept, with_intercept=with_intercept)


def _exact_signed_rank_p(w_plus: int, m: int) -> float:
    """Two-sided p by full enumeration of the 2^m sign assignments.

    Tie-free ranks are the integers 1..m, so the null distribution of the
    positive-rank sum is accumulated by subset-sum counting; integer
    arithmetic keeps the result exact.
    """
    max_w = m * (m + 1) // 2
    counts = [0] * (max_w + 1)
    counts[0] = 1
    for rank in range(1, m + 1):
        for s in range(max_w, rank - 1, -1):
            counts[s] += counts[s - rank]
    c_le = sum(counts[: w_plus + 1])
    c_ge = sum(counts[w_plus:])
    total = 1 << m
    return min(1.0, 2.0 * min(c_le, c_ge) / total)


def _approx_signed_rank_p(w_plus: float, abs_diffs: np.ndarray, m: int) -> float:
    """Normal approximation with tie and continuity corrections."""
    mean_w = m * (m + 1) / 4.0
    var_w = m * (m + 1) * (2 * m + 1) / 24.0
    _, tie_sizes = np.unique(abs_diffs, return_counts=True)
    var_w -= float((tie_sizes**3 - tie_sizes).sum()) / 48.0
    shift = 0.5 * math.copysign(1.0, w_plus - mean_w) if w_plus != mean_w else 0.0
    z = (w_plus - mean_w - shift) / math.sqrt(var_w)
    return min(1.0, 2.0 * float(_dist.norm.sf(abs(z))))


def wilcoxon_paired(sample: PairedSample) -> TestResult:
    """Wilcoxon signed-rank test on measured - reference.

    Zero differences are dropped (n_effective reports the remainder).  With
    at most WILCOXON_EXACT_LIMIT tie-free differences the p-value is exact by
    enumeration; otherwise the tie- and continuity-corrected normal
    approximation is used.
    """
    d = sample.differences()
    nonzero = d[d != 0.0]
    m = len(nonzero)
    if m == 0:
        raise AllZeroDifferences("every measured value equals its reference")
    abs_d = np.abs(nonzero)
    ranks = _midranks(abs_d)
    w_plus = float(ranks[nonzero > 0].sum())
    tie_free = len(np.unique(abs_d)) == m
    if m <= WILCOXON_EXACT_LIMIT and tie_free:
        p = _exact_signed_rank_p(int(round(w_plus)), m)
        method = Method.WILCOXON_EXACT
    else:
        p = _approx_signed_rank_p(w_plus, abs_d, m)
        method = Method.WILCOXON_NORMAL_APPROX
    return TestResult(statistic=w_plus, p_value=p, method=method, n_effective=m)


def paired_t(sample: PairedSample) -> TestResult:
    """Paired t test on measured - reference (presumes normal differences)."""
    d = sample.differences()
    n = len(d)
    if n < 2:
        raise ValueError(f"paired_t needs at least 2 pairs, got {n}")
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        raise ZeroVariance("differences are constant")
    t = float(d.mean()) / (sd / math.sqrt(n))
    return TestResult(
        statistic=t,
        p_value=_two_sided_t_p(t, n - 1),
        method=Method.PAIRED_T,
        n_effective=n,
    )
