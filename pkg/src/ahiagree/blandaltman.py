"""Classic, modified, and relative-deviation Bland-Altman analyses.

All three variants summarize measured - reference differences with the mean
bias and the +-1.96 SD limits of agreement (sample SD, n-1 denominator).
They differ in the X axis: the pair mean (classic), the reference value
(modified, with a fitted line diagnosing value-dependent bias), or the pair
mean again but with differences expressed as a percentage of it (relative
deviation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .correlation import RegressionFit
from .errors import AllExcluded, Degenerate
from .ingest import PairedSample

#: Fixed limits-of-agreement multiplier.
LOA_MULTIPLIER = 1.96


class BAVariant(str, Enum):
    CLASSIC = "classic"
    MODIFIED = "modified"
    RELATIVE_DEVIATION = "relative_deviation"


@dataclass(frozen=True)
class BlandAltmanResult:
    variant: BAVariant
    points: np.ndarray  # shape (k, 2): (x, y) per included pair
    mean_diff: float
    sd_diff: float
    loa_low: float
    loa_high: float
    fit: RegressionFit | None = None
    n_excluded: int = 0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"points must have shape (k, 2), got {pts.shape}")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)


def _summarize(
    variant: BAVariant,
    x: np.ndarray,
    y: np.ndarray,
    fit: RegressionFit | None = None,
    n_excluded: int = 0,
) -> BlandAltmanResult:
    mean_diff = float(y.mean())
    sd_diff = float(y.std(ddof=1))
    half = LOA_MULTIPLIER * sd_diff
    return BlandAltmanResult(
        variant=variant,
        points=np.column_stack([x, y]),
        mean_diff=mean_diff,
        sd_diff=sd_diff,
        loa_low=mean_diff - half,
        loa_high=mean_diff + half,
        fit=fit,
        n_excluded=n_excluded,
    )


def _require_n(n: int, what: str) -> None:
    if n < 2:
        raise ValueError(f"{what} needs at least 2 pairs, got {n}")


def bland_altman(sample: PairedSample) -> BlandAltmanResult:
    """Classic plot: pair means on X, differences on Y."""
    _require_n(sample.n, "bland_altman")
    x = (sample.reference + sample.measured) / 2.0
    y = sample.differences()
    return _summarize(BAVariant.CLASSIC, x, y)


def modified_bland_altman(sample: PairedSample) -> BlandAltmanResult:
    """Reference values on X; the OLS fit's slope flags value-dependent bias."""
    _require_n(sample.n, "modified_bland_altman")
    x = sample.reference
    y = sample.differences()
    if np.all(x == x[0]):
        raise Degenerate("all reference values are equal; no line can be fit")
    dx = x - x.mean()
    slope = float(dx @ (y - y.mean())) / float(dx @ dx)
    intercept = float(y.mean()) - slope * float(x.mean())
    fit = RegressionFit(slope=slope, intercept=intercept, with_intercept=True)
    return _summarize(BAVariant.MODIFIED, x, y, fit=fit)


def relative_deviation_ba(sample: PairedSample) -> BlandAltmanResult:
    """Differences as a percentage of the pair mean.

    Pairs whose mean is zero (both values 0) have no defined relative
    deviation and are excluded; n_excluded reports how many.
    """
    _require_n(sample.n, "relative_deviation_ba")
    means = (sample.reference + sample.measured) / 2.0
    included = means != 0.0
    n_excluded = int(np.count_nonzero(~included))
    if not included.any():
        raise AllExcluded("every pair has zero mean; no relative deviation exists")
    x = means[included]
    y = 100.0 * sample.differences()[included] / x
    if len(x) < 2:
        raise AllExcluded(
            "fewer than 2 pairs have a nonzero mean; spread is undefined"
        )
    return _summarize(BAVariant.RELATIVE_DEVIATION, x, y, n_excluded=n_excluded)
