"""Clinical AHI subranges and qualitative agreement statistics.

Four severity classes are induced by three thresholds, lower bound inclusive,
upper bound exclusive: [0, t1), [t1, t2), [t2, t3), [t3, inf).  Agreement
between reference and measured classifications is summarized by a 4x4
confusion matrix and the usual one-vs-rest statistics plus Cohen's kappa.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, Undefined
from .ingest import PairedSample

DEFAULT_LABELS = ("Normal", "Mild", "Moderate", "Severe")


@dataclass(frozen=True)
class SubrangeScheme:
    """Ordered AHI thresholds defining the four severity classes."""

    t1: float
    t2: float
    t3: float
    labels: tuple[str, str, str, str] = DEFAULT_LABELS

    def __post_init__(self):
        if not (0 < self.t1 < self.t2 < self.t3):
            raise ConfigError(
                f"thresholds must be strictly increasing and positive, "
                f"got ({self.t1}, {self.t2}, {self.t3})"
            )
        if len(self.labels) != 4:
            raise ConfigError("exactly four class labels are required")

    @property
    def thresholds(self) -> tuple[float, float, float]:
        return (self.t1, self.t2, self.t3)


ADULT = SubrangeScheme(5.0, 15.0, 30.0)
PEDIATRIC = SubrangeScheme(1.0, 5.0, 10.0)

PRESETS = {"adult": ADULT, "pediatric": PEDIATRIC}


def classify(value: float, scheme: SubrangeScheme) -> int:
    """Class index 0..3 of the subrange containing ``value``."""
    if value < 0:
        raise ValueError(f"AHI must be non-negative, got {value}")
    return int(np.searchsorted(scheme.thresholds, value, side="right"))


def classify_many(values: np.ndarray, scheme: SubrangeScheme) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    if np.any(values < 0):
        raise ValueError("AHI must be non-negative")
    return np.searchsorted(scheme.thresholds, values, side="right")


@dataclass(frozen=True)
class ConfusionMatrix:
    """4x4 counts; rows are the reference class, columns the measured class."""

    counts: np.ndarray
    scheme: SubrangeScheme

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {counts.shape}")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def confusion(sample: PairedSample, scheme: SubrangeScheme) -> ConfusionMatrix:
    """Tabulate reference class vs measured class over the sample."""
    ref_cls = classify_many(sample.reference, scheme)
    res_cls = classify_many(sample.measured, scheme)
    counts = np.zeros((4, 4), dtype=np.int64)
    np.add.at(counts, (ref_cls, res_cls), 1)
    return ConfusionMatrix(counts, scheme)


@dataclass(frozen=True)
class ClassMetrics:
    """One-vs-rest statistics for a single severity class."""

    label: str
    sensitivity: float | Undefined
    specificity: float | Undefined
    ppv: float | Undefined
    npv: float | Undefined


@dataclass(frozen=True)
class ClassStats:
    accuracy: float
    kappa: float | Undefined
    per_class: tuple[ClassMetrics, ...]


def _ratio(num: float, den: float, reason: str) -> float | Undefined:
    if den == 0:
        return Undefined(reason)
    return float(num) / float(den)


def qualitative_stats(m: ConfusionMatrix) -> ClassStats:
    """Accuracy, Cohen's kappa, and one-vs-rest per-class statistics.

    Any statistic whose denominator is zero (a class absent from the sample,
    which is common in small studies) comes back as ``Undefined`` rather than
    0 or NaN.
    """
    counts = m.counts
    total = m.total
    if total < 1:
        raise ValueError("confusion matrix is empty")

    accuracy = float(np.trace(counts)) / total
    row_sums = counts.sum(axis=1)
    col_sums = counts.sum(axis=0)

    p_e = float(row_sums @ col_sums) / (total * total)
    if p_e == 1.0:
        kappa: float | Undefined = Undefined("chance agreement is 1")
    else:
        kappa = (accuracy - p_e) / (1.0 - p_e)

    per_class = []
    for k, label in enumerate(m.scheme.labels):
        tp = float(counts[k, k])
        fn = float(row_sums[k]) - tp
        fp = float(col_sums[k]) - tp
        tn = total - tp - fn - fp
        per_class.append(
            ClassMetrics(
                label=label,
                sensitivity=_ratio(tp, tp + fn, f"no {label} cases in reference"),
                specificity=_ratio(tn, tn + fp, f"all cases are {label} in reference"),
                ppv=_ratio(tp, tp + fp, f"no {label} predictions by the device"),
                npv=_ratio(tn, tn + fn, f"all predictions are {label}"),
            )
        )
    return ClassStats(accuracy=accuracy, kappa=kappa, per_class=tuple(per_class))
