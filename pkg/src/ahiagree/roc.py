"""Pairwise ROC curves and the averaged multi-class AUC.

The continuous measured AHI is the score; the reference classification is
the response.  For each pair of classes present in the reference data, a
two-class ROC is built over the rows belonging to those classes, with the
higher-severity class as positive.  The overall multi-class AUC is the
unweighted mean of the pairwise areas.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .classify import SubrangeScheme, classify_many
from .errors import ClassAbsent, SingleClass
from .ingest import PairedSample


@dataclass(frozen=True)
class RocCurve:
    class_pair: tuple[int, int]  # (negative, positive) = (lower, higher severity)
    points: np.ndarray  # (k, 2) rows of (false positive rate, true positive rate)
    auc: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class MulticlassAuc:
    overall: float
    pairwise: dict[tuple[int, int], float]
    n_pairs_evaluated: int
    skipped_pairs: tuple[tuple[int, int], ...] = ()


def _curve_points(neg: np.ndarray, pos: np.ndarray) -> np.ndarray:
    """Threshold sweep over the unique scores, descending; ties lumped."""
    thresholds = np.unique(np.concatenate([neg, pos]))[::-1]
    fpr = [0.0]
    tpr = [0.0]
    for t in thresholds:
        fpr.append(float(np.count_nonzero(neg >= t)) / len(neg))
        tpr.append(float(np.count_nonzero(pos >= t)) / len(pos))
    return np.column_stack([fpr, tpr])


def pairwise_roc(
    sample: PairedSample, scheme: SubrangeScheme, pair: tuple[int, int]
) -> RocCurve:
    """ROC of the measured score restricted to two reference classes."""
    lo, hi = sorted(pair)
    if lo == hi or not (0 <= lo <= 3 and 0 <= hi <= 3):
        raise ValueError(f"invalid class pair {pair}")
    ref_cls = classify_many(sample.reference, scheme)
    neg = sample.measured[ref_cls == lo]
    pos = sample.measured[ref_cls == hi]
    for idx, members in ((lo, neg), (hi, pos)):
        if len(members) == 0:
            raise ClassAbsent(
                f"class {scheme.labels[idx]} has no members in the reference data"
            )
    points = _curve_points(neg, pos)
    auc = float(np.trapezoid(points[:, 1], points[:, 0]))
    return RocCurve(class_pair=(lo, hi), points=points, auc=auc)


def multiclass_auc(sample: PairedSample, scheme: SubrangeScheme) -> MulticlassAuc:
    """Unweighted mean of pairwise AUCs over all class pairs present.

    Pairs involving a class absent from the reference classification are
    skipped and reported, not imputed.
    """
    ref_cls = classify_many(sample.reference, scheme)
    present = sorted(set(int(c) for c in ref_cls))
    if len(present) < 2:
        raise SingleClass(
            "fewer than two severity classes present in the reference data"
        )
    pairwise: dict[tuple[int, int], float] = {}
    skipped = []
    for pair in combinations(range(4), 2):
        if pair[0] in present and pair[1] in present:
            pairwise[pair] = pairwise_roc(sample, scheme, pair).auc
        else:
            skipped.append(pair)
    overall = float(np.mean(list(pairwise.values())))
    return MulticlassAuc(
        overall=overall,
        pairwise=pairwise,
        n_pairs_evaluated=len(pairwise),
        skipped_pairs=tuple(skipped),
    )
