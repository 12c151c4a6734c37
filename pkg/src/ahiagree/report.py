"""Bundle assembly and canonical report serialization.

``analyze`` runs the whole battery over one sample and collects the results,
one entry per analysis tab.  A section whose statistic does not exist for
the sample at hand (constant vector, absent class, ...) is carried as an
``Undefined`` with the reason, never dropped and never silently zeroed.

Serialization is a single JSON tree with a fixed key order and lossless
(shortest round-trip) float formatting, so identical bundles always produce
byte-identical documents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import blandaltman, correlation, ranking, roc
from .blandaltman import LOA_MULTIPLIER, BlandAltmanResult
from .classify import (
    ADULT,
    ClassStats,
    ConfusionMatrix,
    SubrangeScheme,
    classify_many,
    confusion,
    qualitative_stats,
)
from .correlation import ConcordanceResult, RegressionFit, TestResult
from .errors import AnalysisError, ConfigError, Undefined
from .ingest import PairedSample
from .ranking import ErrorSummary, RankingConfig, error_summary
from .roc import MulticlassAuc, RocCurve

PAIRED_T_NOTE = (
    "presumes normally distributed differences; "
    "use the wilcoxon section when that assumption is doubtful"
)


@dataclass(frozen=True)
class LinearModels:
    with_intercept: RegressionFit
    through_origin: RegressionFit


@dataclass(frozen=True)
class QualitativeSection:
    stats: ClassStats
    matrix: ConfusionMatrix


@dataclass(frozen=True)
class RocSection:
    summary: MulticlassAuc
    curves: tuple[RocCurve, ...]


@dataclass(frozen=True)
class AnalysisBundle:
    """The complete result set for one sample and one configuration."""

    sample: PairedSample
    scheme: SubrangeScheme
    ranking: RankingConfig
    ci_level: float
    pearson: TestResult | Undefined
    spearman: TestResult | Undefined
    lin: ConcordanceResult | Undefined
    linear_models: LinearModels | Undefined
    wilcoxon: TestResult | Undefined
    paired_t: TestResult | Undefined
    bland_altman: BlandAltmanResult | Undefined
    modified_ba: BlandAltmanResult | Undefined
    relative_ba: BlandAltmanResult | Undefined
    errors: ErrorSummary | Undefined
    qualitative: QualitativeSection | Undefined
    roc: RocSection | Undefined
    warnings: tuple[str, ...] = ()

    #: order of the analysis sections in the serialized report
    SECTION_KEYS = (
        "pearson",
        "spearman",
        "lin",
        "linear_models",
        "wilcoxon",
        "paired_t",
        "bland_altman",
        "modified_ba",
        "relative_ba",
        "errors",
        "qualitative",
        "roc",
    )


def _linear_models(sample: PairedSample) -> LinearModels:
    return LinearModels(
        with_intercept=correlation.fit_line(sample, with_intercept=True),
        through_origin=correlation.fit_line(sample, with_intercept=False),
    )


def _roc_section(sample: PairedSample, scheme: SubrangeScheme) -> RocSection:
    summary = roc.multiclass_auc(sample, scheme)
    curves = tuple(
        roc.pairwise_roc(sample, scheme, pair) for pair in summary.pairwise
    )
    return RocSection(summary=summary, curves=curves)


def analyze(
    sample: PairedSample,
    scheme: SubrangeScheme | None = None,
    ranking_cfg: RankingConfig | None = None,
    ci: float = 0.95,
    extra_warnings: tuple[str, ...] = (),
) -> AnalysisBundle:
    """Run every analysis; per-section failures degrade to Undefined."""
    scheme = scheme or ADULT
    if ranking_cfg is None:
        ranking_cfg = RankingConfig.for_scheme(scheme)
    if not ranking_cfg.matches(scheme):
        raise ConfigError(
            f"ranking hotspots {ranking_cfg.hotspots} do not match "
            f"scheme thresholds {scheme.thresholds}"
        )
    if not 0.0 < ci < 1.0:
        raise ConfigError(f"confidence level must be in (0, 1), got {ci}")
    if sample.n < 3:
        raise ValueError(f"analysis needs at least 3 pairs, got {sample.n}")

    warnings = list(extra_warnings)

    def section(fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except AnalysisError as exc:
            return Undefined(str(exc))

    relative = section(blandaltman.relative_deviation_ba, sample)
    if isinstance(relative, BlandAltmanResult) and relative.n_excluded:
        warnings.append(
            f"relative deviation: {relative.n_excluded} zero-mean pair(s) excluded"
        )
    roc_sec = section(_roc_section, sample, scheme)
    if isinstance(roc_sec, RocSection) and roc_sec.summary.skipped_pairs:
        labels = scheme.labels
        skipped = ", ".join(
            f"{labels[a]}/{labels[b]}" for a, b in roc_sec.summary.skipped_pairs
        )
        warnings.append(f"roc: class pair(s) without reference members skipped: {skipped}")
    matrix = confusion(sample, scheme)

    return AnalysisBundle(
        sample=sample,
        scheme=scheme,
        ranking=ranking_cfg,
        ci_level=ci,
        pearson=section(correlation.pearson, sample),
        spearman=section(correlation.spearman, sample),
        lin=section(correlation.lin_ccc, sample, ci),
        linear_models=section(_linear_models, sample),
        wilcoxon=section(correlation.wilcoxon_paired, sample),
        paired_t=section(correlation.paired_t, sample),
        bland_altman=section(blandaltman.bland_altman, sample),
        modified_ba=section(blandaltman.modified_bland_altman, sample),
        relative_ba=relative,
        errors=section(error_summary, sample, scheme, ranking_cfg),
        qualitative=QualitativeSection(
            stats=qualitative_stats(matrix), matrix=matrix
        ),
        roc=roc_sec,
        warnings=tuple(warnings),
    )


def _enc(value):
    if isinstance(value, Undefined):
        return {"undefined": True, "reason": value.reason}
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return _enc(Undefined("value is not finite on this sample"))
    return value


def _num(value, reason: str):
    """Finite float, or the undefined marker; reports never carry inf/NaN."""
    value = float(value)
    if math.isfinite(value):
        return value
    return _enc(Undefined(reason))


def _encode_test(result: TestResult | Undefined, note: str | None = None):
    if isinstance(result, Undefined):
        return _enc(result)
    out = {}
    if result.coefficient is not None:
        out["coefficient"] = result.coefficient
    out.update(
        statistic=_num(
            result.statistic, "statistic diverges on this sample (|r| = 1)"
        ),
        p_value=result.p_value,
        method=result.method.value,
        n_effective=result.n_effective,
    )
    if note:
        out["note"] = note
    return out


def _encode_fit(fit: RegressionFit):
    return {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "with_intercept": fit.with_intercept,
    }


def _encode_ba(result: BlandAltmanResult | Undefined):
    if isinstance(result, Undefined):
        return _enc(result)
    out = {
        "variant": result.variant.value,
        "mean_diff": result.mean_diff,
        "sd_diff": result.sd_diff,
        "loa_low": result.loa_low,
        "loa_high": result.loa_high,
        # the spread is quoted under both conventions in the literature
        "loa_half_width": LOA_MULTIPLIER * result.sd_diff,
        "loa_full_width": 2.0 * LOA_MULTIPLIER * result.sd_diff,
        "points": [[float(x), float(y)] for x, y in result.points],
    }
    if result.fit is not None:
        out["fit"] = _encode_fit(result.fit)
    if result.n_excluded:
        out["n_excluded"] = result.n_excluded
    return out


def _encode_section(bundle: AnalysisBundle, key: str):
    value = getattr(bundle, key)
    if isinstance(value, Undefined):
        return _enc(value)
    if key in ("pearson", "spearman"):
        return _encode_test(value)
    if key == "wilcoxon":
        return _encode_test(value)
    if key == "paired_t":
        return _encode_test(value, note=PAIRED_T_NOTE)
    if key == "lin":
        return {
            "ccc": _enc(value.ccc),
            "ci_low": _enc(value.ci_low),
            "ci_high": _enc(value.ci_high),
            "bias_correction": _enc(value.bias_correction),
            "pearson_r": _enc(value.pearson_r),
        }
    if key == "linear_models":
        return {
            "with_intercept": _encode_fit(value.with_intercept),
            "through_origin": _encode_fit(value.through_origin),
        }
    if key in ("bland_altman", "modified_ba", "relative_ba"):
        return _encode_ba(value)
    if key == "errors":
        return {
            "mae": value.mae,
            "emae": value.emae,
            "emae_shape": value.shape.value,
            "heuristic_ratio": _enc(value.heuristic_ratio),
            "counts": {
                "above": value.n_above,
                "below": value.n_below,
                "on": value.n_on,
            },
        }
    if key == "qualitative":
        stats = value.stats
        return {
            "accuracy": stats.accuracy,
            "kappa": _enc(stats.kappa),
            "per_class": [
                {
                    "label": m.label,
                    "sensitivity": _enc(m.sensitivity),
                    "specificity": _enc(m.specificity),
                    "ppv": _enc(m.ppv),
                    "npv": _enc(m.npv),
                }
                for m in stats.per_class
            ],
            "matrix": value.matrix.counts.tolist(),
            "labels": list(value.matrix.scheme.labels),
        }
    if key == "roc":
        labels = bundle.scheme.labels
        return {
            "overall": value.summary.overall,
            "n_pairs_evaluated": value.summary.n_pairs_evaluated,
            "pairwise": [
                {
                    "classes": [a, b],
                    "labels": [labels[a], labels[b]],
                    "auc": auc,
                }
                for (a, b), auc in value.summary.pairwise.items()
            ],
            "skipped_pairs": [list(p) for p in value.summary.skipped_pairs],
            "curves": [
                {
                    "classes": list(curve.class_pair),
                    "points": [[float(x), float(y)] for x, y in curve.points],
                }
                for curve in value.curves
            ],
        }
    raise KeyError(key)


def bundle_to_dict(bundle: AnalysisBundle) -> dict:
    """The canonical report tree; key order is part of the format."""
    scheme = bundle.scheme
    ref_cls = classify_many(bundle.sample.reference, scheme)
    res_cls = classify_many(bundle.sample.measured, scheme)
    doc = {
        "config": {
            "thresholds": [scheme.t1, scheme.t2, scheme.t3],
            "labels": list(scheme.labels),
            "ranking": {
                "min": bundle.ranking.vmin,
                "max": bundle.ranking.vmax,
                "shape": bundle.ranking.shape.value,
                "tail_end": bundle.ranking.tail_end,
            },
            "ci_level": bundle.ci_level,
        },
        "data": {
            "n": bundle.sample.n,
            "column_names": list(bundle.sample.column_names),
            "pairs": [
                [float(r), float(m)]
                for r, m in zip(bundle.sample.reference, bundle.sample.measured)
            ],
            "reference_class_counts": {
                label: int(np.count_nonzero(ref_cls == k))
                for k, label in enumerate(scheme.labels)
            },
            "measured_class_counts": {
                label: int(np.count_nonzero(res_cls == k))
                for k, label in enumerate(scheme.labels)
            },
        },
    }
    for key in AnalysisBundle.SECTION_KEYS:
        doc[key] = _encode_section(bundle, key)
    doc["warnings"] = list(bundle.warnings)
    return doc


def bundle_to_json(bundle: AnalysisBundle) -> str:
    """Deterministic JSON document (two-space indent, trailing newline)."""
    return dumps_canonical(bundle_to_dict(bundle))


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"
