"""Agreement statistics for paired apnea-hypopnea index measurements.

The package compares a device's AHI readings against a reference method:
correlation and concordance, paired location tests, three Bland-Altman
variants, clinically weighted error measures, qualitative severity-class
agreement, and multi-class ROC, assembled into one deterministic report.
"""

__version__ = "0.1.0"

from .blandaltman import (
    LOA_MULTIPLIER,
    BAVariant,
    BlandAltmanResult,
    bland_altman,
    modified_bland_altman,
    relative_deviation_ba,
)
from .classify import (
    ADULT,
    DEFAULT_LABELS,
    PEDIATRIC,
    PRESETS,
    ClassMetrics,
    ClassStats,
    ConfusionMatrix,
    SubrangeScheme,
    classify,
    classify_many,
    confusion,
    qualitative_stats,
)
from .correlation import (
    ConcordanceResult,
    Method,
    RegressionFit,
    TestResult,
    fit_line,
    lin_ccc,
    paired_t,
    pearson,
    spearman,
    wilcoxon_paired,
)
from .errors import (
    AhiAgreeError,
    AnalysisError,
    ConfigError,
    DataWarning,
    InputError,
    Undefined,
)
from .ingest import MIN_ROWS, SANITY_BOUND, PairedSample, parse_pairs, to_csv
from .ranking import (
    ErrorSummary,
    RankingConfig,
    Shape,
    emae,
    error_summary,
    heuristic_ratio,
    line_counts,
    mae,
    ranking_value,
    ranking_values,
    sample_curve,
)
from .report import AnalysisBundle, analyze, bundle_to_dict, bundle_to_json
from .roc import MulticlassAuc, RocCurve, multiclass_auc, pairwise_roc

__all__ = [
    "__version__",
    "ADULT",
    "PEDIATRIC",
    "PRESETS",
    "DEFAULT_LABELS",
    "LOA_MULTIPLIER",
    "MIN_ROWS",
    "SANITY_BOUND",
    "AhiAgreeError",
    "AnalysisError",
    "AnalysisBundle",
    "BAVariant",
    "BlandAltmanResult",
    "ClassMetrics",
    "ClassStats",
    "ConcordanceResult",
    "ConfigError",
    "ConfusionMatrix",
    "DataWarning",
    "ErrorSummary",
    "InputError",
    "Method",
    "MulticlassAuc",
    "PairedSample",
    "RankingConfig",
    "RegressionFit",
    "RocCurve",
    "Shape",
    "SubrangeScheme",
    "TestResult",
    "Undefined",
    "analyze",
    "bland_altman",
    "bundle_to_dict",
    "bundle_to_json",
    "classify",
    "classify_many",
    "confusion",
    "emae",
    "error_summary",
    "fit_line",
    "heuristic_ratio",
    "line_counts",
    "lin_ccc",
    "mae",
    "modified_bland_altman",
    "multiclass_auc",
    "paired_t",
    "pairwise_roc",
    "parse_pairs",
    "pearson",
    "qualitative_stats",
    "ranking_value",
    "ranking_values",
    "relative_deviation_ba",
    "sample_curve",
    "spearman",
    "to_csv",
    "wilcoxon_paired",
]
