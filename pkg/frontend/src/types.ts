// Shapes of the documents the analysis service returns. These mirror the
// report schema; the UI adds nothing and computes nothing.

export type Pair = [number, number];

export type ShapeName = "cubic" | "sinusoidal" | "linear";

export interface UndefinedMarker {
  undefined: true;
  reason: string;
}

export type Maybe<T> = T | UndefinedMarker;

export function isUndefinedMarker(v: unknown): v is UndefinedMarker {
  return (
    typeof v === "object" &&
    v !== null &&
    (v as Record<string, unknown>)["undefined"] === true
  );
}

export interface TestSection {
  coefficient?: number;
  statistic: Maybe<number>;
  p_value: number;
  method: string;
  n_effective: number;
  note?: string;
}

export interface LinSection {
  ccc: Maybe<number>;
  ci_low: Maybe<number>;
  ci_high: Maybe<number>;
  bias_correction: Maybe<number>;
  pearson_r: Maybe<number>;
}

export interface FitModel {
  slope: number;
  intercept: number;
  with_intercept: boolean;
}

export interface LinearModelsSection {
  with_intercept: FitModel;
  through_origin: FitModel;
}

export interface BaSection {
  variant: "classic" | "modified" | "relative_deviation";
  mean_diff: number;
  sd_diff: number;
  loa_low: number;
  loa_high: number;
  loa_half_width: number;
  loa_full_width: number;
  points: Pair[];
  fit?: FitModel;
  n_excluded?: number;
}

export interface ErrorsSection {
  mae: number;
  emae: number;
  emae_shape: ShapeName;
  heuristic_ratio: Maybe<number>;
  counts: { above: number; below: number; on: number };
}

export interface PerClassMetrics {
  label: string;
  sensitivity: Maybe<number>;
  specificity: Maybe<number>;
  ppv: Maybe<number>;
  npv: Maybe<number>;
}

export interface QualitativeSection {
  accuracy: number;
  kappa: Maybe<number>;
  per_class: PerClassMetrics[];
  matrix: number[][];
  labels: string[];
}

export interface RocSection {
  overall: number;
  n_pairs_evaluated: number;
  pairwise: { classes: [number, number]; labels: [string, string]; auc: number }[];
  skipped_pairs: [number, number][];
  curves: { classes: [number, number]; points: Pair[] }[];
}

export interface Bundle {
  config: {
    thresholds: [number, number, number];
    labels: string[];
    ranking: { min: number; max: number; shape: ShapeName; tail_end: number };
    ci_level: number;
  };
  data: {
    n: number;
    column_names: [string, string];
    pairs: Pair[];
    reference_class_counts: Record<string, number>;
    measured_class_counts: Record<string, number>;
  };
  pearson: Maybe<TestSection>;
  spearman: Maybe<TestSection>;
  lin: Maybe<LinSection>;
  linear_models: Maybe<LinearModelsSection>;
  wilcoxon: Maybe<TestSection>;
  paired_t: Maybe<TestSection>;
  bland_altman: Maybe<BaSection>;
  modified_ba: Maybe<BaSection>;
  relative_ba: Maybe<BaSection>;
  errors: Maybe<ErrorsSection>;
  qualitative: Maybe<QualitativeSection>;
  roc: Maybe<RocSection>;
  warnings: string[];
}

export interface CurveResponse {
  config: {
    thresholds: [number, number, number];
    min: number;
    max: number;
    shape: ShapeName;
    samples: number;
  };
  x: number[];
  values: number[];
}

export interface AnalysisConfig {
  thresholds: [number, number, number];
  ranking_min: number;
  ranking_max: number;
  shape: ShapeName;
  ci: number;
}

export const DEFAULT_CONFIG: AnalysisConfig = {
  thresholds: [5, 15, 30],
  ranking_min: 0.5,
  ranking_max: 1.5,
  shape: "cubic",
  ci: 0.95,
};

export const TAB_IDS = [
  "contents",
  "pearson",
  "extended",
  "linear",
  "wilcoxon",
  "ba",
  "modified-ba",
  "relative-ba",
  "errors",
  "qualitative",
  "roc",
] as const;

export type TabId = (typeof TAB_IDS)[number];

export const TAB_TITLES: Record<TabId, string> = {
  contents: "Contents",
  pearson: "Pearson",
  extended: "Extended Correlation",
  linear: "Linear Models",
  wilcoxon: "Wilcoxon",
  ba: "Bland-Altman",
  "modified-ba": "Modified BA",
  "relative-ba": "Relative Deviation BA",
  errors: "MAE / eMAE / Heuristics",
  qualitative: "Qualitative",
  roc: "ROC",
};
