// One renderer per tab. Each reads the latest bundle from the store and
// returns a detached element for the panel area. Every displayed statistic
// sits in an element carrying data-field="<section>.<key>" so the value on
// screen can be traced (and tested) against the exact bundle field.

import { baChart, curveChart, rocChart, scatterChart } from "./charts";
import { formatInterval, formatMaybe, formatP, formatStat } from "./format";
import type { Store } from "./state";
import type {
  BaSection,
  Bundle,
  Maybe,
  TabId,
  TestSection,
  UndefinedMarker,
} from "./types";
import { TAB_IDS, TAB_TITLES, isUndefinedMarker } from "./types";

function h<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function undefinedCard(title: string, marker: UndefinedMarker): HTMLElement {
  const card = h("div", "undefined-card");
  card.append(
    h("h3", "", `${title} is not defined for this sample`),
    h("p", "undefined-reason", marker.reason),
    h(
      "p",
      "undefined-hint",
      "This is a property of the data, not an error: the quantity has no " +
        "meaningful value here. Adding more varied rows usually makes it computable.",
    ),
  );
  return card;
}

interface StatRow {
  label: string;
  field: string;
  value: string;
  note?: string;
}

function statTable(rows: StatRow[]): HTMLElement {
  const table = h("table", "stat-table");
  for (const row of rows) {
    const tr = h("tr");
    const td = h("td", "stat-value", row.value);
    td.dataset.field = row.field;
    if (row.note) td.title = row.note;
    tr.append(h("th", "", row.label), td);
    table.append(tr);
  }
  return table;
}

function maybeNote(v: Maybe<number>): string | undefined {
  return isUndefinedMarker(v) ? v.reason : undefined;
}

function testRows(section: TestSection, prefix: string): StatRow[] {
  const rows: StatRow[] = [];
  if (section.coefficient !== undefined) {
    rows.push({
      label: "coefficient",
      field: `${prefix}.coefficient`,
      value: formatStat(section.coefficient),
    });
  }
  rows.push(
    {
      label: "test statistic",
      field: `${prefix}.statistic`,
      value: formatMaybe(section.statistic),
      note: maybeNote(section.statistic),
    },
    { label: "p-value", field: `${prefix}.p_value`, value: formatP(section.p_value) },
    { label: "method", field: `${prefix}.method`, value: section.method },
    {
      label: "n used",
      field: `${prefix}.n_effective`,
      value: String(section.n_effective),
    },
  );
  return rows;
}

function scatterFromBundle(bundle: Bundle, withFits: boolean): HTMLElement {
  const fits =
    withFits && !isUndefinedMarker(bundle.linear_models)
      ? [
          { ...bundle.linear_models.with_intercept, withIntercept: true },
          { ...bundle.linear_models.through_origin, withIntercept: false },
        ]
      : [];
  return scatterChart({
    pairs: bundle.data.pairs,
    thresholds: bundle.config.thresholds,
    labels: bundle.config.labels,
    columnNames: bundle.data.column_names,
    fits,
  });
}

function classCountTable(bundle: Bundle): HTMLElement {
  const table = h("table", "stat-table class-counts");
  const head = h("tr");
  head.append(h("th"), h("th", "", bundle.data.column_names[0]), h("th", "", bundle.data.column_names[1]));
  table.append(head);
  for (const label of bundle.config.labels) {
    const tr = h("tr");
    const ref = h("td", "", String(bundle.data.reference_class_counts[label] ?? 0));
    ref.dataset.field = `data.reference_class_counts.${label}`;
    const meas = h("td", "", String(bundle.data.measured_class_counts[label] ?? 0));
    meas.dataset.field = `data.measured_class_counts.${label}`;
    tr.append(h("th", "", label), ref, meas);
    table.append(tr);
  }
  return table;
}

function renderContents(store: Store): HTMLElement {
  const { bundle, sourceName } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", "Dataset"));
  const n = h("p", "dataset-n");
  const count = h("span", "", String(bundle.data.n));
  count.dataset.field = "data.n";
  n.append(count, ` pairs${sourceName ? ` from ${sourceName}` : ""}`);
  panel.append(n);
  panel.append(h("h3", "", "Data preview"));
  const preview = h("table", "stat-table data-preview");
  const previewHead = h("tr");
  previewHead.append(
    h("th", "", "#"),
    h("th", "", bundle.data.column_names[0]),
    h("th", "", bundle.data.column_names[1]),
  );
  preview.append(previewHead);
  const shown = bundle.data.pairs.slice(0, 10);
  shown.forEach(([ref, meas], i) => {
    const tr = h("tr");
    tr.append(
      h("th", "", String(i + 1)),
      h("td", "", formatStat(ref)),
      h("td", "", formatStat(meas)),
    );
    preview.append(tr);
  });
  panel.append(preview);
  if (bundle.data.n > shown.length) {
    panel.append(
      h("p", "preview-note", `showing the first ${shown.length} of ${bundle.data.n} rows`),
    );
  }
  panel.append(h("h3", "", "Severity class counts"), classCountTable(bundle));
  if (bundle.warnings.length > 0) {
    panel.append(h("h3", "", "Warnings"));
    const ul = h("ul", "warnings");
    for (const w of bundle.warnings) ul.append(h("li", "warning", w));
    panel.append(ul);
  }
  panel.append(h("h3", "", "Agreement at a glance"), scatterFromBundle(bundle, false));
  const toc = h("ul", "tab-directory");
  for (const id of TAB_IDS) {
    if (id !== "contents") toc.append(h("li", "", TAB_TITLES[id]));
  }
  panel.append(h("h3", "", "Sections"), toc);
  return panel;
}

function renderPearson(store: Store): HTMLElement {
  const { bundle } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", "Pearson correlation"));
  if (isUndefinedMarker(bundle.pearson)) {
    panel.append(undefinedCard("Pearson correlation", bundle.pearson));
  } else {
    panel.append(statTable(testRows(bundle.pearson, "pearson")));
  }
  panel.append(scatterFromBundle(bundle, false));
  return panel;
}

function renderExtended(store: Store): HTMLElement {
  const { bundle } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", "Spearman rank correlation"));
  if (isUndefinedMarker(bundle.spearman)) {
    panel.append(undefinedCard("Spearman correlation", bundle.spearman));
  } else {
    panel.append(statTable(testRows(bundle.spearman, "spearman")));
  }
  panel.append(h("h2", "", "Lin's concordance"));
  if (isUndefinedMarker(bundle.lin)) {
    panel.append(undefinedCard("Lin's concordance", bundle.lin));
  } else {
    const lin = bundle.lin;
    const ciRow: StatRow =
      isUndefinedMarker(lin.ci_low) || isUndefinedMarker(lin.ci_high)
        ? {
            label: "confidence interval",
            field: "lin.ci_low",
            value: "undefined",
            note: maybeNote(lin.ci_low) ?? maybeNote(lin.ci_high),
          }
        : {
            label: "confidence interval",
            field: "lin.ci",
            value: formatInterval(lin.ci_low, lin.ci_high),
          };
    panel.append(
      statTable([
        {
          label: "CCC",
          field: "lin.ccc",
          value: formatMaybe(lin.ccc),
          note: maybeNote(lin.ccc),
        },
        ciRow,
        {
          label: "bias correction C_b",
          field: "lin.bias_correction",
          value: formatMaybe(lin.bias_correction),
          note: maybeNote(lin.bias_correction),
        },
        {
          label: "Pearson r",
          field: "lin.pearson_r",
          value: formatMaybe(lin.pearson_r),
          note: maybeNote(lin.pearson_r),
        },
      ]),
    );
  }
  return panel;
}

function renderLinear(store: Store): HTMLElement {
  const { bundle } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", "Linear models"));
  if (isUndefinedMarker(bundle.linear_models)) {
    panel.append(undefinedCard("Linear model fitting", bundle.linear_models));
    return panel;
  }
  const lm = bundle.linear_models;
  panel.append(
    statTable([
      {
        label: "slope (with intercept)",
        field: "linear_models.with_intercept.slope",
        value: formatStat(lm.with_intercept.slope),
      },
      {
        label: "intercept",
        field: "linear_models.with_intercept.intercept",
        value: formatStat(lm.with_intercept.intercept),
      },
      {
        label: "slope (through origin)",
        field: "linear_models.through_origin.slope",
        value: formatStat(lm.through_origin.slope),
      },
    ]),
    scatterFromBundle(bundle, true),
  );
  return panel;
}

function renderWilcoxon(store: Store): HTMLElement {
  const { bundle } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", "Wilcoxon signed-rank test"));
  if (isUndefinedMarker(bundle.wilcoxon)) {
    panel.append(undefinedCard("The Wilcoxon test", bundle.wilcoxon));
  } else {
    panel.append(statTable(testRows(bundle.wilcoxon, "wilcoxon")));
  }
  panel.append(h("h2", "", "Paired t-test"));
  if (isUndefinedMarker(bundle.paired_t)) {
    panel.append(undefinedCard("The paired t-test", bundle.paired_t));
  } else {
    panel.append(statTable(testRows(bundle.paired_t, "paired_t")));
    if (bundle.paired_t.note) {
      panel.append(h("p", "method-note", bundle.paired_t.note));
    }
  }
  return panel;
}

function baRows(section: BaSection, prefix: string): StatRow[] {
  const unit = section.variant === "relative_deviation" ? " %" : "";
  const rows: StatRow[] = [
    {
      label: `mean difference${unit}`,
      field: `${prefix}.mean_diff`,
      value: formatStat(section.mean_diff),
    },
    {
      label: `SD of differences${unit}`,
      field: `${prefix}.sd_diff`,
      value: formatStat(section.sd_diff),
    },
    {
      label: "lower limit of agreement",
      field: `${prefix}.loa_low`,
      value: formatStat(section.loa_low),
    },
    {
      label: "upper limit of agreement",
      field: `${prefix}.loa_high`,
      value: formatStat(section.loa_high),
    },
    {
      label: "limit half-width",
      field: `${prefix}.loa_half_width`,
      value: formatStat(section.loa_half_width),
    },
  ];
  if (section.fit) {
    rows.push(
      {
        label: "trend slope",
        field: `${prefix}.fit.slope`,
        value: formatStat(section.fit.slope),
      },
      {
        label: "trend intercept",
        field: `${prefix}.fit.intercept`,
        value: formatStat(section.fit.intercept),
      },
    );
  }
  if (section.n_excluded !== undefined) {
    rows.push({
      label: "zero-mean pairs excluded",
      field: `${prefix}.n_excluded`,
      value: String(section.n_excluded),
    });
  }
  return rows;
}

function renderBaVariant(
  store: Store,
  key: "bland_altman" | "modified_ba" | "relative_ba",
  title: string,
): HTMLElement {
  const { bundle } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", title));
  const section = bundle[key];
  if (isUndefinedMarker(section)) {
    panel.append(undefinedCard(title, section));
    return panel;
  }
  panel.append(
    statTable(baRows(section, key)),
    baChart(section, bundle.data.column_names),
  );
  return panel;
}

function renderErrors(store: Store): HTMLElement {
  const { bundle, curve, curveShape, config } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", "Absolute error and weighted error"));
  if (isUndefinedMarker(bundle.errors)) {
    panel.append(undefinedCard("The error summary", bundle.errors));
    return panel;
  }
  const errors = bundle.errors;
  panel.append(
    statTable([
      { label: "MAE", field: "errors.mae", value: formatStat(errors.mae) },
      { label: "eMAE", field: "errors.emae", value: formatStat(errors.emae) },
      {
        label: "ranking shape used",
        field: "errors.emae_shape",
        value: errors.emae_shape,
      },
      {
        label: "heuristic ratio eMAE/MAE",
        field: "errors.heuristic_ratio",
        value: formatMaybe(errors.heuristic_ratio),
        note: maybeNote(errors.heuristic_ratio),
      },
      {
        label: "pairs above the line",
        field: "errors.counts.above",
        value: String(errors.counts.above),
      },
      {
        label: "pairs below the line",
        field: "errors.counts.below",
        value: String(errors.counts.below),
      },
      {
        label: "pairs on the line",
        field: "errors.counts.on",
        value: String(errors.counts.on),
      },
    ]),
  );
  panel.append(h("h3", "", "Ranking function"));
  const toggle = h("div", "shape-toggle");
  for (const shape of ["cubic", "sinusoidal", "linear"] as const) {
    const btn = h("button", "shape-button", shape);
    btn.type = "button";
    btn.dataset.shape = shape;
    if (shape === curveShape) btn.classList.add("active");
    btn.addEventListener("click", () => {
      void store.fetchCurve(shape);
    });
    toggle.append(btn);
  }
  panel.append(toggle);
  if (curve) {
    panel.append(curveChart(curve, config.thresholds));
  } else {
    panel.append(h("p", "curve-placeholder", "loading ranking curve…"));
  }
  return panel;
}

function renderQualitative(store: Store): HTMLElement {
  const { bundle } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", "Severity class agreement"));
  if (isUndefinedMarker(bundle.qualitative)) {
    panel.append(undefinedCard("Class agreement", bundle.qualitative));
    return panel;
  }
  const q = bundle.qualitative;
  panel.append(
    statTable([
      {
        label: "accuracy",
        field: "qualitative.accuracy",
        value: formatStat(q.accuracy),
      },
      {
        label: "Cohen's kappa",
        field: "qualitative.kappa",
        value: formatMaybe(q.kappa),
        note: maybeNote(q.kappa),
      },
    ]),
  );
  panel.append(h("h3", "", "Confusion matrix (rows: reference)"));
  const matrix = h("table", "stat-table confusion-matrix");
  const head = h("tr");
  head.append(h("th"));
  for (const label of q.labels) head.append(h("th", "", label));
  matrix.append(head);
  q.matrix.forEach((row, i) => {
    const tr = h("tr");
    tr.append(h("th", "", q.labels[i]));
    row.forEach((count, j) => {
      const td = h("td", "matrix-cell", String(count));
      td.dataset.field = `qualitative.matrix.${i}.${j}`;
      if (i === j) td.classList.add("diagonal");
      tr.append(td);
    });
    matrix.append(tr);
  });
  panel.append(matrix);
  panel.append(h("h3", "", "Per-class screening metrics"));
  const per = h("table", "stat-table per-class");
  const perHead = h("tr");
  for (const col of ["class", "sensitivity", "specificity", "PPV", "NPV"]) {
    perHead.append(h("th", "", col));
  }
  per.append(perHead);
  q.per_class.forEach((metrics, i) => {
    const tr = h("tr");
    tr.append(h("th", "", metrics.label));
    for (const key of ["sensitivity", "specificity", "ppv", "npv"] as const) {
      const td = h("td", "", formatMaybe(metrics[key]));
      td.dataset.field = `qualitative.per_class.${i}.${key}`;
      const note = maybeNote(metrics[key]);
      if (note) td.title = note;
      tr.append(td);
    }
    per.append(tr);
  });
  panel.append(per);
  return panel;
}

function renderRoc(store: Store): HTMLElement {
  const { bundle } = store.snapshot;
  const panel = h("section", "tab-panel");
  if (!bundle) return panel;
  panel.append(h("h2", "", "Pairwise ROC analysis"));
  if (isUndefinedMarker(bundle.roc)) {
    panel.append(undefinedCard("ROC analysis", bundle.roc));
    return panel;
  }
  const roc = bundle.roc;
  panel.append(
    statTable([
      {
        label: "overall AUC (unweighted mean)",
        field: "roc.overall",
        value: formatStat(roc.overall),
      },
      {
        label: "class pairs evaluated",
        field: "roc.n_pairs_evaluated",
        value: String(roc.n_pairs_evaluated),
      },
    ]),
  );
  const table = h("table", "stat-table pairwise-auc");
  const head = h("tr");
  head.append(h("th", "", "class pair"), h("th", "", "AUC"));
  table.append(head);
  roc.pairwise.forEach((pw, i) => {
    const tr = h("tr");
    const td = h("td", "", formatStat(pw.auc));
    td.dataset.field = `roc.pairwise.${i}.auc`;
    tr.append(h("th", "", `${pw.labels[0]} vs ${pw.labels[1]}`), td);
    table.append(tr);
  });
  panel.append(table);
  if (roc.skipped_pairs.length > 0) {
    panel.append(
      h(
        "p",
        "skipped-pairs",
        `${roc.skipped_pairs.length} class pair(s) skipped: a class has no subjects in this sample.`,
      ),
    );
  }
  panel.append(rocChart(roc));
  return panel;
}

export const TAB_RENDERERS: Record<TabId, (store: Store) => HTMLElement> = {
  contents: renderContents,
  pearson: renderPearson,
  extended: renderExtended,
  linear: renderLinear,
  wilcoxon: renderWilcoxon,
  ba: (s) => renderBaVariant(s, "bland_altman", "Bland-Altman agreement"),
  "modified-ba": (s) =>
    renderBaVariant(s, "modified_ba", "Modified Bland-Altman (reference on x)"),
  "relative-ba": (s) =>
    renderBaVariant(s, "relative_ba", "Relative deviation Bland-Altman"),
  errors: renderErrors,
  qualitative: renderQualitative,
  roc: renderRoc,
};

export function renderTab(tab: TabId, store: Store): HTMLElement {
  return TAB_RENDERERS[tab](store);
}
