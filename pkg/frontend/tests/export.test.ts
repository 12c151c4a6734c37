import { describe, expect, it } from "vitest";
import { scatterChart } from "../src/charts";
import { buildExport } from "../src/export";
import type { UiState } from "../src/state";
import { DEFAULT_CONFIG } from "../src/types";
import { demoBundle } from "./helpers";

const rawResponse = JSON.stringify(demoBundle) + "\n";

function baseState(overrides: Partial<UiState> = {}): UiState {
  return {
    pairs: demoBundle.data.pairs,
    columnNames: ["reference", "measured"],
    sourceName: "demo.csv",
    config: { ...DEFAULT_CONFIG },
    activeTab: "pearson",
    bundle: demoBundle,
    bundleRaw: rawResponse,
    curve: null,
    curveShape: "cubic",
    pending: false,
    stale: false,
    error: null,
    ...overrides,
  };
}

function panelWithChart(): HTMLElement {
  const panel = document.createElement("main");
  panel.append(
    scatterChart({
      pairs: demoBundle.data.pairs,
      thresholds: demoBundle.config.thresholds,
      labels: demoBundle.config.labels,
      columnNames: demoBundle.data.column_names,
    }),
  );
  return panel;
}

describe("buildExport", () => {
  it("bundles the report JSON and the visible chart", () => {
    const result = buildExport(baseState(), panelWithChart());
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    expect(result.files.map((f) => f.name)).toEqual([
      "agreement-report.json",
      "chart-pearson.svg",
    ]);
    // byte-for-byte the service response, not a re-serialization
    expect(result.files[0].content).toBe(rawResponse);
    expect(JSON.parse(result.files[0].content)).toEqual(demoBundle);
    expect(result.files[1].content.startsWith('<?xml version="1.0"')).toBe(true);
    expect(result.files[1].content).toContain("<svg");
    expect(result.files[1].mime).toBe("image/svg+xml");
  });

  it("exports only the JSON when the open tab has no chart", () => {
    const panel = document.createElement("main");
    panel.append(document.createElement("table"));
    const result = buildExport(baseState({ activeTab: "extended" }), panel);
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    expect(result.files).toHaveLength(1);
    expect(result.files[0].name).toBe("agreement-report.json");
  });

  it("refuses to export stale results", () => {
    const result = buildExport(baseState({ stale: true }), panelWithChart());
    expect(result.ok).toBe(false);
    if (result.ok) return;
    expect(result.reason).toContain("re-run");
  });

  it("refuses to export before any analysis", () => {
    const result = buildExport(
      baseState({ bundle: null }),
      document.createElement("main"),
    );
    expect(result.ok).toBe(false);
    if (result.ok) return;
    expect(result.reason).toContain("run an analysis");
  });
});
