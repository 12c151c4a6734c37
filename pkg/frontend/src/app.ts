// Builds the page and wires controls to the store. Kept separate from the
// entry module so tests can mount the app against a stubbed client.

import { ParseError, parsePairsText } from "./csv";
import { buildExport, triggerDownload } from "./export";
import type { Store } from "./state";
import { renderTab } from "./tabs";
import type { ShapeName, TabId } from "./types";
import { TAB_IDS, TAB_TITLES } from "./types";
import { isSpreadsheet, xlsxToCsv } from "./xlsx";

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

function numberInput(
  id: string,
  label: string,
  value: number,
  step: string,
): [HTMLLabelElement, HTMLInputElement] {
  const wrap = h("label", "control");
  wrap.append(label);
  const input = h("input");
  input.type = "number";
  input.id = id;
  input.step = step;
  input.value = String(value);
  wrap.append(input);
  return [wrap, input];
}

export async function parseUpload(file: File): Promise<ReturnType<typeof parsePairsText>> {
  if (isSpreadsheet(file.name)) {
    const csv = await xlsxToCsv(await file.arrayBuffer());
    return parsePairsText(csv);
  }
  return parsePairsText(await file.text());
}

export function createApp(root: HTMLElement, store: Store): void {
  root.textContent = "";

  const header = h("header", "app-header");
  header.append(h("h1", "", "AHI method agreement"));
  header.append(
    h(
      "p",
      "tagline",
      "Upload paired reference/measured AHI values and inspect how well the two methods agree.",
    ),
  );

  const controls = h("div", "controls");
  const fileLabel = h("label", "control file-control", "Data file (.csv, .tsv, .xlsx) ");
  const fileInput = h("input");
  fileInput.type = "file";
  fileInput.id = "file-input";
  fileInput.accept = ".csv,.tsv,.txt,.xlsx,.xlsm";
  fileLabel.append(fileInput);

  const demoButton = h("button", "demo-button", "Load demo dataset");
  demoButton.type = "button";
  demoButton.id = "demo-button";

  const { config } = store.snapshot;
  const [t1Wrap, t1] = numberInput("t1", "t1", config.thresholds[0], "0.5");
  const [t2Wrap, t2] = numberInput("t2", "t2", config.thresholds[1], "0.5");
  const [t3Wrap, t3] = numberInput("t3", "t3", config.thresholds[2], "0.5");
  const [minWrap, vmin] = numberInput("ranking-min", "min weight", config.ranking_min, "0.05");
  const [maxWrap, vmax] = numberInput("ranking-max", "max weight", config.ranking_max, "0.05");
  const [ciWrap, ci] = numberInput("ci-level", "CI level", config.ci, "0.01");

  const shapeWrap = h("label", "control", "shape ");
  const shapeSelect = h("select");
  shapeSelect.id = "shape-select";
  for (const s of ["cubic", "sinusoidal", "linear"]) {
    const opt = h("option", "", s);
    opt.value = s;
    if (s === config.shape) opt.selected = true;
    shapeSelect.append(opt);
  }
  shapeWrap.append(shapeSelect);

  const exportButton = h("button", "export-button", "Export report");
  exportButton.type = "button";
  exportButton.id = "export-button";

  controls.append(
    fileLabel, demoButton,
    t1Wrap, t2Wrap, t3Wrap, minWrap, maxWrap, shapeWrap, ciWrap,
    exportButton,
  );

  const banner = h("div", "banner");
  banner.id = "banner";
  banner.hidden = true;

  const status = h("div", "status-line");
  const staleBadge = h("span", "stale-badge", "results out of date; re-running…");
  staleBadge.hidden = true;
  const pendingBadge = h("span", "pending-badge", "analyzing…");
  pendingBadge.hidden = true;
  status.append(pendingBadge, staleBadge);

  const tabBar = h("nav", "tab-bar");
  const tabButtons = new Map<TabId, HTMLButtonElement>();
  for (const id of TAB_IDS) {
    const btn = h("button", "tab-button", TAB_TITLES[id]);
    btn.type = "button";
    btn.dataset.tab = id;
    btn.addEventListener("click", () => store.setActiveTab(id));
    tabButtons.set(id, btn);
    tabBar.append(btn);
  }

  const panel = h("main", "panel");
  panel.id = "panel";

  root.append(header, controls, banner, status, tabBar, panel);

  function showBanner(message: string, kind: "error" | "info"): void {
    banner.textContent = message;
    banner.className = `banner ${kind}`;
    banner.hidden = false;
  }

  function clearBanner(): void {
    banner.hidden = true;
    banner.textContent = "";
  }

  async function loadFile(file: File): Promise<void> {
    try {
      const parsed = await parseUpload(file);
      clearBanner();
      store.setPairs(parsed.pairs, parsed.columnNames, file.name);
      await Promise.all([store.analyze(), store.fetchCurve()]);
    } catch (err) {
      if (err instanceof ParseError) {
        showBanner(`could not read ${file.name}: ${err.message}`, "error");
      } else {
        showBanner(`could not read ${file.name}: ${String(err)}`, "error");
      }
    }
  }

  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (file) void loadFile(file);
  });

  demoButton.addEventListener("click", () => {
    void loadDemo(store).catch((err) =>
      showBanner(`demo dataset unavailable: ${String(err)}`, "error"),
    );
  });

  function applyConfig(): void {
    store.setConfig({
      thresholds: [Number(t1.value), Number(t2.value), Number(t3.value)],
      ranking_min: Number(vmin.value),
      ranking_max: Number(vmax.value),
      shape: shapeSelect.value as ShapeName,
      ci: Number(ci.value),
    });
    void store.analyze();
    void store.fetchCurve();
  }

  for (const input of [t1, t2, t3, vmin, vmax, ci, shapeSelect]) {
    input.addEventListener("change", applyConfig);
  }

  exportButton.addEventListener("click", () => {
    const result = buildExport(store.snapshot, panel);
    if (!result.ok) {
      showBanner(result.reason, "info");
      return;
    }
    clearBanner();
    for (const file of result.files) triggerDownload(file);
  });

  store.subscribe((state) => {
    staleBadge.hidden = !state.stale;
    pendingBadge.hidden = !state.pending;
    if (state.error) showBanner(state.error, "error");
    for (const [id, btn] of tabButtons) {
      btn.classList.toggle("active", id === state.activeTab);
    }
    panel.textContent = "";
    panel.append(renderTab(state.activeTab, store));
  });
}

export async function loadDemo(store: Store, url = "demo.csv"): Promise<void> {
  const resp = await fetch(url);
  if (!resp.ok) throw new Error(`HTTP ${resp.status}`);
  const parsed = parsePairsText(await resp.text());
  store.setPairs(parsed.pairs, parsed.columnNames, "demo.csv");
  await Promise.all([store.analyze(), store.fetchCurve()]);
}
