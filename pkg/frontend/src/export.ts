// Report export: the raw bundle JSON plus the chart of whichever tab is
// open. Export is refused while results are stale so a chart can never be
// saved against numbers it no longer reflects.

import type { UiState } from "./state";

export interface ExportFile {
  name: string;
  mime: string;
  content: string;
}

export type ExportResult =
  | { ok: true; files: ExportFile[] }
  | { ok: false; reason: string };

function slug(text: string): string {
  return text.toLowerCase().replace(/[^a-z0-9]+/g, "-").replace(/^-|-$/g, "");
}

export function buildExport(state: UiState, panel: HTMLElement): ExportResult {
  if (!state.bundle) {
    return { ok: false, reason: "nothing to export: run an analysis first" };
  }
  if (state.stale) {
    return {
      ok: false,
      reason:
        "the inputs changed after this analysis ran; re-run the analysis " +
        "before exporting so the report matches what is on screen",
    };
  }
  const files: ExportFile[] = [
    {
      name: "agreement-report.json",
      mime: "application/json",
      // the raw response text, so the export is the service output verbatim
      content: state.bundleRaw ?? JSON.stringify(state.bundle, null, 2) + "\n",
    },
  ];
  const svg = panel.querySelector("svg.chart-svg");
  if (svg) {
    const markup = new XMLSerializer().serializeToString(svg);
    files.push({
      name: `chart-${slug(state.activeTab)}.svg`,
      mime: "image/svg+xml",
      content: `<?xml version="1.0" encoding="UTF-8"?>\n${markup}\n`,
    });
  }
  return { ok: true, files };
}

export function triggerDownload(file: ExportFile): void {
  const blob = new Blob([file.content], { type: file.mime });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = file.name;
  document.body.append(a);
  a.click();
  a.remove();
  URL.revokeObjectURL(url);
}
