// Thin client for the three service endpoints. Analyze requests go through
// a shared AbortController so a newer request always supersedes an older
// one that is still in flight.

import type { AnalysisConfig, Bundle, CurveResponse, Pair } from "./types";

export class ApiError extends Error {
  status: number;
  row: number | null;

  constructor(status: number, message: string, row: number | null = null) {
    super(message);
    this.status = status;
    this.row = row;
  }
}

async function raiseForStatus(resp: Response): Promise<void> {
  if (resp.ok) return;
  let message = `service error (HTTP ${resp.status})`;
  let row: number | null = null;
  try {
    const body = await resp.json();
    if (typeof body.error === "string") message = body.error;
    else if (Array.isArray(body.detail)) {
      message = body.detail
        .map((d: { msg?: string }) => d.msg ?? "invalid request")
        .join("; ");
    } else if (typeof body.detail === "string") message = body.detail;
    if (typeof body.row === "number") row = body.row;
  } catch {
    // non-JSON error body: keep the generic message
  }
  throw new ApiError(resp.status, message, row);
}

export class ApiClient {
  baseUrl: string;
  private analyzeController: AbortController | null = null;

  constructor(baseUrl = "/api/v1") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  async health(): Promise<{ status: string; version: string }> {
    const resp = await fetch(`${this.baseUrl}/health`);
    await raiseForStatus(resp);
    return resp.json();
  }

  /**
   * Run the full analysis. Fires exactly one HTTP request; if an earlier
   * analyze call is still pending it is aborted first, so the caller can
   * treat the resolved value as the freshest result. Returns null when
   * this request was itself superseded. The raw response text is kept
   * alongside the parsed bundle so exports can reproduce the service
   * output byte for byte.
   */
  async analyze(
    pairs: Pair[],
    config: AnalysisConfig,
  ): Promise<{ bundle: Bundle; raw: string } | null> {
    this.analyzeController?.abort();
    const controller = new AbortController();
    this.analyzeController = controller;
    try {
      const resp = await fetch(`${this.baseUrl}/analyze`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ pairs, config }),
        signal: controller.signal,
      });
      await raiseForStatus(resp);
      const raw = await resp.text();
      return { bundle: JSON.parse(raw) as Bundle, raw };
    } catch (err) {
      if (controller.signal.aborted) return null;
      throw err;
    } finally {
      if (this.analyzeController === controller) this.analyzeController = null;
    }
  }

  async rankingCurve(
    config: AnalysisConfig,
    samples = 601,
  ): Promise<CurveResponse> {
    const params = new URLSearchParams({
      thresholds: config.thresholds.join(","),
      min: String(config.ranking_min),
      max: String(config.ranking_max),
      shape: config.shape,
      samples: String(samples),
    });
    const resp = await fetch(`${this.baseUrl}/ranking-function?${params}`);
    await raiseForStatus(resp);
    return resp.json();
  }
}
