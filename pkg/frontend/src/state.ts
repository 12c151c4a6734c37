// Central UI state. The store owns the loaded pairs, the analysis config,
// the last bundle from the service, and the staleness flag that gates
// exports. All mutation goes through methods so views can subscribe once
// and redraw on any change.

import { ApiClient, ApiError } from "./api";
import type {
  AnalysisConfig,
  Bundle,
  CurveResponse,
  Pair,
  ShapeName,
  TabId,
} from "./types";
import { DEFAULT_CONFIG } from "./types";

export interface UiState {
  pairs: Pair[];
  columnNames: [string, string];
  sourceName: string;
  config: AnalysisConfig;
  activeTab: TabId;
  bundle: Bundle | null;
  /** the analyze response exactly as the service sent it */
  bundleRaw: string | null;
  curve: CurveResponse | null;
  curveShape: ShapeName;
  pending: boolean;
  /** true when pairs or config changed after the bundle was produced */
  stale: boolean;
  error: string | null;
}

type Listener = (state: UiState) => void;

export class Store {
  private state: UiState;
  private listeners = new Set<Listener>();
  readonly client: ApiClient;

  constructor(client: ApiClient = new ApiClient()) {
    this.client = client;
    this.state = {
      pairs: [],
      columnNames: ["reference", "measured"],
      sourceName: "",
      config: { ...DEFAULT_CONFIG },
      activeTab: "contents",
      bundle: null,
      bundleRaw: null,
      curve: null,
      curveShape: DEFAULT_CONFIG.shape,
      pending: false,
      stale: false,
      error: null,
    };
  }

  get snapshot(): UiState {
    return this.state;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  private update(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  setActiveTab(tab: TabId): void {
    if (tab !== this.state.activeTab) this.update({ activeTab: tab });
  }

  setPairs(pairs: Pair[], columnNames: [string, string], sourceName: string): void {
    this.update({
      pairs,
      columnNames,
      sourceName,
      stale: this.state.bundle !== null,
      error: null,
    });
  }

  /** Apply a config edit; existing results become stale until re-analyzed. */
  setConfig(patch: Partial<AnalysisConfig>): void {
    const config = { ...this.state.config, ...patch };
    this.update({
      config,
      curveShape: config.shape,
      stale: this.state.bundle !== null,
    });
  }

  setError(message: string | null): void {
    this.update({ error: message });
  }

  /**
   * Send the current pairs and config to the service. Issues one request;
   * if edits arrive while it is in flight the client aborts it and only
   * the newest request ever resolves into the store.
   */
  async analyze(): Promise<void> {
    if (this.state.pairs.length === 0) return;
    this.update({ pending: true, error: null });
    try {
      const result = await this.client.analyze(
        this.state.pairs,
        this.state.config,
      );
      if (result === null) return; // superseded by a newer request
      this.update({
        bundle: result.bundle,
        bundleRaw: result.raw,
        pending: false,
        stale: false,
      });
    } catch (err) {
      const message =
        err instanceof ApiError
          ? err.row !== null
            ? `${err.message} (row ${err.row})`
            : err.message
          : `analysis request failed: ${String(err)}`;
      this.update({ pending: false, error: message });
    }
  }

  /** Refresh the ranking curve preview; does not touch analysis results. */
  async fetchCurve(shape?: ShapeName): Promise<void> {
    const curveShape = shape ?? this.state.curveShape;
    this.update({ curveShape });
    try {
      const curve = await this.client.rankingCurve({
        ...this.state.config,
        shape: curveShape,
      });
      if (curveShape === this.state.curveShape) this.update({ curve });
    } catch (err) {
      this.update({ error: `ranking curve request failed: ${String(err)}` });
    }
  }
}
