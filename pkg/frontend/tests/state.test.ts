import { afterEach, beforeEach, describe, expect, it } from "vitest";
import { ApiClient } from "../src/api";
import { Store } from "../src/state";
import type { Pair } from "../src/types";
import { FetchStub, deferred, demoBundle, flush } from "./helpers";

const PAIRS: Pair[] = demoBundle.data.pairs;

let stub: FetchStub;
let store: Store;

beforeEach(() => {
  stub = new FetchStub();
  stub.install();
  store = new Store(new ApiClient());
});

afterEach(() => {
  stub.uninstall();
});

function loadPairs(): void {
  store.setPairs(PAIRS, ["reference", "measured"], "test.csv");
}

describe("Store", () => {
  it("starts with defaults and no bundle", () => {
    const s = store.snapshot;
    expect(s.bundle).toBeNull();
    expect(s.config.thresholds).toEqual([5, 15, 30]);
    expect(s.activeTab).toBe("contents");
    expect(s.stale).toBe(false);
  });

  it("analyze stores the bundle and clears pending", async () => {
    loadPairs();
    const promise = store.analyze();
    expect(store.snapshot.pending).toBe(true);
    await promise;
    expect(store.snapshot.pending).toBe(false);
    expect(store.snapshot.bundle?.data.n).toBe(48);
    expect(store.snapshot.stale).toBe(false);
  });

  it("does nothing when no pairs are loaded", async () => {
    await store.analyze();
    expect(stub.analyzeCalls).toHaveLength(0);
  });

  it("config edits mark existing results stale until a fresh response", async () => {
    loadPairs();
    await store.analyze();
    store.setConfig({ thresholds: [4, 15, 30] });
    expect(store.snapshot.stale).toBe(true);
    await store.analyze();
    expect(store.snapshot.stale).toBe(false);
  });

  it("config edits before any result do not mark stale", () => {
    store.setConfig({ ci: 0.9 });
    expect(store.snapshot.stale).toBe(false);
  });

  it("new pairs mark existing results stale", async () => {
    loadPairs();
    await store.analyze();
    store.setPairs(PAIRS.slice(0, 10), ["a", "b"], "other.csv");
    expect(store.snapshot.stale).toBe(true);
  });

  it("a superseded analyze never overwrites the newer result", async () => {
    loadPairs();
    const gate = deferred();
    stub.analyzeGate = gate.promise;
    const first = store.analyze();
    store.setConfig({ thresholds: [6, 15, 30] });
    const second = store.analyze();
    gate.resolve();
    await Promise.all([first, second]);
    await flush();
    expect(stub.analyzeCalls).toHaveLength(2);
    expect(store.snapshot.pending).toBe(false);
    expect(store.snapshot.stale).toBe(false);
    expect(stub.analyzeCalls[1].body).toMatchObject({
      config: { thresholds: [6, 15, 30] },
    });
  });

  it("service errors land in state.error and keep staleness", async () => {
    loadPairs();
    await store.analyze();
    store.setConfig({ thresholds: [50, 15, 30] });
    stub.failNextAnalyze = {
      status: 422,
      body: { error: "thresholds must be strictly increasing" },
    };
    await store.analyze();
    expect(store.snapshot.error).toContain("strictly increasing");
    expect(store.snapshot.stale).toBe(true);
    expect(store.snapshot.pending).toBe(false);
    expect(store.snapshot.bundle?.data.n).toBe(48);
  });

  it("row-level rejections include the row in the message", async () => {
    loadPairs();
    stub.failNextAnalyze = {
      status: 400,
      body: { error: "values must be finite and non-negative", row: 7 },
    };
    await store.analyze();
    expect(store.snapshot.error).toBe(
      "values must be finite and non-negative (row 7)",
    );
  });

  it("fetchCurve fills the curve without touching analysis state", async () => {
    loadPairs();
    await store.analyze();
    await store.fetchCurve();
    expect(store.snapshot.curve?.x).toHaveLength(601);
    expect(store.snapshot.stale).toBe(false);
  });

  it("fetchCurve tracks the requested shape", async () => {
    await store.fetchCurve("linear");
    expect(store.snapshot.curveShape).toBe("linear");
    expect(store.snapshot.curve?.config.shape).toBe("linear");
  });

  it("a stale curve response loses to a newer shape choice", async () => {
    const gate = deferred();
    stub.curveGate = gate.promise;
    const slow = store.fetchCurve("cubic");
    stub.curveGate = null;
    const fast = store.fetchCurve("linear");
    await fast;
    gate.resolve();
    await slow;
    expect(store.snapshot.curve?.config.shape).toBe("linear");
  });

  it("setActiveTab notifies subscribers once per change", () => {
    let count = 0;
    store.subscribe(() => count++);
    store.setActiveTab("roc");
    store.setActiveTab("roc");
    expect(count).toBe(1);
    expect(store.snapshot.activeTab).toBe("roc");
  });
});
