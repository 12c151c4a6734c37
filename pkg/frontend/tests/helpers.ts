// Shared test plumbing: a fetch stub that serves the recorded service
// fixtures and records every call, so tests can assert on request counts
// and payloads without a live backend.

import { readFileSync } from "node:fs";
import { join } from "node:path";
import type { Bundle, CurveResponse } from "../src/types";

// vitest runs with the package root as cwd; import.meta.url is rewritten
// by the DOM environment, so resolve fixtures relative to cwd instead
export function fixturePath(name: string): string {
  return join(process.cwd(), "tests", "fixtures", name);
}

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(fixturePath(name), "utf8")) as T;
}

export const demoBundle = fixture<Bundle>("demo_bundle.json");
export const rankingCurve = fixture<CurveResponse>("ranking_curve.json");
export const rankingCurveLinear = fixture<CurveResponse>("ranking_curve_linear.json");
export const healthDoc = fixture<{ status: string; version: string }>("health.json");

export const demoCsvText = readFileSync(
  join(process.cwd(), "public", "demo.csv"),
  "utf8",
);

export interface RecordedCall {
  method: string;
  url: string;
  body: unknown;
}

export function deferred(): { promise: Promise<void>; resolve: () => void } {
  let resolve!: () => void;
  const promise = new Promise<void>((r) => {
    resolve = r;
  });
  return { promise, resolve };
}

export class FetchStub {
  calls: RecordedCall[] = [];
  /** queue of bundles for successive analyze calls; last one repeats */
  analyzeQueue: Bundle[] = [structuredClone(demoBundle)];
  /** when set, analyze responses wait here before resolving */
  analyzeGate: Promise<void> | null = null;
  curveGate: Promise<void> | null = null;
  /** when set, the next analyze call fails with this error document */
  failNextAnalyze: { status: number; body: unknown } | null = null;

  private original: typeof fetch | null = null;

  get analyzeCalls(): RecordedCall[] {
    return this.calls.filter((c) => c.url.includes("/analyze"));
  }

  install(): void {
    this.original = globalThis.fetch;
    globalThis.fetch = ((input: RequestInfo | URL, init?: RequestInit) =>
      this.handle(String(input), init)) as typeof fetch;
  }

  uninstall(): void {
    if (this.original) globalThis.fetch = this.original;
  }

  private json(data: unknown, status = 200): Response {
    return new Response(JSON.stringify(data), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }

  private async handle(url: string, init?: RequestInit): Promise<Response> {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.calls.push({ method, url, body });

    if (url.endsWith("demo.csv")) {
      return new Response(demoCsvText, { status: 200 });
    }
    if (url.includes("/health")) {
      return this.json(healthDoc);
    }
    if (url.includes("/ranking-function")) {
      if (this.curveGate) await this.curveGate;
      const params = new URLSearchParams(url.split("?")[1] ?? "");
      const doc =
        params.get("shape") === "linear" ? rankingCurveLinear : rankingCurve;
      return this.json(structuredClone(doc));
    }
    if (url.includes("/analyze")) {
      if (this.analyzeGate) await this.analyzeGate;
      const signal = init?.signal;
      if (signal?.aborted) {
        throw new DOMException("The operation was aborted.", "AbortError");
      }
      if (this.failNextAnalyze) {
        const { status, body: errBody } = this.failNextAnalyze;
        this.failNextAnalyze = null;
        return this.json(errBody, status);
      }
      const bundle =
        this.analyzeQueue.length > 1
          ? this.analyzeQueue.shift()!
          : this.analyzeQueue[0];
      return this.json(structuredClone(bundle));
    }
    throw new Error(`unstubbed fetch: ${method} ${url}`);
  }
}

/** next-microtask helper so store updates settle before assertions */
export async function flush(): Promise<void> {
  await new Promise((r) => setTimeout(r, 0));
}
