// Number formatting shared by the tab renderers and the tests. Keeping it
// in one place means "what the user sees" and "what the tests expect" are
// the same function applied to the same bundle field.

import type { Maybe } from "./types";
import { isUndefinedMarker } from "./types";

/** Six significant digits, trailing zeros trimmed; exact for integers. */
export function formatStat(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  if (Number.isInteger(value) && Math.abs(value) < 1e15) return String(value);
  return Number(value.toPrecision(6)).toString();
}

/** p-values: scientific below 0.001 so tiny ones stay readable. */
export function formatP(p: number): string {
  if (p !== 0 && p < 0.001) return p.toExponential(2);
  return formatStat(p);
}

export function formatPercent(fraction: number): string {
  return `${formatStat(Math.round(fraction * 1000) / 10)}%`;
}

/** Render a possibly-undefined value; markers show as the word itself. */
export function formatMaybe(
  value: Maybe<number>,
  fmt: (v: number) => string = formatStat,
): string {
  return isUndefinedMarker(value) ? "undefined" : fmt(value);
}

export function formatInterval(low: number, high: number): string {
  return `[${formatStat(low)}, ${formatStat(high)}]`;
}
